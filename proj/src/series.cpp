#include "lsreal/series.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <set>

#include "lsreal/errors.hpp"

namespace lsreal {

Representation::Representation(Alphabet alphabet, std::vector<SeriesIndex> index_set,
                               std::vector<Eigen::MatrixXd> a, Eigen::MatrixXd b,
                               Eigen::MatrixXd c)
    : alphabet_(std::move(alphabet)),
      index_(std::move(index_set)),
      a_(std::move(a)),
      b_(std::move(b)),
      c_(std::move(c)) {
  const auto n = c_.cols();
  if (a_.size() != alphabet_.size()) throw DimensionError("one A matrix per letter required");
  for (const auto& m : a_)
    if (m.rows() != n || m.cols() != n) throw DimensionError("A matrices must be n x n");
  if (b_.rows() != n || b_.cols() != static_cast<Eigen::Index>(index_.size()))
    throw DimensionError("B must be n x |J|");
  for (std::size_t x = 0; x < index_.size(); ++x)
    for (std::size_t y = x + 1; y < index_.size(); ++y)
      if (index_[x] == index_[y]) throw BadIndexSet("duplicate series index");
}

Eigen::VectorXd Representation::B(const SeriesIndex& j) const {
  auto k = find_index(index_, j);
  if (!k) throw UnknownIndex("series index " + j.to_string(alphabet_) + " not in J");
  return b_.col(static_cast<Eigen::Index>(*k));
}

Eigen::MatrixXd Representation::A_word(const Word& w) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(state_dim(), state_dim());
  for (int letter : w) out = A(letter) * out;
  return out;
}

Eigen::VectorXd series_eval(const Representation& rep, const SeriesIndex& j, const Word& w) {
  Eigen::VectorXd x = rep.B(j);
  for (int letter : w) x = rep.A(letter) * x;
  return rep.C() * x;
}

SeriesFamily series_of(const Representation& rep, int horizon) {
  SeriesFamily out(rep.alphabet(), static_cast<std::size_t>(rep.out_dim()), rep.index_set(),
                   horizon);
  const std::size_t d = rep.alphabet().size();
  const auto cols = static_cast<Eigen::Index>(rep.index_set().size());
  const std::size_t block = static_cast<std::size_t>(rep.out_dim() * cols);
  Eigen::MatrixXd level = rep.B();
  std::size_t count = 1;
  for (int k = 0; k <= horizon; ++k) {
    const Eigen::MatrixXd values = rep.C() * level;
    std::memcpy(out.raw().data() + word_offset(d, k) * block, values.data(),
                count * block * sizeof(double));
    if (k == horizon) break;
    Eigen::MatrixXd next(rep.state_dim(), level.cols() * static_cast<Eigen::Index>(d));
    for (std::size_t q = 0; q < d; ++q) {
      const Eigen::MatrixXd shifted = rep.A(static_cast<int>(q)) * level;
      for (std::size_t v = 0; v < count; ++v)
        next.middleCols(static_cast<Eigen::Index>(v * d + q) * cols, cols) =
            shifted.middleCols(static_cast<Eigen::Index>(v) * cols, cols);
    }
    level = std::move(next);
    count *= d;
  }
  return out;
}

TruncatedSeries shift(const TruncatedSeries& t, const Word& w) {
  const int len = static_cast<int>(w.size());
  if (len > t.horizon()) throw ShiftTooLong("shift word longer than series horizon");
  const int horizon = t.horizon() - len;
  const std::size_t d = t.alphabet().size();
  TruncatedSeries out(t.alphabet(), t.out_dim(), horizon);
  std::size_t prefix = 0;
  for (int q : w) prefix = prefix * d + static_cast<std::size_t>(q);
  for (int k = 0; k <= horizon; ++k) {
    const std::size_t count = ipow(d, k);
    const std::size_t base_src = word_offset(d, len + k) + prefix * count;
    const std::size_t base_dst = word_offset(d, k);
    for (std::size_t v = 0; v < count; ++v) {
      auto src = t.value(base_src + v);
      std::copy(src.begin(), src.end(), out.value(base_dst + v).begin());
    }
  }
  return out;
}

SeriesFamily family_from_markov(const MarkovFamily& mk) { return mk.series(); }

Representation lss_to_representation(const Realization& r) {
  const Lss& sys = r.sys();
  std::vector<Eigen::MatrixXd> a;
  a.reserve(sys.mode_count());
  for (std::size_t q = 0; q < sys.mode_count(); ++q) a.push_back(sys.A(static_cast<int>(q)));
  return Representation(sys.alphabet(), r.index_set(), std::move(a), r.generators(),
                        sys.stacked_C());
}

Realization representation_to_lss(const Representation& rep) {
  const std::size_t d = rep.alphabet().size();
  const auto n = rep.state_dim();
  if (rep.out_dim() == 0 || rep.out_dim() % static_cast<Eigen::Index>(d) != 0)
    throw BadOutDim("output dimension must be a positive multiple of the mode count");
  const auto p = rep.out_dim() / static_cast<Eigen::Index>(d);

  std::vector<std::set<int>> channels(d);
  std::map<std::string, Eigen::VectorXd> mu;
  for (std::size_t k = 0; k < rep.index_set().size(); ++k) {
    const auto& j = rep.index_set()[k];
    if (j.is_input()) {
      const auto& c = j.as_input();
      if (c.mode < 0 || static_cast<std::size_t>(c.mode) >= d || c.channel < 0)
        throw BadIndexSet("input index refers to an unknown mode");
      channels[static_cast<std::size_t>(c.mode)].insert(c.channel);
    } else {
      mu.emplace(j.as_tag(), rep.B().col(static_cast<Eigen::Index>(k)));
    }
  }
  const auto m = static_cast<int>(channels.front().size());
  for (const auto& set : channels) {
    if (m == 0 || static_cast<int>(set.size()) != m || *set.rbegin() != m - 1)
      throw BadIndexSet("index set must contain (q,l) for every mode q and l = 1..m");
  }

  std::vector<ModeTriple> modes(d);
  for (std::size_t q = 0; q < d; ++q) {
    auto& t = modes[q];
    t.A = rep.A(static_cast<int>(q));
    t.C = rep.C().middleRows(static_cast<Eigen::Index>(q) * p, p);
    t.B.resize(n, m);
    for (int l = 0; l < m; ++l)
      t.B.col(l) = rep.B(SeriesIndex::input(static_cast<int>(q), l));
  }
  return Realization(Lss(rep.alphabet(), std::move(modes)), std::move(mu));
}

}  // namespace lsreal
