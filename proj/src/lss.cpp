#include "lsreal/lss.hpp"

#include <cmath>
#include <cstring>

#include "lsreal/errors.hpp"
#include "lsreal/expm.hpp"

namespace lsreal {

Lss::Lss(Alphabet alphabet, std::vector<ModeTriple> modes)
    : alphabet_(std::move(alphabet)), modes_(std::move(modes)) {
  if (alphabet_.size() == 0) throw DimensionError("LSS needs at least one mode");
  if (modes_.size() != alphabet_.size())
    throw DimensionError("LSS needs exactly one (A,B,C) triple per mode");
  const auto& first = modes_.front();
  n_ = first.A.rows();
  m_ = first.B.cols();
  p_ = first.C.rows();
  if (m_ < 1 || p_ < 1) throw DimensionError("LSS needs m >= 1 and p >= 1");
  for (std::size_t q = 0; q < modes_.size(); ++q) {
    const auto& t = modes_[q];
    const std::string where = " in mode '" + alphabet_.name(static_cast<int>(q)) + "'";
    if (t.A.rows() != n_ || t.A.cols() != n_) throw DimensionError("A must be n x n" + where);
    if (t.B.rows() != n_ || t.B.cols() != m_) throw DimensionError("B must be n x m" + where);
    if (t.C.rows() != p_ || t.C.cols() != n_) throw DimensionError("C must be p x n" + where);
    if (!t.A.allFinite() || !t.B.allFinite() || !t.C.allFinite())
      throw NonFiniteInput("non-finite system matrix" + where);
  }
}

Eigen::MatrixXd Lss::stacked_C() const {
  Eigen::MatrixXd out(p_ * static_cast<Eigen::Index>(modes_.size()), n_);
  for (std::size_t q = 0; q < modes_.size(); ++q)
    out.middleRows(static_cast<Eigen::Index>(q) * p_, p_) = modes_[q].C;
  return out;
}

Realization::Realization(Lss sys, std::map<std::string, Eigen::VectorXd> mu)
    : sys_(std::move(sys)), mu_(std::move(mu)) {
  for (const auto& [tag, x] : mu_) {
    if (tag.empty()) throw DimensionError("initial-state tags must be nonempty");
    if (x.size() != sys_.n())
      throw DimensionError("initial state '" + tag + "' must have length n");
    if (!x.allFinite()) throw NonFiniteInput("initial state '" + tag + "' is not finite");
  }
}

const Eigen::VectorXd& Realization::initial_state(const std::string& tag) const {
  auto it = mu_.find(tag);
  if (it == mu_.end()) throw UnknownTag("unknown initial-state tag '" + tag + "'");
  return it->second;
}

std::vector<std::string> Realization::tags() const {
  std::vector<std::string> out;
  for (const auto& kv : mu_) out.push_back(kv.first);
  return out;
}

std::vector<SeriesIndex> Realization::index_set() const {
  return canonical_index_set(sys_.alphabet().size(), static_cast<int>(sys_.m()), tags());
}

Eigen::MatrixXd Realization::generators() const {
  const auto d = static_cast<Eigen::Index>(sys_.mode_count());
  const auto m = sys_.m();
  Eigen::MatrixXd g(sys_.n(), d * m + static_cast<Eigen::Index>(mu_.size()));
  for (Eigen::Index q = 0; q < d; ++q) g.middleCols(q * m, m) = sys_.B(static_cast<int>(q));
  Eigen::Index col = d * m;
  for (const auto& kv : mu_) g.col(col++) = kv.second;
  return g;
}

double SwitchingSequence::total_duration() const {
  double t = 0.0;
  for (const auto& s : steps) t += s.duration;
  return t;
}

PiecewiseConstantInput PiecewiseConstantInput::constant(const Eigen::VectorXd& value,
                                                        double duration) {
  // A zero-length schedule still needs one segment to carry the value.
  return {{0.0, std::max(duration, 1.0)}, {value}};
}

void PiecewiseConstantInput::validate(Eigen::Index m) const {
  if (breakpoints.size() < 2 || values.size() != breakpoints.size() - 1)
    throw DimensionError("input needs one value per segment between breakpoints");
  if (breakpoints.front() != 0.0) throw DurationMismatch("input schedule must start at t = 0");
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!std::isfinite(breakpoints[i + 1])) throw NonFiniteInput("non-finite input breakpoint");
    if (!(breakpoints[i + 1] > breakpoints[i]))
      throw DimensionError("input breakpoints must be strictly increasing");
  }
  for (const auto& v : values) {
    if (v.size() != m) throw DimensionError("input value must have length m");
    if (!v.allFinite()) throw NonFiniteInput("non-finite input value");
  }
}

Eigen::MatrixXd mode_exp(const Lss& sys, int q, double t) {
  if (!std::isfinite(t)) throw NonFiniteInput("mode_exp: non-finite time");
  return expm(sys.A(q) * t);
}

SimulationResult simulate_from_state(const Lss& sys, const Eigen::VectorXd& x0,
                                     const PiecewiseConstantInput& u,
                                     const SwitchingSequence& w) {
  if (w.steps.empty()) throw DimensionError("switching sequence must be nonempty");
  if (x0.size() != sys.n()) throw DimensionError("initial state must have length n");
  u.validate(sys.m());
  for (const auto& s : w.steps) {
    if (s.mode < 0 || static_cast<std::size_t>(s.mode) >= sys.mode_count())
      throw UnknownIndex("switching sequence uses an unknown mode");
    if (!std::isfinite(s.duration)) throw NonFiniteInput("non-finite switching time");
    if (s.duration < 0.0) throw DurationMismatch("switching times must be non-negative");
  }
  const double total = w.total_duration();
  const double covered = u.breakpoints.back();
  if (covered < total && total - covered > 1e-12 * std::max(1.0, total))
    throw DurationMismatch("input schedule does not cover the switching sequence");

  const auto n = sys.n();
  Eigen::VectorXd x = x0;
  double t = 0.0;
  std::size_t seg = 0;
  for (const auto& step : w.steps) {
    const double end = t + step.duration;
    while (t < end) {
      while (seg + 1 < u.values.size() && u.breakpoints[seg + 1] <= t) ++seg;
      const double stop = std::min(end, seg + 1 < u.values.size() ? u.breakpoints[seg + 1] : end);
      const double dt = stop - t;
      Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(n + 1, n + 1);
      aug.topLeftCorner(n, n) = sys.A(step.mode) * dt;
      aug.topRightCorner(n, 1) = sys.B(step.mode) * u.values[seg] * dt;
      const Eigen::MatrixXd e = expm(aug);
      x = e.topLeftCorner(n, n) * x + e.topRightCorner(n, 1);
      t = stop;
    }
    t = end;
  }
  return {sys.C(w.steps.back().mode) * x, x};
}

SimulationResult simulate(const Realization& r, const std::string& tag,
                          const PiecewiseConstantInput& u, const SwitchingSequence& w) {
  return simulate_from_state(r.sys(), r.initial_state(tag), u, w);
}

namespace {

Eigen::MatrixXd propagate(const Lss& sys, const Word& w, std::span<const double> times,
                          Eigen::MatrixXd m) {
  if (w.empty()) throw EmptyWord("kernel needs a nonempty word");
  if (times.size() != w.size()) throw DimensionError("kernel needs one duration per letter");
  for (std::size_t i = 0; i < w.size(); ++i) m = mode_exp(sys, w[i], times[i]) * m;
  return sys.C(w[w.size() - 1]) * m;
}

}  // namespace

Eigen::MatrixXd kernel_G(const Lss& sys, const Word& w, std::span<const double> times) {
  if (w.empty()) throw EmptyWord("kernel_G needs a nonempty word");
  return propagate(sys, w, times, sys.B(w[0]));
}

Eigen::VectorXd kernel_K(const Realization& r, const std::string& tag, const Word& w,
                         std::span<const double> times) {
  return propagate(r.sys(), w, times, r.initial_state(tag));
}

MarkovFamily markov_from_lss(const Realization& r, int max_order) {
  if (max_order < 0) throw DimensionError("max_order must be non-negative");
  const Lss& sys = r.sys();
  MarkovFamily out(sys.alphabet(), static_cast<int>(sys.p()), static_cast<int>(sys.m()),
                   r.tags(), max_order);
  const auto d = sys.mode_count();
  const auto n = sys.n();
  const Eigen::MatrixXd cs = sys.stacked_C();
  const auto cols = static_cast<Eigen::Index>(out.index_set().size());
  const std::size_t block = static_cast<std::size_t>(cs.rows() * cols);
  double* table = out.series().raw().data();

  // Level k holds A_w [B | μ] for all words of length k, side by side in
  // word-number order.
  Eigen::MatrixXd level = r.generators();
  std::size_t count = 1;
  for (int k = 0; k <= max_order; ++k) {
    const Eigen::MatrixXd values = cs * level;
    std::memcpy(table + word_offset(d, k) * block, values.data(), count * block * sizeof(double));
    if (k == max_order) break;
    Eigen::MatrixXd next(n, level.cols() * static_cast<Eigen::Index>(d));
    for (std::size_t q = 0; q < d; ++q) {
      const Eigen::MatrixXd shifted = sys.A(static_cast<int>(q)) * level;
      for (std::size_t v = 0; v < count; ++v)
        next.middleCols(static_cast<Eigen::Index>(v * d + q) * cols, cols) =
            shifted.middleCols(static_cast<Eigen::Index>(v) * cols, cols);
    }
    level = std::move(next);
    count *= d;
  }
  return out;
}

Eigen::VectorXd finite_diff_markov(const Realization& r, const SeriesIndex& idx, const Word& w,
                                   int q, double h) {
  if (w.size() > 2) throw OrderTooHigh("finite differences are limited to |w| <= 2");
  if (!(h > 0.0) || !std::isfinite(h)) throw DimensionError("step h must be positive");
  const Lss& sys = r.sys();
  if (q < 0 || static_cast<std::size_t>(q) >= sys.mode_count())
    throw UnknownIndex("unknown output mode");

  // Switching modes whose durations are differentiated, then the output mode
  // held for zero time.
  std::vector<int> modes;
  Eigen::VectorXd x0;
  PiecewiseConstantInput u_active;
  const bool is_input = idx.is_input();
  if (is_input) {
    const auto& c = idx.as_input();
    if (c.mode < 0 || static_cast<std::size_t>(c.mode) >= sys.mode_count() || c.channel < 0 ||
        c.channel >= sys.m())
      throw UnknownIndex("input channel out of range");
    modes.push_back(c.mode);
    x0 = r.mu().empty() ? Eigen::VectorXd::Zero(sys.n()) : r.mu().begin()->second;
  } else {
    x0 = r.initial_state(idx.as_tag());
  }
  modes.insert(modes.end(), w.begin(), w.end());
  const std::size_t vars = modes.size();
  const double horizon = 2.0 * h * static_cast<double>(vars) + 1.0;
  const auto zero = PiecewiseConstantInput::constant(Eigen::VectorXd::Zero(sys.m()), horizon);
  if (is_input)
    u_active = PiecewiseConstantInput::constant(
        Eigen::VectorXd::Unit(sys.m(), idx.as_input().channel), horizon);

  auto output = [&](const std::vector<double>& times) {
    SwitchingSequence seq;
    for (std::size_t i = 0; i < vars; ++i) seq.steps.push_back({modes[i], times[i]});
    seq.steps.push_back({q, 0.0});
    Eigen::VectorXd y = simulate_from_state(sys, x0, zero, seq).y;
    if (is_input) y = simulate_from_state(sys, x0, u_active, seq).y - y;
    return y;
  };

  static constexpr double kWeights[3] = {-3.0, 4.0, -1.0};
  std::size_t points = 1;
  for (std::size_t i = 0; i < vars; ++i) points *= 3;
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(sys.p());
  std::vector<double> times(vars);
  for (std::size_t code = 0; code < points; ++code) {
    double weight = 1.0;
    std::size_t c = code;
    for (std::size_t i = 0; i < vars; ++i) {
      const std::size_t a = c % 3;
      c /= 3;
      times[i] = static_cast<double>(a) * h;
      weight *= kWeights[a] / (2.0 * h);
    }
    acc += weight * output(times);
  }
  return acc;
}

}  // namespace lsreal
