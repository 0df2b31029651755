#include "lsreal/markov.hpp"

#include <algorithm>

#include "lsreal/errors.hpp"

namespace lsreal {

TruncatedSeries::TruncatedSeries(Alphabet alphabet, std::size_t out_dim, int horizon)
    : alphabet_(std::move(alphabet)),
      out_dim_(out_dim),
      horizon_(horizon),
      words_(lsreal::word_count(alphabet_.size(), horizon)),
      data_(words_ * out_dim, 0.0) {
  if (horizon < 0) throw DimensionError("series horizon must be non-negative");
}

std::span<const double> TruncatedSeries::value(std::size_t id) const {
  return {data_.data() + id * out_dim_, out_dim_};
}

std::span<double> TruncatedSeries::value(std::size_t id) {
  return {data_.data() + id * out_dim_, out_dim_};
}

std::span<const double> TruncatedSeries::value(const Word& w) const {
  if (static_cast<int>(w.size()) > horizon_)
    throw InsufficientOrder("word longer than series horizon");
  return value(word_id(w, alphabet_.size()));
}

SeriesFamily::SeriesFamily(Alphabet alphabet, std::size_t out_dim,
                           std::vector<SeriesIndex> index_set, int horizon)
    : alphabet_(std::move(alphabet)),
      out_dim_(out_dim),
      index_(std::move(index_set)),
      horizon_(horizon),
      words_(lsreal::word_count(alphabet_.size(), horizon)),
      data_(words_ * index_.size() * out_dim, 0.0) {
  if (horizon < 0) throw DimensionError("series horizon must be non-negative");
  for (std::size_t a = 0; a < index_.size(); ++a)
    for (std::size_t b = a + 1; b < index_.size(); ++b)
      if (index_[a] == index_[b]) throw BadIndexSet("duplicate series index");
}

std::size_t SeriesFamily::column(const SeriesIndex& j) const {
  if (auto k = find_index(index_, j)) return *k;
  throw UnknownIndex("series index " + j.to_string(alphabet_) + " not in family");
}

std::span<const double> SeriesFamily::value(const SeriesIndex& j, const Word& w) const {
  if (static_cast<int>(w.size()) > horizon_)
    throw InsufficientOrder("word longer than series horizon");
  return value(column(j), word_id(w, alphabet_.size()));
}

TruncatedSeries SeriesFamily::member(std::size_t column) const {
  TruncatedSeries out(alphabet_, out_dim_, horizon_);
  for (std::size_t id = 0; id < words_; ++id) {
    auto src = value(column, id);
    std::copy(src.begin(), src.end(), out.value(id).begin());
  }
  return out;
}

namespace {

std::vector<std::string> sorted(std::vector<std::string> tags) {
  std::sort(tags.begin(), tags.end());
  if (std::adjacent_find(tags.begin(), tags.end()) != tags.end())
    throw BadIndexSet("duplicate initial-state tag");
  return tags;
}

}  // namespace

MarkovFamily::MarkovFamily(Alphabet alphabet, int p, int m, std::vector<std::string> tags,
                           int max_order)
    : p_(p),
      m_(m),
      tags_(sorted(std::move(tags))),
      series_(alphabet, static_cast<std::size_t>(p) * alphabet.size(),
              canonical_index_set(alphabet.size(), m, tags_), max_order) {
  if (p < 1 || m < 1) throw DimensionError("Markov family needs p >= 1 and m >= 1");
}

std::span<const double> MarkovFamily::markov(const SeriesIndex& j, int output_mode,
                                             const Word& w) const {
  if (output_mode < 0 || static_cast<std::size_t>(output_mode) >= alphabet().size())
    throw UnknownIndex("output mode out of range");
  return stacked(j, w).subspan(static_cast<std::size_t>(output_mode * p_),
                               static_cast<std::size_t>(p_));
}

}  // namespace lsreal
