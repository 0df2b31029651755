#pragma once

#include <span>
#include <vector>

#include "lsreal/types.hpp"

namespace lsreal {

/// Values of one vector-valued formal power series on all words of length at
/// most `horizon`, stored densely in word-number order.
class TruncatedSeries {
 public:
  TruncatedSeries(Alphabet alphabet, std::size_t out_dim, int horizon);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t out_dim() const { return out_dim_; }
  int horizon() const { return horizon_; }
  std::size_t word_count() const { return words_; }

  std::span<const double> value(std::size_t id) const;
  std::span<double> value(std::size_t id);
  /// Throws InsufficientOrder when |w| exceeds the horizon.
  std::span<const double> value(const Word& w) const;

 private:
  Alphabet alphabet_;
  std::size_t out_dim_;
  int horizon_;
  std::size_t words_;
  std::vector<double> data_;
};

/// Indexed family {S_j | j in J} of truncated series sharing an alphabet,
/// output dimension and horizon. Layout is [word][index][component], so the
/// values for one word are contiguous across the whole family.
class SeriesFamily {
 public:
  SeriesFamily(Alphabet alphabet, std::size_t out_dim, std::vector<SeriesIndex> index_set,
               int horizon);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t alphabet_size() const { return alphabet_.size(); }
  std::size_t out_dim() const { return out_dim_; }
  int horizon() const { return horizon_; }
  const std::vector<SeriesIndex>& index_set() const { return index_; }
  std::size_t size() const { return index_.size(); }
  std::size_t word_count() const { return words_; }

  /// Position of j in the index set; throws UnknownIndex.
  std::size_t column(const SeriesIndex& j) const;

  std::span<const double> value(std::size_t column, std::size_t id) const {
    return {data_.data() + (id * index_.size() + column) * out_dim_, out_dim_};
  }
  std::span<double> value(std::size_t column, std::size_t id) {
    return {data_.data() + (id * index_.size() + column) * out_dim_, out_dim_};
  }
  std::span<const double> value(const SeriesIndex& j, const Word& w) const;

  /// Copy of the member series S_j.
  TruncatedSeries member(std::size_t column) const;

  std::span<const double> raw() const { return data_; }
  std::span<double> raw() { return data_; }

 private:
  Alphabet alphabet_;
  std::size_t out_dim_;
  std::vector<SeriesIndex> index_;
  int horizon_;
  std::size_t words_;
  std::vector<double> data_;
};

}  // namespace lsreal
