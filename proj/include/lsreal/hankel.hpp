#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lsreal/linalg.hpp"
#include "lsreal/markov.hpp"
#include "lsreal/series_family.hpp"

namespace lsreal {

/// All words of length at most `maxlen` in length-lexicographic order.
std::vector<Word> enumerate_words(const Alphabet& alphabet, int maxlen);

/// Row labels (v, i) of H_{L,M}: words v with |v| <= L, and within each word
/// the components i = 0 .. out_dim-1. Component i = pK + r belongs to output
/// mode σ_{K+1}, entry r.
struct RowIndexing {
  int L = 0;
  std::size_t alphabet_size = 1;
  std::size_t out_dim = 0;

  std::size_t size() const { return word_count(alphabet_size, L) * out_dim; }
  std::pair<Word, std::size_t> at(std::size_t row) const {
    return {word_from_id(row / out_dim, alphabet_size), row % out_dim};
  }
  std::size_t position(const Word& v, std::size_t i) const {
    return word_id(v, alphabet_size) * out_dim + i;
  }
};

/// Column labels (w, j): words w with |w| <= M, and within each word the
/// series indices in J order.
struct ColIndexing {
  int M = 0;
  std::size_t alphabet_size = 1;
  std::vector<SeriesIndex> index_set;

  std::size_t size() const { return word_count(alphabet_size, M) * index_set.size(); }
  std::pair<Word, SeriesIndex> at(std::size_t col) const {
    return {word_from_id(col / index_set.size(), alphabet_size), index_set[col % index_set.size()]};
  }
  std::size_t position(const Word& w, std::size_t j) const {
    return word_id(w, alphabet_size) * index_set.size() + j;
  }
};

/// Finite Hankel sub-matrix H_{L,M}:  entry ((v,i),(w,j)) = S_j(wv)_i.
struct HankelBlock {
  RowIndexing row_ix;
  ColIndexing col_ix;
  Eigen::MatrixXd data;
};

/// Throws InsufficientOrder if L + M exceeds the series horizon.
HankelBlock build_block(const SeriesFamily& family, int L, int M);
HankelBlock build_block(const MarkovFamily& mk, int L, int M);

/// Numerical ranks of H_{N,N}, H_{N+1,N} and H_{N,N+1}.
struct BlockRanks {
  Eigen::Index nn = 0;
  Eigen::Index n1n = 0;
  Eigen::Index nn1 = 0;
  bool equal() const { return nn == n1n && nn == nn1; }
};
BlockRanks block_ranks(const SeriesFamily& family, int N, RankTolerance tol = {});

/// Smallest N with 2N+1 <= horizon whose three block ranks coincide.
std::optional<int> find_stable_N(const MarkovFamily& mk, RankTolerance tol = {});

}  // namespace lsreal
