#include "lsreal/hankel.hpp"

#include "lsreal/errors.hpp"

namespace lsreal {

std::vector<Word> enumerate_words(const Alphabet& alphabet, int maxlen) {
  if (maxlen < 0) throw DimensionError("negative word length");
  const std::size_t d = alphabet.size();
  const std::size_t total = word_count(d, maxlen);
  std::vector<Word> out;
  out.reserve(total);
  for (std::size_t id = 0; id < total; ++id) out.push_back(word_from_id(id, d));
  return out;
}

HankelBlock build_block(const SeriesFamily& family, int L, int M) {
  if (L < 0 || M < 0) throw DimensionError("negative Hankel block size");
  if (L + M > family.horizon())
    throw InsufficientOrder("H_{" + std::to_string(L) + "," + std::to_string(M) +
                            "} needs order " + std::to_string(L + M) + ", data has " +
                            std::to_string(family.horizon()));
  const std::size_t d = family.alphabet_size();
  const auto out_dim = static_cast<Eigen::Index>(family.out_dim());
  const auto nj = static_cast<Eigen::Index>(family.size());

  HankelBlock h{RowIndexing{L, d, family.out_dim()}, ColIndexing{M, d, family.index_set()}, {}};
  h.data.resize(static_cast<Eigen::Index>(h.row_ix.size()),
                static_cast<Eigen::Index>(h.col_ix.size()));
  if (h.data.size() == 0) return h;

  const double* raw = family.raw().data();
  const auto block = static_cast<std::size_t>(out_dim * nj);
  Eigen::Index col = 0;
  for (int lw = 0; lw <= M; ++lw) {
    const std::size_t nw = ipow(d, lw);
    for (std::size_t w = 0; w < nw; ++w, col += nj) {
      Eigen::Index row = 0;
      for (int lv = 0; lv <= L; ++lv) {
        // wv has length lw + lv; w is the most significant part of its number.
        const std::size_t nv = ipow(d, lv);
        const std::size_t base = word_offset(d, lw + lv) + w * nv;
        for (std::size_t v = 0; v < nv; ++v, row += out_dim)
          h.data.block(row, col, out_dim, nj) =
              Eigen::Map<const Eigen::MatrixXd>(raw + (base + v) * block, out_dim, nj);
      }
    }
  }
  return h;
}

HankelBlock build_block(const MarkovFamily& mk, int L, int M) {
  return build_block(mk.series(), L, M);
}

BlockRanks block_ranks(const SeriesFamily& family, int N, RankTolerance tol) {
  BlockRanks r;
  r.nn = numerical_rank(build_block(family, N, N).data, tol);
  r.n1n = numerical_rank(build_block(family, N + 1, N).data, tol);
  r.nn1 = numerical_rank(build_block(family, N, N + 1).data, tol);
  return r;
}

std::optional<int> find_stable_N(const MarkovFamily& mk, RankTolerance tol) {
  for (int n = 0; 2 * n + 1 <= mk.max_order(); ++n)
    if (block_ranks(mk.series(), n, tol).equal()) return n;
  return std::nullopt;
}

}  // namespace lsreal
