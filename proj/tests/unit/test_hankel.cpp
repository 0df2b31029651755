#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "lsreal/errors.hpp"
#include "lsreal/hankel.hpp"
#include "lsreal/linalg.hpp"
#include "oracles.hpp"

using namespace lsreal;
using lsreal::fixture::paper_system;

TEST(LowRankSvd, MatchesFullSvdOnRandomLowRank) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 30; ++trial) {
    const int rows = 5 + trial * 7 % 40, cols = 3 + trial * 5 % 30, k = trial % 6;
    Eigen::MatrixXd l(rows, k), r(k, cols);
    for (Eigen::Index i = 0; i < l.size(); ++i) l.data()[i] = g(rng);
    for (Eigen::Index i = 0; i < r.size(); ++i) r.data()[i] = g(rng);
    const Eigen::MatrixXd a = l * r;
    LowRankSvd svd(a);
    EXPECT_EQ(svd.rank(), oracle::svd_rank(a)) << trial;
    EXPECT_EQ(svd.rank(), std::min<Eigen::Index>(k, std::min(rows, cols)));
    Eigen::BDCSVD<Eigen::MatrixXd> full(a);
    for (Eigen::Index i = 0; i < svd.rank(); ++i)
      EXPECT_NEAR(svd.singular_values()(i), full.singularValues()(i), 1e-10 * full.singularValues()(0));
    const Eigen::MatrixXd back = svd.U() * svd.S().asDiagonal() * svd.V().transpose();
    EXPECT_LT((back - a).norm(), 1e-10 * (1 + a.norm()));
    EXPECT_TRUE((svd.U().transpose() * svd.U()).isIdentity(1e-12));
  }
}

TEST(LowRankSvd, FullRankAndDegenerateInputs) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(6, 4);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = g(rng);
  EXPECT_EQ(numerical_rank(a), 4);
  EXPECT_EQ(numerical_rank(Eigen::MatrixXd::Zero(5, 3)), 0);
  EXPECT_EQ(numerical_rank(Eigen::MatrixXd(0, 3)), 0);
  Eigen::MatrixXd bad = a;
  bad(0, 0) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(numerical_rank(bad), SvdFailure);
}

TEST(LowRankSvd, ToleranceOverrides) {
  Eigen::MatrixXd a = Eigen::Vector3d(1.0, 1e-6, 1e-12).asDiagonal();
  EXPECT_EQ(numerical_rank(a), 3);
  EXPECT_EQ(numerical_rank(a, RankTolerance::relative(1e-9)), 2);
  EXPECT_EQ(numerical_rank(a, RankTolerance::absolute(1e-3)), 1);
  EXPECT_EQ(RankTolerance::parse("abs:0.5").kind, RankTolerance::Kind::Absolute);
  EXPECT_EQ(RankTolerance::parse("1e-6").kind, RankTolerance::Kind::Relative);
  EXPECT_EQ(RankTolerance::parse("default").kind, RankTolerance::Kind::Default);
  EXPECT_THROW(RankTolerance::parse("rel:x"), ParseError);
}

TEST(LowRankSvd, SignConvention) {
  Eigen::MatrixXd a(3, 2);
  a << -1, 0, -2, 0, 0, 3;
  LowRankSvd svd(a);
  for (Eigen::Index k = 0; k < svd.rank(); ++k) {
    Eigen::Index at = 0;
    svd.U().col(k).cwiseAbs().maxCoeff(&at);
    EXPECT_GT(svd.U()(at, k), 0.0);
  }
}

TEST(Words, Enumeration) {
  Alphabet ab({"a", "b"});
  const auto w = enumerate_words(ab, 2);
  const std::vector<Word> expect = {{}, {0}, {1}, {0, 0}, {0, 1}, {1, 0}, {1, 1}};
  EXPECT_EQ(w, expect);
  EXPECT_EQ(enumerate_words(ab, 0), std::vector<Word>{Word{}});
  EXPECT_EQ(enumerate_words(ab, 3).size(), 15u);
}

TEST(Hankel, PaperEntries) {
  const auto mk = markov_from_lss(paper_system(), 4);
  const auto h = build_block(mk, 2, 2);
  const auto in2 = SeriesIndex::input(1, 0);
  // Row (ε, output q1) x column (q2, (q2,1)).
  EXPECT_EQ(h.data(static_cast<Eigen::Index>(h.row_ix.position(Word{}, 0)),
                   static_cast<Eigen::Index>(h.col_ix.position(Word{1}, 1))),
            2.0);
  // Row (q2, output q2) x column (ε, f2).
  EXPECT_EQ(h.data(static_cast<Eigen::Index>(h.row_ix.position(Word{1}, 1)),
                   static_cast<Eigen::Index>(h.col_ix.position(Word{}, 3))),
            3.0);
  EXPECT_EQ(h.col_ix.at(h.col_ix.position(Word{1}, 1)).second, in2);
  EXPECT_EQ(h.row_ix.size(), 2u * 7u);
  EXPECT_EQ(h.col_ix.size(), 4u * 7u);
  EXPECT_THROW(build_block(mk, 3, 2), InsufficientOrder);
}

TEST(Hankel, EntryFormulaAndStructure) {
  std::mt19937_64 rng(3);
  auto r = fixture::random_realization(rng, {3, 3, 2, 2, 1});
  const auto mk = markov_from_lss(r, 5);
  const auto h = build_block(mk, 2, 3);
  for (std::size_t row = 0; row < h.row_ix.size(); ++row) {
    const auto [v, i] = h.row_ix.at(row);
    for (std::size_t col = 0; col < h.col_ix.size(); ++col) {
      const auto [w, j] = h.col_ix.at(col);
      EXPECT_EQ(h.data(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)),
                mk.stacked(j, w + v)[i]);
    }
  }
  // (L, M) block sits in the top-left of (L+1, M+1).
  const auto small = build_block(mk, 1, 2);
  const auto big = build_block(mk, 2, 3);
  EXPECT_EQ(small.data, big.data.topLeftCorner(small.data.rows(), small.data.cols()));
}

TEST(Hankel, RankMonotone) {
  std::mt19937_64 rng(4);
  auto r = fixture::random_realization(rng, {4, 2, 1, 1, 1});
  const auto mk = markov_from_lss(r, 6);
  for (int l = 0; l < 3; ++l)
    for (int m = 0; m < 3; ++m) {
      const auto base = numerical_rank(build_block(mk, l, m).data);
      EXPECT_LE(base, numerical_rank(build_block(mk, l + 1, m).data));
      EXPECT_LE(base, numerical_rank(build_block(mk, l, m + 1).data));
    }
}

TEST(Hankel, PaperRanks) {
  const auto mk = markov_from_lss(paper_system(), 5);
  EXPECT_EQ(numerical_rank(build_block(mk, 2, 2).data), 4);
  EXPECT_EQ(numerical_rank(build_block(mk, 1, 0).data), 2);
  EXPECT_EQ(numerical_rank(build_block(mk, 0, 1).data), 2);
  EXPECT_EQ(numerical_rank(build_block(mk, 0, 0).data), 2);
}

TEST(Hankel, ZeroFamily) {
  MarkovFamily zero(Alphabet({"a", "b"}), 1, 1, {"f"}, 3);
  EXPECT_TRUE(build_block(zero, 1, 1).data.isZero());
  EXPECT_EQ(find_stable_N(zero), 0);
}

TEST(Hankel, StableN) {
  EXPECT_EQ(find_stable_N(markov_from_lss(paper_system(), 3)), 0);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    auto r = fixture::random_realization(rng, {3, 2, 1, 1, 1});
    const auto mk = markov_from_lss(r, 9);
    const auto n = find_stable_N(mk);
    ASSERT_TRUE(n.has_value());
    EXPECT_LE(*n, 3);
    EXPECT_LE(oracle::svd_rank(build_block(mk, *n, *n).data), 3);
    for (int k = 0; k < *n; ++k) EXPECT_FALSE(block_ranks(mk.series(), k).equal());
  }
  MarkovFamily tiny(Alphabet({"a"}), 1, 1, {}, 0);
  EXPECT_FALSE(find_stable_N(tiny).has_value());
}
