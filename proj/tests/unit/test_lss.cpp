#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "lsreal/errors.hpp"
#include "lsreal/expm.hpp"
#include "lsreal/lss.hpp"
#include "oracles.hpp"

using namespace lsreal;
using lsreal::fixture::paper_system;

namespace {

double rel_err(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double scale = std::max(b.norm(), 1e-300);
  return (a - b).norm() / scale;
}

Eigen::VectorXd to_vec(std::span<const double> s) {
  return Eigen::Map<const Eigen::VectorXd>(s.data(), static_cast<Eigen::Index>(s.size()));
}

}  // namespace

TEST(Words, LengthLexNumbering) {
  EXPECT_EQ(word_count(2, 3), 15u);
  EXPECT_EQ(word_count(1, 4), 5u);
  EXPECT_EQ(word_offset(3, 2), 4u);
  for (std::size_t id = 0; id < word_count(3, 4); ++id)
    EXPECT_EQ(word_id(word_from_id(id, 3), 3), id);
  EXPECT_EQ(word_from_id(3, 2), (Word{0, 0}));
  EXPECT_EQ(word_from_id(4, 2), (Word{0, 1}));
  EXPECT_EQ(word_from_id(5, 2), (Word{1, 0}));
}

TEST(Words, AlphabetRejectsDuplicatesAndEmpty) {
  EXPECT_THROW(Alphabet({"a", "a"}), Error);
  EXPECT_THROW(Alphabet(std::vector<std::string>{}), Error);
  EXPECT_THROW(Alphabet({""}), Error);
  Alphabet ab({"a", "b"});
  EXPECT_EQ(ab.index_of("b"), 1);
  EXPECT_THROW(ab.index_of("c"), UnknownIndex);
  EXPECT_EQ((Word{0, 1, 1}).to_string(ab), "abb");
}

TEST(Expm, ZeroIsIdentity) {
  EXPECT_TRUE(expm(Eigen::MatrixXd::Zero(4, 4)).isApprox(Eigen::MatrixXd::Identity(4, 4)));
}

TEST(Expm, PaperDiagonalMode) {
  const auto r = paper_system();
  const Eigen::MatrixXd e = mode_exp(r.sys(), 1, 1.0);
  Eigen::VectorXd diag(5);
  diag << 1, std::exp(2.0), 1, 1, std::exp(3.0);
  EXPECT_LT(rel_err(e, Eigen::MatrixXd(diag.asDiagonal())), 1e-14);
}

TEST(Expm, PaperNilpotentMode) {
  const auto r = paper_system();
  const Eigen::VectorXd x = mode_exp(r.sys(), 0, 1.0) * Eigen::VectorXd::Unit(5, 4);
  Eigen::VectorXd expect(5);
  expect << 0, 1.0 / 6.0, 0.5, 1, 1;
  EXPECT_LT(rel_err(x, expect), 1e-15);
}

TEST(Expm, MatchesTaylorOracleAcrossScales) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 7;
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = g(rng);
    a *= std::pow(10.0, (trial % 5) - 2);
    EXPECT_LT(rel_err(expm(a), oracle::expm_taylor(a)), 1e-12) << "trial " << trial;
  }
}

TEST(Expm, RejectsNonFinite) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
  a(0, 1) = std::nan("");
  EXPECT_THROW(expm(a), NonFiniteInput);
  EXPECT_THROW(expm(Eigen::MatrixXd::Zero(2, 3)), DimensionError);
}

TEST(Expm, Semigroup) {
  std::mt19937_64 rng(11);
  auto r = fixture::random_realization(rng, {4, 2, 1, 1, 0});
  for (double a : {0.1, 0.7, 1.3})
    for (double b : {0.2, 0.9}) {
      const Eigen::MatrixXd lhs = mode_exp(r.sys(), 0, a) * mode_exp(r.sys(), 0, b);
      EXPECT_LT(rel_err(lhs, mode_exp(r.sys(), 0, a + b)), 1e-10);
    }
}

TEST(Lss, ValidatesDimensions) {
  ModeTriple t{Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(2, 1),
               Eigen::MatrixXd::Zero(1, 3)};
  EXPECT_THROW(Lss(Alphabet({"a"}), {t}), DimensionError);
  ModeTriple ok{Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(2, 1),
                Eigen::MatrixXd::Zero(1, 2)};
  EXPECT_THROW(Lss(Alphabet({"a", "b"}), {ok}), DimensionError);
  Lss sys(Alphabet({"a"}), {ok});
  EXPECT_THROW(Realization(sys, {{"f", Eigen::VectorXd::Zero(3)}}), DimensionError);
}

TEST(Simulate, PaperInitialStateResponse) {
  const auto r = paper_system();
  SwitchingSequence w{{{1, 1.0}}};
  auto u = PiecewiseConstantInput::constant(Eigen::VectorXd::Zero(1), 1.0);
  const auto res = simulate(r, "f2", u, w);
  EXPECT_NEAR(res.y(0), std::exp(3.0), 1e-9 * std::exp(3.0));
}

TEST(Simulate, ZeroStateZeroInputGivesZero) {
  std::mt19937_64 rng(3);
  auto r = fixture::random_realization(rng, {3, 2, 1, 2, 0});
  Realization z(r.sys(), {{"f", Eigen::VectorXd::Zero(3)}});
  SwitchingSequence w{{{0, 0.4}, {1, 0.8}, {0, 0.3}}};
  auto u = PiecewiseConstantInput::constant(Eigen::VectorXd::Zero(1), w.total_duration());
  EXPECT_EQ(simulate(z, "f", u, w).y.norm(), 0.0);
}

// With u = 1 on [0,1] in mode q1 from x = 0 the state is (0, t^4/24, t^3/6,
// t^2/2, t), so y = C_{q1} x(1) = 1/24. See the decisions ledger.
TEST(Simulate, PaperUnitInputMatchesRk4) {
  const auto r = paper_system();
  SwitchingSequence w{{{0, 1.0}}};
  Eigen::VectorXd one = Eigen::VectorXd::Ones(1);
  const auto res = simulate(r, "f1", PiecewiseConstantInput::constant(one, 1.0), w);
  const auto ref = oracle::rk4_output(r.sys(), Eigen::VectorXd::Zero(5), one, w, 2000);
  EXPECT_NEAR(ref(0), 1.0 / 24.0, 1e-12);
  EXPECT_NEAR(res.y(0), 1.0 / 24.0, 1e-9 / 24.0);
}

TEST(Simulate, RandomSwitchedRunMatchesRk4) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    auto r = fixture::random_realization(rng, {4, 3, 2, 2, 1});
    SwitchingSequence w{{{0, 0.3}, {2, 0.5}, {1, 0.25}, {0, 0.4}}};
    Eigen::VectorXd u(2);
    u << 0.7, -0.2;
    const auto res = simulate(r, "f1", PiecewiseConstantInput::constant(u, w.total_duration()), w);
    const auto ref = oracle::rk4_output(r.sys(), r.initial_state("f1"), u, w, 4000);
    EXPECT_LT(rel_err(res.y, ref), 1e-9);
  }
}

TEST(Simulate, PiecewiseInputSplitsSegments) {
  std::mt19937_64 rng(9);
  auto r = fixture::random_realization(rng, {3, 2, 1, 1, 1});
  SwitchingSequence w{{{0, 0.5}, {1, 0.5}}};
  PiecewiseConstantInput u{{0.0, 0.25, 0.75, 1.0}, {Eigen::VectorXd::Constant(1, 1.0),
                                                Eigen::VectorXd::Constant(1, -2.0),
                                                Eigen::VectorXd::Constant(1, 0.5)}};
  const auto whole = simulate(r, "f1", u, w);
  // Same run cut at the input breakpoints.
  const auto& x0 = r.initial_state("f1");
  auto a = simulate_from_state(r.sys(), x0, PiecewiseConstantInput::constant(u.values[0], 0.25),
                               SwitchingSequence{{{0, 0.25}}});
  auto b = simulate_from_state(r.sys(), a.x_final,
                               PiecewiseConstantInput::constant(u.values[1], 0.5),
                               SwitchingSequence{{{0, 0.25}, {1, 0.25}}});
  auto c = simulate_from_state(r.sys(), b.x_final,
                               PiecewiseConstantInput::constant(u.values[2], 0.25),
                               SwitchingSequence{{{1, 0.25}}});
  EXPECT_LT(rel_err(whole.x_final, c.x_final), 1e-12);
}

TEST(Simulate, Errors) {
  const auto r = paper_system();
  SwitchingSequence w{{{0, 2.0}}};
  auto u = PiecewiseConstantInput::constant(Eigen::VectorXd::Zero(1), 1.0);
  EXPECT_THROW(simulate(r, "f2", u, w), DurationMismatch);
  EXPECT_THROW(simulate(r, "nope", PiecewiseConstantInput::constant(Eigen::VectorXd::Zero(1), 2.0), w),
               UnknownTag);
}

TEST(Kernels, PaperValues) {
  const auto r = paper_system();
  const double t1[] = {1.0};
  EXPECT_NEAR(kernel_G(r.sys(), Word{0}, t1)(0, 0), 1.0 / 6.0, 1e-14);
  const double s[] = {0.6};
  EXPECT_NEAR(kernel_K(r, "f2", Word{1}, s)(0), std::exp(1.8), 1e-12);
  // e^{A_{q1}} e5 = e5 + e4 + e3/2 + e2/6 has fifth coordinate 1, so
  // C_{q2} e^0 e^{A_{q1}} e5 = 1.
  const double t2[] = {1.0, 0.0};
  EXPECT_NEAR(kernel_K(r, "f2", Word{0, 1}, t2)(0), 1.0, 1e-14);
  EXPECT_EQ(kernel_K(r, "f1", Word{0, 1}, t2).norm(), 0.0);
}

TEST(Kernels, ZeroTimeIsCB) {
  std::mt19937_64 rng(2);
  auto r = fixture::random_realization(rng, {3, 2, 2, 2, 0});
  const double t[] = {0.0};
  EXPECT_TRUE(kernel_G(r.sys(), Word{1}, t).isApprox(r.sys().C(1) * r.sys().B(1)));
}

TEST(Kernels, Errors) {
  const auto r = paper_system();
  const double t[] = {1.0};
  EXPECT_THROW(kernel_G(r.sys(), Word{}, {}), EmptyWord);
  EXPECT_THROW(kernel_G(r.sys(), Word{0, 1}, t), DimensionError);
}

TEST(Kernels, MergeAndZeroInsertion) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> t(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    auto r = fixture::random_realization(rng, {3, 3, 1, 1, 1});
    const double a = t(rng), b = t(rng), c = t(rng);
    const double merged[] = {a, b + c};
    const double split[] = {a, b, c};
    const Word ws{0, 2, 2};
    const Word wm{0, 2};
    EXPECT_LT(rel_err(kernel_G(r.sys(), ws, split), kernel_G(r.sys(), wm, merged)), 1e-10);
    EXPECT_LT(rel_err(kernel_K(r, "f1", ws, split), kernel_K(r, "f1", wm, merged)), 1e-10);
    const double inserted[] = {a, 0.0, b + c};
    EXPECT_LT(rel_err(kernel_K(r, "f1", Word{0, 1, 2}, inserted), kernel_K(r, "f1", wm, merged)),
              1e-10);
  }
}

TEST(Kernels, SimulateAgreesWithKernelK) {
  std::mt19937_64 rng(21);
  auto r = fixture::random_realization(rng, {4, 2, 1, 2, 1});
  const double t[] = {0.8};
  SwitchingSequence w{{{1, 0.8}}};
  auto u = PiecewiseConstantInput::constant(Eigen::VectorXd::Zero(1), 0.8);
  EXPECT_LT(rel_err(simulate(r, "f1", u, w).y, kernel_K(r, "f1", Word{1}, t)), 1e-12);
}

// Markov parameters listed for the example, (index, output mode, word) -> value.
TEST(Markov, PaperTable) {
  const auto mk = markov_from_lss(paper_system(), 3);
  const auto in1 = SeriesIndex::input(0, 0);
  const auto in2 = SeriesIndex::input(1, 0);
  const auto f1 = SeriesIndex::tag("f1");
  const auto f2 = SeriesIndex::tag("f2");
  struct Row {
    SeriesIndex j;
    int q;
    Word w;
    double v;
  };
  const std::vector<Row> rows = {
      {in2, 1, {}, 0},      {in2, 1, {0}, 0},      {in2, 1, {1, 1, 1}, 0}, {in2, 0, {}, 1},
      {in2, 0, {0}, 0},     {in2, 0, {1}, 2},      {in2, 0, {1, 1}, 4},    {in2, 0, {1, 1, 1}, 8},
      {in1, 0, {}, 0},      {in1, 0, {0}, 0},      {in1, 0, {1, 1, 1}, 0}, {in1, 1, {}, 1},
      {in1, 1, {0}, 0},     {in1, 1, {1}, 3},      {in1, 1, {1, 1}, 9},    {in1, 1, {1, 1, 1}, 27},
      {f1, 0, {}, 0},       {f1, 0, {0}, 0},       {f2, 0, {}, 0},         {f2, 0, {0}, 0},
      {f2, 1, {}, 1},       {f2, 1, {0}, 0},       {f2, 1, {1}, 3},        {f2, 1, {1, 1}, 9},
      {f2, 1, {1, 1, 1}, 27}};
  for (const auto& row : rows)
    EXPECT_NEAR(mk.markov(row.j, row.q, row.w)[0], row.v, 1e-9)
        << row.j.to_string(mk.alphabet()) << " " << row.q << " " << row.w.to_string(mk.alphabet());
  for (std::size_t id = 0; id < word_count(2, 3); ++id)
    for (double v : mk.stacked(f1, word_from_id(id, 2))) EXPECT_EQ(v, 0.0);
}

TEST(Markov, MatchesDirectProducts) {
  std::mt19937_64 rng(4);
  auto r = fixture::random_realization(rng, {3, 3, 2, 2, 2});
  const auto mk = markov_from_lss(r, 4);
  const auto g = r.generators();
  for (std::size_t id = 0; id < word_count(3, 4); ++id) {
    const Word w = word_from_id(id, 3);
    for (std::size_t c = 0; c < mk.index_set().size(); ++c)
      for (int q = 0; q < 3; ++q) {
        const auto expect = oracle::markov_direct(r.sys(), g.col(static_cast<Eigen::Index>(c)), q, w);
        const auto got = to_vec(mk.markov(mk.index_set()[c], q, w));
        EXPECT_LT((got - expect).norm(), 1e-13 * (1 + expect.norm()));
      }
  }
}

TEST(Markov, IndexSetIsCanonical) {
  const auto mk = markov_from_lss(paper_system(), 0);
  const auto& j = mk.index_set();
  ASSERT_EQ(j.size(), 4u);
  EXPECT_EQ(j[0], SeriesIndex::input(0, 0));
  EXPECT_EQ(j[1], SeriesIndex::input(1, 0));
  EXPECT_EQ(j[2], SeriesIndex::tag("f1"));
  EXPECT_EQ(j[3], SeriesIndex::tag("f2"));
  EXPECT_THROW(mk.stacked(SeriesIndex::tag("f9"), Word{}), UnknownIndex);
  EXPECT_THROW(mk.stacked(SeriesIndex::tag("f1"), Word{0}), InsufficientOrder);
}

TEST(FiniteDiff, PaperValues) {
  const auto r = paper_system();
  EXPECT_NEAR(finite_diff_markov(r, SeriesIndex::tag("f2"), Word{1}, 1, 1e-3)(0), 3.0, 3e-3);
  EXPECT_NEAR(finite_diff_markov(r, SeriesIndex::input(1, 0), Word{}, 0, 1e-3)(0), 1.0, 1e-3);
  EXPECT_THROW(finite_diff_markov(r, SeriesIndex::tag("f2"), Word{1, 1, 1}, 1, 1e-3), OrderTooHigh);
}

TEST(FiniteDiff, AgreesWithProductsUpToOrderTwo) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 4; ++trial) {
    auto r = fixture::random_realization(rng, {3, 2, 1, 1, 1});
    const auto mk = markov_from_lss(r, 2);
    for (std::size_t id = 0; id < word_count(2, 2); ++id) {
      const Word w = word_from_id(id, 2);
      for (const auto& j : mk.index_set())
        for (int q = 0; q < 2; ++q) {
          const auto exact = to_vec(mk.markov(j, q, w));
          const auto fd = finite_diff_markov(r, j, w, q, 1e-3);
          EXPECT_LE((fd - exact).cwiseAbs().maxCoeff(),
                    1e-3 * std::max(exact.cwiseAbs().maxCoeff(), 1.0));
        }
    }
  }
}

TEST(FiniteDiff, ZeroSystemIsZero) {
  ModeTriple t{Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Zero(2, 1),
               Eigen::MatrixXd::Ones(1, 2)};
  Realization r(Lss(Alphabet({"a", "b"}), {t, t}), {{"f", Eigen::VectorXd::Zero(2)}});
  EXPECT_NEAR(finite_diff_markov(r, SeriesIndex::input(0, 0), Word{1}, 0, 1e-3).norm(), 0.0, 1e-12);
  EXPECT_NEAR(finite_diff_markov(r, SeriesIndex::tag("f"), Word{1, 0}, 1, 1e-3).norm(), 0.0, 1e-12);
}
