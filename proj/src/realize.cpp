#include "lsreal/realize.hpp"

#include "lsreal/errors.hpp"

namespace lsreal {

namespace {

// Word numbers of σv (prepend) or vσ (append) for every v with |v| <= maxlen,
// in the order of v's own numbering.
std::vector<std::size_t> extended_ids(std::size_t d, int maxlen, int sigma, bool prepend) {
  std::vector<std::size_t> ids;
  ids.reserve(word_count(d, maxlen));
  const auto s = static_cast<std::size_t>(sigma);
  for (int len = 0; len <= maxlen; ++len) {
    const std::size_t count = ipow(d, len);
    const std::size_t base = word_offset(d, len + 1);
    for (std::size_t v = 0; v < count; ++v)
      ids.push_back(prepend ? base + s * count + v : base + v * d + s);
  }
  return ids;
}

// Solves coef · X = rhs for X in the least-squares sense. Declines unless
// coef has full column rank and the relative residual is small.
std::optional<Eigen::MatrixXd> solve_shift(const LowRankSvd& coef_svd, const Eigen::MatrixXd& coef,
                                           const Eigen::MatrixXd& rhs, double residual_tol) {
  if (coef_svd.rank() != coef.cols()) return std::nullopt;
  Eigen::MatrixXd x = coef_svd.V() *
                      (coef_svd.S().cwiseInverse().asDiagonal() * (coef_svd.U().transpose() * rhs));
  const double scale = std::max(rhs.norm(), coef.norm());
  if (scale > 0.0 && (coef * x - rhs).norm() > residual_tol * scale) return std::nullopt;
  return x;
}

}  // namespace

RankConditionReport check_rank_condition(const MarkovFamily& mk, int N, RankTolerance tol) {
  if (N < 0) throw DimensionError("N must be non-negative");
  if (2 * N + 1 > mk.max_order())
    throw InsufficientOrder("rank condition at N=" + std::to_string(N) + " needs order " +
                            std::to_string(2 * N + 1) + ", data has " +
                            std::to_string(mk.max_order()));
  const auto ranks = block_ranks(mk.series(), N, tol);
  RankConditionReport rep;
  rep.N = N;
  rep.r_nn = ranks.nn;
  rep.r_n1n = ranks.n1n;
  rep.r_nn1 = ranks.nn1;
  rep.holds = ranks.equal();

  const int k = mk.max_order();
  const int lb = (k + 1) / 2;
  const int mb = k / 2;
  if (lb == N + 1 && mb == N)
    rep.r_largest = ranks.n1n;
  else
    rep.r_largest = numerical_rank(build_block(mk, lb, mb).data, tol);
  rep.complete_hint = rep.r_nn == rep.r_largest;
  return rep;
}

Realization realize_columns(const MarkovFamily& mk, int N, const RealizeOptions& opt) {
  const auto report = check_rank_condition(mk, N, opt.rank_tol);
  if (!report.holds)
    throw RankConditionFailed("rank condition fails at N=" + std::to_string(N) + " (" +
                              std::to_string(report.r_nn) + ", " + std::to_string(report.r_n1n) +
                              ", " + std::to_string(report.r_nn1) + ")");
  const SeriesFamily& family = mk.series();
  const std::size_t d = family.alphabet_size();
  const auto nj = static_cast<Eigen::Index>(family.size());
  const auto out_dim = static_cast<Eigen::Index>(family.out_dim());

  auto h = build_block(family, N, N + 1);
  LowRankSvd svd(std::move(h.data), opt.rank_tol);
  const Eigen::Index n = svd.rank();

  // Coordinates of every column in the orthonormal basis U.
  const Eigen::MatrixXd z = svd.S().asDiagonal() * svd.V().transpose();
  const Eigen::MatrixXd c = svd.U().topRows(out_dim);
  const Eigen::MatrixXd b = z.leftCols(nj);

  const auto wn = static_cast<Eigen::Index>(word_count(d, N));
  const Eigen::MatrixXd x = z.leftCols(wn * nj);
  const Eigen::MatrixXd xt = x.transpose();
  const LowRankSvd xt_svd(xt);

  std::vector<Eigen::MatrixXd> a;
  for (std::size_t q = 0; q < d; ++q) {
    const auto ids = extended_ids(d, N, static_cast<int>(q), false);
    Eigen::MatrixXd y(n, wn * nj);
    for (Eigen::Index w = 0; w < wn; ++w)
      y.middleCols(w * nj, nj) =
          z.middleCols(static_cast<Eigen::Index>(ids[static_cast<std::size_t>(w)]) * nj, nj);
    auto at = solve_shift(xt_svd, xt, y.transpose(), opt.residual_tol);
    if (!at)
      throw ShiftInconsistent("shift equations for mode " + family.alphabet().name(static_cast<int>(q)) +
                              " have no solution");
    a.push_back(at->transpose());
  }
  return representation_to_lss(
      Representation(family.alphabet(), family.index_set(), std::move(a), b, c));
}

Representation represent_factor(const SeriesFamily& family, int N, const RealizeOptions& opt) {
  if (N < 0) throw DimensionError("N must be non-negative");
  const std::size_t d = family.alphabet_size();
  const auto nj = static_cast<Eigen::Index>(family.size());
  const auto out_dim = static_cast<Eigen::Index>(family.out_dim());

  auto h = build_block(family, N + 1, N);
  LowRankSvd svd(std::move(h.data), opt.rank_tol);
  const Eigen::VectorXd root = svd.S().cwiseSqrt();
  const Eigen::MatrixXd o = svd.U() * root.asDiagonal();
  const Eigen::MatrixXd r = root.asDiagonal() * svd.V().transpose();

  const Eigen::MatrixXd c = o.topRows(out_dim);
  const Eigen::MatrixXd b = r.leftCols(nj);

  const auto vn = static_cast<Eigen::Index>(word_count(d, N));
  const Eigen::MatrixXd gamma = o.topRows(vn * out_dim);
  const LowRankSvd gamma_svd(gamma);

  std::vector<Eigen::MatrixXd> a;
  for (std::size_t q = 0; q < d; ++q) {
    const auto ids = extended_ids(d, N, static_cast<int>(q), true);
    Eigen::MatrixXd shifted(vn * out_dim, o.cols());
    for (Eigen::Index v = 0; v < vn; ++v)
      shifted.middleRows(v * out_dim, out_dim) =
          o.middleRows(static_cast<Eigen::Index>(ids[static_cast<std::size_t>(v)]) * out_dim, out_dim);
    auto aq = solve_shift(gamma_svd, gamma, shifted, opt.residual_tol);
    if (!aq)
      throw NoUniqueSolution("no unique solution for A_" +
                             family.alphabet().name(static_cast<int>(q)));
    a.push_back(std::move(*aq));
  }
  return Representation(family.alphabet(), family.index_set(), std::move(a), b, c);
}

Realization realize_factor(const MarkovFamily& mk, int N, const RealizeOptions& opt) {
  return representation_to_lss(represent_factor(mk.series(), N, opt));
}

MinimalRealization minimal_realize(const MarkovFamily& mk, const RealizeOptions& opt) {
  if (mk.max_order() < 1) throw InsufficientOrder("minimal realization needs order >= 1");
  const int N = (mk.max_order() - 1) / 2;
  auto report = check_rank_condition(mk, N, opt.rank_tol);
  if (!report.holds)
    throw RankConditionFailed("rank condition fails at N=" + std::to_string(N));
  return {realize_factor(mk, N, opt), report};
}

Realization reduce(const Realization& r, int N, const RealizeOptions& opt) {
  if (N < 0) throw DimensionError("N must be non-negative");
  return realize_factor(markov_from_lss(r, 2 * N + 1), N, opt);
}

}  // namespace lsreal
