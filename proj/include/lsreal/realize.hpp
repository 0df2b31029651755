#pragma once

#include <Eigen/Dense>

#include "lsreal/hankel.hpp"
#include "lsreal/linalg.hpp"
#include "lsreal/lss.hpp"
#include "lsreal/markov.hpp"
#include "lsreal/series.hpp"

namespace lsreal {

struct RealizeOptions {
  RankTolerance rank_tol;
  /// Shift equations count as solvable when the relative residual is below this.
  double residual_tol = 1e-8;
};

struct RankConditionReport {
  int N = 0;
  Eigen::Index r_nn = 0;
  Eigen::Index r_n1n = 0;
  Eigen::Index r_nn1 = 0;
  bool holds = false;
  /// r_nn equals the rank of the largest Hankel block the data supports.
  bool complete_hint = false;
  Eigen::Index r_largest = 0;
};

/// Ranks of H_{N,N}, H_{N+1,N}, H_{N,N+1}. Throws InsufficientOrder when the
/// data has order below 2N+1.
RankConditionReport check_rank_condition(const MarkovFamily& mk, int N, RankTolerance tol = {});

/// Realization from the column space of H_{N,N+1}: the state of column
/// (w, j) is its coordinate vector in an orthonormal basis of that space.
/// Throws RankConditionFailed or ShiftInconsistent.
Realization realize_columns(const MarkovFamily& mk, int N, const RealizeOptions& opt = {});

/// Partial representation from the factorization H_{N+1,N} = O R with
/// O = U Σ^{1/2}, R = Σ^{1/2} V^T. Throws NoUniqueSolution.
Representation represent_factor(const SeriesFamily& family, int N, const RealizeOptions& opt = {});

/// represent_factor on the stacked series, converted back to an LSS.
Realization realize_factor(const MarkovFamily& mk, int N, const RealizeOptions& opt = {});

struct MinimalRealization {
  Realization realization;
  RankConditionReport report;
};

/// Uses the largest N with 2N+1 <= max_order. Throws RankConditionFailed if
/// the ranks have not stabilized there.
MinimalRealization minimal_realize(const MarkovFamily& mk, const RealizeOptions& opt = {});

/// Moment-matching reduction: a realization of the first 2N+1 orders of r's
/// Markov parameters.
Realization reduce(const Realization& r, int N, const RealizeOptions& opt = {});

}  // namespace lsreal
