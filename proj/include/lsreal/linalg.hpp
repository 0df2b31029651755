#pragma once

#include <string>

#include <Eigen/Dense>

namespace lsreal {

/// Threshold below which singular values count as zero.
///   Default:  σ_max · max(rows, cols) · ε_machine
///   Relative: value · σ_max
///   Absolute: value
struct RankTolerance {
  enum class Kind { Default, Relative, Absolute };
  Kind kind = Kind::Default;
  double value = 0.0;

  static RankTolerance relative(double v) { return {Kind::Relative, v}; }
  static RankTolerance absolute(double v) { return {Kind::Absolute, v}; }

  double threshold(double sigma_max, Eigen::Index rows, Eigen::Index cols) const;

  /// "rel:1e-9", "abs:1e-12", "default", or a bare number (relative).
  static RankTolerance parse(const std::string& text);
  std::string to_string() const;
};

/// Thin SVD restricted to the numerical rank.
///
/// The matrix is first compressed by Gram-Schmidt with column pivoting on the
/// deflated residual, stopping as soon as the residual's Frobenius norm falls
/// below half the rank threshold; the small k x cols factor is then
/// decomposed exactly. Every singular value above the threshold is retained
/// and the discarded part is smaller than the threshold, so the rank agrees
/// with a full SVD while the cost stays O(rows · cols · rank).
class LowRankSvd {
 public:
  explicit LowRankSvd(Eigen::MatrixXd a, RankTolerance tol = {});

  Eigen::Index rank() const { return rank_; }
  /// Leading singular values (at least the first rank() of them).
  const Eigen::VectorXd& singular_values() const { return sigma_; }
  double sigma_max() const { return sigma_.size() ? sigma_(0) : 0.0; }
  double threshold() const { return threshold_; }

  /// rows x rank, orthonormal; each column's largest-magnitude entry is positive.
  const Eigen::MatrixXd& U() const { return u_; }
  /// cols x rank, orthonormal.
  const Eigen::MatrixXd& V() const { return v_; }
  Eigen::VectorXd S() const { return sigma_.head(rank_); }

 private:
  Eigen::Index rank_ = 0;
  double threshold_ = 0.0;
  Eigen::VectorXd sigma_;
  Eigen::MatrixXd u_;
  Eigen::MatrixXd v_;
};

/// Number of singular values above the tolerance threshold. Throws SvdFailure
/// on non-finite input.
Eigen::Index numerical_rank(Eigen::MatrixXd a, RankTolerance tol = {});

/// Orthonormal basis of the column span of `a`: columns whose residual after
/// projection is at most `rel_tol` times their own norm are dropped.
Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& a, double rel_tol = 1e-10);

/// Orthonormal basis of the orthogonal complement of span(q) in R^n; q must
/// have orthonormal columns.
Eigen::MatrixXd orthogonal_complement(const Eigen::MatrixXd& q, Eigen::Index n);

/// Largest distance between the two subspaces measured as
/// max(||(I - P2) Q1||, ||(I - P1) Q2||) for orthonormal Q1, Q2.
double subspace_distance(const Eigen::MatrixXd& q1, const Eigen::MatrixXd& q2);

}  // namespace lsreal
