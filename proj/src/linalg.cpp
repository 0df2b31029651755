#include "lsreal/linalg.hpp"

#include <cmath>
#include <limits>

#include "lsreal/errors.hpp"

namespace lsreal {

double RankTolerance::threshold(double sigma_max, Eigen::Index rows, Eigen::Index cols) const {
  switch (kind) {
    case Kind::Relative:
      return value * sigma_max;
    case Kind::Absolute:
      return value;
    case Kind::Default:
      break;
  }
  return sigma_max * static_cast<double>(std::max(rows, cols)) *
         std::numeric_limits<double>::epsilon();
}

RankTolerance RankTolerance::parse(const std::string& text) {
  if (text.empty() || text == "default") return {};
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty() || !std::isfinite(v) || v < 0.0)
      throw ParseError("invalid rank tolerance '" + text + "'");
    return v;
  };
  if (text.rfind("rel:", 0) == 0) return relative(number(text.substr(4)));
  if (text.rfind("abs:", 0) == 0) return absolute(number(text.substr(4)));
  return relative(number(text));
}

std::string RankTolerance::to_string() const {
  switch (kind) {
    case Kind::Relative:
      return "rel:" + std::to_string(value);
    case Kind::Absolute:
      return "abs:" + std::to_string(value);
    case Kind::Default:
      break;
  }
  return "default";
}

LowRankSvd::LowRankSvd(Eigen::MatrixXd a, RankTolerance tol) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  if (!a.allFinite()) throw SvdFailure("matrix has non-finite entries");
  const Eigen::Index kmax = std::min(rows, cols);

  Eigen::MatrixXd q(rows, 0);
  Eigen::MatrixXd r(0, cols);
  if (kmax > 0) {
    Eigen::RowVectorXd norms = a.colwise().squaredNorm();
    const double lower = std::sqrt(norms.maxCoeff());
    const double stop = 0.5 * tol.threshold(lower, rows, cols);
    for (Eigen::Index k = 0; k < kmax; ++k) {
      if (k > 0) norms = a.colwise().squaredNorm();
      if (std::sqrt(norms.sum()) <= stop) break;
      Eigen::Index pivot = 0;
      const double best = std::sqrt(norms.maxCoeff(&pivot));
      if (best == 0.0) break;
      Eigen::VectorXd v = a.col(pivot) / best;
      if (k > 0) {
        v -= q * (q.transpose() * v);
        const double nv = v.norm();
        if (nv == 0.0) break;
        v /= nv;
      }
      Eigen::RowVectorXd row = v.transpose() * a;
      a.noalias() -= v * row;
      q.conservativeResize(Eigen::NoChange, k + 1);
      q.col(k) = v;
      r.conservativeResize(k + 1, Eigen::NoChange);
      r.row(k) = row;
    }
  }

  if (r.rows() == 0) {
    threshold_ = tol.threshold(0.0, rows, cols);
    u_.resize(rows, 0);
    v_.resize(cols, 0);
    return;
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw SvdFailure("SVD did not converge");
  sigma_ = svd.singularValues();
  threshold_ = tol.threshold(sigma_(0), rows, cols);
  while (rank_ < sigma_.size() && sigma_(rank_) > threshold_) ++rank_;

  u_ = q * svd.matrixU().leftCols(rank_);
  v_ = svd.matrixV().leftCols(rank_);
  for (Eigen::Index k = 0; k < rank_; ++k) {
    Eigen::Index at = 0;
    u_.col(k).cwiseAbs().maxCoeff(&at);
    if (u_(at, k) < 0.0) {
      u_.col(k) = -u_.col(k);
      v_.col(k) = -v_.col(k);
    }
  }
}

Eigen::Index numerical_rank(Eigen::MatrixXd a, RankTolerance tol) {
  return LowRankSvd(std::move(a), tol).rank();
}

Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& a, double rel_tol) {
  Eigen::MatrixXd q(a.rows(), 0);
  for (Eigen::Index j = 0; j < a.cols() && q.cols() < a.rows(); ++j) {
    const double scale = a.col(j).norm();
    if (scale == 0.0) continue;
    Eigen::VectorXd v = a.col(j);
    for (int pass = 0; pass < 2; ++pass) v -= q * (q.transpose() * v);
    const double nv = v.norm();
    if (nv <= rel_tol * scale) continue;
    q.conservativeResize(Eigen::NoChange, q.cols() + 1);
    q.col(q.cols() - 1) = v / nv;
  }
  return q;
}

Eigen::MatrixXd orthogonal_complement(const Eigen::MatrixXd& q, Eigen::Index n) {
  if (q.cols() == 0) return Eigen::MatrixXd::Identity(n, n);
  if (q.rows() != n) throw DimensionError("basis has the wrong ambient dimension");
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(q);
  Eigen::MatrixXd full = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  return full.rightCols(n - q.cols());
}

double subspace_distance(const Eigen::MatrixXd& q1, const Eigen::MatrixXd& q2) {
  auto leak = [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.cols() == 0) return 0.0;
    if (b.cols() == 0) return a.norm();
    return (a - b * (b.transpose() * a)).norm();
  };
  return std::max(leak(q1, q2), leak(q2, q1));
}

}  // namespace lsreal
