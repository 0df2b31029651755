#pragma once

#include <Eigen/Dense>

namespace lsreal {

/// Matrix exponential by scaling and squaring with diagonal Padé
/// approximants of degree 3, 5, 7, 9 or 13, chosen from the 1-norm
/// (Higham 2005). Throws NonFiniteInput on NaN/Inf entries.
Eigen::MatrixXd expm(const Eigen::MatrixXd& a);

}  // namespace lsreal
