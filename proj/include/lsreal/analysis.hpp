#pragma once

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "lsreal/linalg.hpp"
#include "lsreal/lss.hpp"
#include "lsreal/markov.hpp"
#include "lsreal/series.hpp"

namespace lsreal {

struct SubspaceBasis {
  enum class Kind { Reach, Obs };
  Kind kind = Kind::Reach;
  Eigen::MatrixXd basis;  // n x k, orthonormal columns
  int depth_used = 0;
  Eigen::Index dim() const { return basis.cols(); }
};

struct SubspaceOptions {
  /// Longest word used; negative means n-1.
  int max_depth = -1;
  /// Stop breadth-first generation once a whole level adds no new direction.
  bool early_stop = true;
  /// A candidate is new when its residual after projection exceeds
  /// rel_tol times its own norm.
  double rel_tol = 1e-10;
};

/// span{A_v B_j : |v| <= depth, j in J}.
SubspaceBasis reach_space(const Representation& rep, const SubspaceOptions& opt = {});

/// ∩_{|v| <= depth} ker C A_v, computed as the orthogonal complement of the
/// row span of the C A_v.
SubspaceBasis obs_space(const Representation& rep, const SubspaceOptions& opt = {});

struct MinimalityCertificate {
  Eigen::Index dim = 0;
  Eigen::Index reach_dim = 0;
  Eigen::Index obs_kernel_dim = 0;
  std::optional<Eigen::Index> hankel_rank;
  bool is_minimal = false;
};

/// Semi-reachability and observability of the associated representation.
/// When Markov data is supplied, also records the rank of the largest Hankel
/// block it supports.
MinimalityCertificate certify_minimal(const Realization& r, const MarkovFamily* mk = nullptr,
                                      RankTolerance tol = {});

struct IsomorphismResult {
  std::optional<Eigen::MatrixXd> S;
  /// Largest relative residual over the morphism equations (when S was solved).
  double residual = 0.0;
  /// Why no isomorphism was returned.
  std::string reason;
  explicit operator bool() const { return S.has_value(); }
};

/// Looks for an invertible S with A2_q S = S A1_q, B2_q = S B1_q,
/// C2_q S = C1_q and S μ1(f) = μ2(f). S is solved from the reachability
/// generators A_v B_j (|v| <= n-1, canonical order) of both systems.
/// Throws DimensionMismatch when alphabets, m, p or tags differ.
IsomorphismResult find_isomorphism(const Realization& r1, const Realization& r2, double tol = 1e-8);

/// Smallest order k at which some entry differs:
///   ||a - b||_inf > max(tol · max(||a||_inf, ||b||_inf), 1e-12).
/// nullopt when the families agree through the smaller max_order.
/// Throws IncompatibleFamilies.
std::optional<int> markov_match_order(const MarkovFamily& a, const MarkovFamily& b,
                                      double tol = 1e-8);

/// Same comparison for two realizations through `order`, generating the
/// Markov parameters word by word instead of storing them.
std::optional<int> markov_match_order(const Realization& a, const Realization& b, int order,
                                      double tol = 1e-8);

/// Same comparison of a realization against stored data through `order`
/// (at most mk.max_order()).
std::optional<int> markov_match_order(const MarkovFamily& mk, const Realization& r, int order,
                                      double tol = 1e-8);

}  // namespace lsreal
