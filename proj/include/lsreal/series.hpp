#pragma once

#include <vector>

#include <Eigen/Dense>

#include "lsreal/lss.hpp"
#include "lsreal/markov.hpp"
#include "lsreal/series_family.hpp"

namespace lsreal {

/// Rational representation (R^n, {A_σ}, B, C) of a family of formal power
/// series {S_j | j in J}:  S_j(σ1...σk) = C A_{σk} ... A_{σ1} B_j.
class Representation {
 public:
  /// `b` holds one column per element of `index_set`.
  Representation(Alphabet alphabet, std::vector<SeriesIndex> index_set,
                 std::vector<Eigen::MatrixXd> a, Eigen::MatrixXd b, Eigen::MatrixXd c);

  const Alphabet& alphabet() const { return alphabet_; }
  Eigen::Index state_dim() const { return c_.cols(); }
  Eigen::Index out_dim() const { return c_.rows(); }
  const std::vector<SeriesIndex>& index_set() const { return index_; }

  const Eigen::MatrixXd& A(int letter) const { return a_.at(static_cast<std::size_t>(letter)); }
  const std::vector<Eigen::MatrixXd>& A() const { return a_; }
  const Eigen::MatrixXd& B() const { return b_; }
  Eigen::VectorXd B(const SeriesIndex& j) const;
  const Eigen::MatrixXd& C() const { return c_; }

  /// A_w = A_{σk} ... A_{σ1} for w = σ1...σk; identity for the empty word.
  Eigen::MatrixXd A_word(const Word& w) const;

 private:
  Alphabet alphabet_;
  std::vector<SeriesIndex> index_;
  std::vector<Eigen::MatrixXd> a_;
  Eigen::MatrixXd b_;
  Eigen::MatrixXd c_;
};

/// S_j(w) = C A_w B_j. Throws UnknownIndex when j is not in J.
Eigen::VectorXd series_eval(const Representation& rep, const SeriesIndex& j, const Word& w);

/// Truncated series of every member of the family represented by `rep`.
SeriesFamily series_of(const Representation& rep, int horizon);

/// Left shift (w ∘ T)(v) = T(wv), with horizon reduced by |w|.
TruncatedSeries shift(const TruncatedSeries& t, const Word& w);

/// The indexed family Ψ_Φ = {S_j | j in J_Φ} of stacked series.
SeriesFamily family_from_markov(const MarkovFamily& mk);

/// Representation associated with an LSS realization: A_σ copied, C the
/// stack of the per-mode C_q, B_{(q,l)} the l-th column of B_q, B_f = μ(f).
Representation lss_to_representation(const Realization& r);

/// Inverse construction: C sliced per mode, B_q assembled from the B_{(q,l)},
/// μ(f) = B_f. J must contain (q,l) for every mode q and l < m for a single m.
Realization representation_to_lss(const Representation& rep);

}  // namespace lsreal
