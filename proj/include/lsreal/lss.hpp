#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lsreal/markov.hpp"
#include "lsreal/types.hpp"

namespace lsreal {

/// Continuous-time subsystem active in one discrete mode:
///   x' = A x + B u,  y = C x.
struct ModeTriple {
  Eigen::MatrixXd A;  // n x n
  Eigen::MatrixXd B;  // n x m
  Eigen::MatrixXd C;  // p x n
};

/// Linear switched system: one (A, B, C) triple per mode over a shared state
/// space R^n, input space R^m and output space R^p. n may be zero (the
/// trivial system); m and p are positive.
class Lss {
 public:
  Lss(Alphabet alphabet, std::vector<ModeTriple> modes);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t mode_count() const { return modes_.size(); }
  Eigen::Index n() const { return n_; }
  Eigen::Index m() const { return m_; }
  Eigen::Index p() const { return p_; }

  const ModeTriple& mode(int q) const { return modes_.at(static_cast<std::size_t>(q)); }
  const Eigen::MatrixXd& A(int q) const { return mode(q).A; }
  const Eigen::MatrixXd& B(int q) const { return mode(q).B; }
  const Eigen::MatrixXd& C(int q) const { return mode(q).C; }

  /// The (p·D) x n matrix [C_σ1; ...; C_σD].
  Eigen::MatrixXd stacked_C() const;

 private:
  Alphabet alphabet_;
  std::vector<ModeTriple> modes_;
  Eigen::Index n_ = 0;
  Eigen::Index m_ = 0;
  Eigen::Index p_ = 0;
};

/// An LSS together with the initial-state map μ: tag -> R^n.
class Realization {
 public:
  Realization(Lss sys, std::map<std::string, Eigen::VectorXd> mu = {});

  const Lss& sys() const { return sys_; }
  const std::map<std::string, Eigen::VectorXd>& mu() const { return mu_; }
  const Eigen::VectorXd& initial_state(const std::string& tag) const;
  std::vector<std::string> tags() const;
  Eigen::Index n() const { return sys_.n(); }

  /// Canonical index set J for this realization.
  std::vector<SeriesIndex> index_set() const;
  /// n x |J| matrix whose columns are B_{q0} e_j and μ(f), in index-set order.
  Eigen::MatrixXd generators() const;

 private:
  Lss sys_;
  std::map<std::string, Eigen::VectorXd> mu_;
};

struct SwitchStep {
  int mode = 0;
  double duration = 0.0;
};

/// Finite, nonempty switching sequence (q1,t1)...(qk,tk).
struct SwitchingSequence {
  std::vector<SwitchStep> steps;
  double total_duration() const;
};

/// Piecewise-constant input. Segment i covers [breakpoints[i],
/// breakpoints[i+1]) and carries values[i]; breakpoints start at 0 and are
/// strictly increasing.
struct PiecewiseConstantInput {
  std::vector<double> breakpoints;
  std::vector<Eigen::VectorXd> values;

  static PiecewiseConstantInput constant(const Eigen::VectorXd& value, double duration);
  void validate(Eigen::Index m) const;
};

struct SimulationResult {
  Eigen::VectorXd y;
  Eigen::VectorXd x_final;
};

/// e^{A_q t}.
Eigen::MatrixXd mode_exp(const Lss& sys, int q, double t);

/// Output and final state from an explicit initial state. The input is
/// integrated exactly on each interval where both the mode and the input
/// value are constant, using the exponential of the augmented matrix
/// [[A, B u], [0, 0]].
SimulationResult simulate_from_state(const Lss& sys, const Eigen::VectorXd& x0,
                                     const PiecewiseConstantInput& u, const SwitchingSequence& w);

/// Output y = C_{qk} x(t1+...+tk) of the realization started at μ(tag).
SimulationResult simulate(const Realization& r, const std::string& tag,
                          const PiecewiseConstantInput& u, const SwitchingSequence& w);

/// G_{q1...qk}(t1..tk) = C_{qk} e^{A_{qk} tk} ... e^{A_{q1} t1} B_{q1}.
Eigen::MatrixXd kernel_G(const Lss& sys, const Word& w, std::span<const double> times);

/// K^f_{q1...qk}(t1..tk) = C_{qk} e^{A_{qk} tk} ... e^{A_{q1} t1} μ(f).
Eigen::VectorXd kernel_K(const Realization& r, const std::string& tag, const Word& w,
                         std::span<const double> times);

/// Markov parameters by matrix products, for every index and word of length
/// at most `max_order`:
///   S_{q,q0,j}(q1...qk) = C_q A_{qk} ... A_{q1} B_{q0} e_j,
///   S_{f,q}(q1...qk)    = C_q A_{qk} ... A_{q1} μ(f).
MarkovFamily markov_from_lss(const Realization& r, int max_order);

/// Approximates the Markov parameter S_{q,j}(w) (a p-vector for output mode
/// q) from simulated outputs only, as the mixed first
/// derivative in the switching times at zero. Each time variable uses the
/// one-sided stencil f'(0) ≈ (-3 f(0) + 4 f(h) - f(2h)) / (2h).
/// Limited to |w| <= 2; throws OrderTooHigh otherwise.
Eigen::VectorXd finite_diff_markov(const Realization& r, const SeriesIndex& idx, const Word& w,
                                   int q, double h);

}  // namespace lsreal
