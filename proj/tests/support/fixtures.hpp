#pragma once

#include <random>
#include <string>

#include <Eigen/Dense>

#include "lsreal/lss.hpp"
#include "lsreal/markov.hpp"

namespace lsreal::fixture {

/// Five-state, two-mode example system with x(f1) = 0, x(f2) = e5.
Realization paper_system();
/// Its four-state minimal realization.
Realization paper_minimal();
/// The two-state 1-partial realization listed alongside the example.
Realization paper_partial();

struct RandomSpec {
  int n = 3;
  int modes = 2;
  int m = 1;
  int p = 1;
  int tags = 1;
};

/// Entries uniform in [-1, 1]; modes q1..qD, tags f1..fk.
Realization random_realization(std::mt19937_64& rng, const RandomSpec& spec);

/// Random shape within n <= max_n, D <= max_modes, m, p <= max_io, tags <= 2.
RandomSpec random_spec(std::mt19937_64& rng, int max_n, int max_modes, int max_io);

}  // namespace lsreal::fixture
