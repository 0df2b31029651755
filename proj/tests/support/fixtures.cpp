#include "fixtures.hpp"

namespace lsreal::fixture {

namespace {

Eigen::VectorXd unit(int n, int k) { return Eigen::VectorXd::Unit(n, k); }

}  // namespace

Realization paper_system() {
  ModeTriple q1, q2;
  q1.A = Eigen::MatrixXd::Zero(5, 5);
  q1.A(1, 2) = 1;
  q1.A(2, 3) = 1;
  q1.A(3, 4) = 1;
  q1.B = unit(5, 4);
  q1.C = unit(5, 1).transpose();

  q2.A = Eigen::MatrixXd::Zero(5, 5);
  q2.A(1, 1) = 2;
  q2.A(4, 4) = 3;
  q2.B = unit(5, 1);
  q2.C = unit(5, 4).transpose();

  Lss sys(Alphabet({"q1", "q2"}), {q1, q2});
  return Realization(sys, {{"f1", Eigen::VectorXd::Zero(5)}, {"f2", unit(5, 4)}});
}

Realization paper_minimal() {
  ModeTriple q1, q2;
  q1.A = Eigen::MatrixXd::Zero(4, 4);
  q1.A(1, 3) = 1;
  q1.A(2, 0) = 1;
  q1.A(3, 2) = 1;
  q1.B = unit(4, 0);
  q1.C = unit(4, 1).transpose();

  q2.A = Eigen::MatrixXd::Zero(4, 4);
  q2.A(0, 0) = 3;
  q2.A(1, 1) = 2;
  q2.B = unit(4, 1);
  q2.C = unit(4, 0).transpose();

  Lss sys(Alphabet({"q1", "q2"}), {q1, q2});
  return Realization(sys, {{"f1", Eigen::VectorXd::Zero(4)}, {"f2", unit(4, 0)}});
}

Realization paper_partial() {
  ModeTriple q1, q2;
  q1.A = Eigen::MatrixXd::Zero(2, 2);
  q1.B = Eigen::Vector2d(-1.5, 0);
  q1.C = Eigen::RowVector2d(0, 2.0 / 3.0);

  q2.A = Eigen::Vector2d(3, 2).asDiagonal();
  q2.B = Eigen::Vector2d(0, 1.5);
  q2.C = Eigen::RowVector2d(-2.0 / 3.0, 0);

  Lss sys(Alphabet({"q1", "q2"}), {q1, q2});
  return Realization(sys, {{"f1", Eigen::Vector2d::Zero()}, {"f2", Eigen::Vector2d(-1.5, 0)}});
}

Realization random_realization(std::mt19937_64& rng, const RandomSpec& spec) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto fill = [&](Eigen::Index r, Eigen::Index c) {
    Eigen::MatrixXd m(r, c);
    for (Eigen::Index j = 0; j < c; ++j)
      for (Eigen::Index i = 0; i < r; ++i) m(i, j) = u(rng);
    return m;
  };
  std::vector<std::string> names;
  std::vector<ModeTriple> modes;
  for (int q = 0; q < spec.modes; ++q) {
    names.push_back("q" + std::to_string(q + 1));
    modes.push_back({fill(spec.n, spec.n), fill(spec.n, spec.m), fill(spec.p, spec.n)});
  }
  std::map<std::string, Eigen::VectorXd> mu;
  for (int f = 0; f < spec.tags; ++f) mu["f" + std::to_string(f + 1)] = fill(spec.n, 1);
  return Realization(Lss(Alphabet(names), std::move(modes)), std::move(mu));
}

RandomSpec random_spec(std::mt19937_64& rng, int max_n, int max_modes, int max_io) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  RandomSpec s;
  s.n = pick(1, max_n);
  s.modes = pick(1, max_modes);
  s.m = pick(1, max_io);
  s.p = pick(1, max_io);
  s.tags = pick(0, 2);
  return s;
}

}  // namespace lsreal::fixture
