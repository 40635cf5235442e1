#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "lrs/graph.hpp"
#include "lrs/matrix.hpp"
#include "lrs/rng.hpp"
#include "lrs/solver.hpp"
#include "lrs/synth.hpp"
#include "oracle.hpp"

using lrs::Index;
using lrs::Matrix;
using lrs::NnlrsConfig;

TEST_CASE("objective on known values") {
  NnlrsConfig cfg;  // beta 0.2, lambda 10
  CHECK(lrs::nnlrs_objective(Matrix::Zero(3, 3), Matrix::Zero(2, 3), cfg) ==
        0.0);
  CHECK(lrs::nnlrs_objective(Matrix::Identity(2, 2), Matrix::Zero(2, 2),
                             cfg) == doctest::Approx(2.4));
  Matrix z = Matrix::Zero(2, 2);
  z(0, 0) = 3.0;
  z(1, 1) = 4.0;
  Matrix e(2, 1);
  e << 0.6, 0.8;
  NnlrsConfig unit;
  unit.beta = 1.0;
  unit.lambda = 1.0;
  CHECK(lrs::nnlrs_objective(z, e, unit) == doctest::Approx(15.0));
}

TEST_CASE("step on zero data keeps the state at zero except the penalty") {
  lrs::Rng rng(4);
  const Matrix a = rng.gaussian(3, 4);
  const Matrix x = Matrix::Zero(3, 5);
  NnlrsConfig cfg;
  lrs::SolverState s = lrs::make_initial_state(x, a, cfg);
  for (int k = 0; k < 5; ++k) {
    const double mu_before = s.mu;
    s = lrs::ladmap_step(x, a, s, cfg);
    CHECK(s.z.cwiseAbs().maxCoeff() == 0.0);
    CHECK(s.h.cwiseAbs().maxCoeff() == 0.0);
    CHECK(s.e.cwiseAbs().maxCoeff() == 0.0);
    CHECK(s.y1.cwiseAbs().maxCoeff() == 0.0);
    CHECK(s.y2.cwiseAbs().maxCoeff() == 0.0);
    CHECK(s.mu == doctest::Approx(std::min(cfg.mu_max, cfg.rho0 * mu_before)));
  }
}

TEST_CASE("every step keeps H nonnegative") {
  lrs::Rng rng(12);
  const Matrix x = rng.gaussian(4, 6);
  const Matrix a = rng.gaussian(4, 5);
  NnlrsConfig cfg;
  lrs::SolverState s = lrs::make_initial_state(x, a, cfg);
  for (int k = 0; k < 50; ++k) {
    s = lrs::ladmap_step(x, a, s, cfg);
    CHECK(s.h.minCoeff() >= 0.0);
  }
}

TEST_CASE("scalar problem converges to the exact representation") {
  Matrix x(1, 1), a(1, 1);
  x << 1.0;
  a << 1.0;
  NnlrsConfig cfg;
  cfg.beta = 0.0;
  cfg.lambda = 100.0;
  cfg.max_iter = 10000;
  const lrs::NnlrsSolution sol = lrs::solve_nnlrs(x, a, cfg);
  CHECK(std::abs(sol.z_star(0, 0) - 1.0) < 1e-4);
  CHECK(std::abs(sol.e_star(0, 0)) < 1e-4);
}

TEST_CASE("zero data returns the zero solution immediately") {
  const Matrix x = Matrix::Zero(3, 4);
  lrs::Rng rng(2);
  const Matrix a = rng.gaussian(3, 4);
  const lrs::NnlrsSolution sol = lrs::solve_nnlrs(x, a, NnlrsConfig{});
  CHECK(sol.converged);
  CHECK(sol.iterations <= 1);
  CHECK(sol.z_star.cwiseAbs().maxCoeff() == 0.0);
  CHECK(sol.e_star.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("duplicate unit columns match the rank-one grid oracle") {
  Matrix x(3, 2);
  x.col(0) << 0.6, 0.8, 0.0;
  x.col(1) = x.col(0);
  NnlrsConfig cfg;  // beta 0.2, lambda 10

  // Feasible rank-one nonnegative candidates: both columns equal (t, 1-t)
  // with zero residual. Scan the family for the best objective.
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 10000; ++i) {
    const double t = i / 10000.0;
    Matrix z(2, 2);
    z << t, t, 1.0 - t, 1.0 - t;
    best = std::min(best,
                    lrs::nnlrs_objective(z, Matrix::Zero(3, 2), cfg));
  }

  const lrs::NnlrsSolution sol = lrs::solve_nnlrs(x, x, cfg);
  CHECK(sol.converged);
  CHECK(std::abs(lrs::nnlrs_objective(sol.z_star, sol.e_star, cfg) - best) <
        1e-3);
  // The coefficient mass sits on the two identical samples in both columns.
  CHECK(sol.h_star.minCoeff() >= 0.0);
  for (Index j = 0; j < 2; ++j) {
    CHECK(sol.h_star(0, j) > 0.3);
    CHECK(sol.h_star(1, j) > 0.3);
  }
}

TEST_CASE("small random instances agree with the independent reference") {
  for (int seed = 0; seed < 6; ++seed) {
    lrs::Rng rng(seed);
    const Matrix a = rng.gaussian(2 + seed % 3, 2 + (seed + 1) % 4);
    const Matrix x = rng.gaussian(2 + seed % 3, 3 + seed % 4);
    NnlrsConfig cfg;
    cfg.beta = (seed % 3 == 0) ? 0.0 : 0.2;
    cfg.lambda = (seed % 2 == 0) ? 10.0 : 1.0;
    cfg.eps2 = 1e-3;
    cfg.max_iter = 200000;
    const lrs::NnlrsSolution sol = lrs::solve_nnlrs(x, a, cfg);
    const oracle::ReferenceSolution ref =
        oracle::reference_nnlrs(x, a, cfg.beta, cfg.lambda);
    REQUIRE(sol.converged);
    REQUIRE(ref.converged);
    CHECK(std::abs(lrs::nnlrs_objective(sol.z_star, sol.e_star, cfg) -
                   ref.objective) < 1e-3);
  }
}

TEST_CASE("subspace samples produce block-concentrated coefficients") {
  const lrs::SynthDataset ds = lrs::make_subspace_dataset(1);
  NnlrsConfig cfg;
  const Matrix xn = lrs::normalize_samples(ds.x);
  const lrs::NnlrsSolution sol = lrs::solve_nnlrs(xn, xn, cfg);
  CHECK(sol.converged);
  const Matrix zn = lrs::postprocess_coefficients(sol.h_star, 0.0);
  CHECK(lrs::block_mass_fraction(zn, ds.labels) >= 0.9);
}

TEST_CASE("convergence flags imply feasibility and nonnegativity") {
  for (int seed = 0; seed < 5; ++seed) {
    lrs::Rng rng(40 + seed);
    const Matrix x = rng.gaussian(4, 6);
    NnlrsConfig cfg;
    const lrs::NnlrsSolution sol = lrs::solve_nnlrs(x, x, cfg);
    if (!sol.converged) continue;
    CHECK((x - x * sol.z_star - sol.e_star).norm() / x.norm() < cfg.eps1);
    CHECK(sol.h_star.minCoeff() >= 0.0);
    CHECK(sol.feasibility_history.back().primal < cfg.eps1);
  }
}

TEST_CASE("penalty is nondecreasing and capped") {
  lrs::Rng rng(77);
  const Matrix x = rng.gaussian(3, 5);
  NnlrsConfig cfg;
  cfg.mu_max = 1.0;
  lrs::SolverState s = lrs::make_initial_state(x, x, cfg);
  double prev = s.mu;
  for (int k = 0; k < 200; ++k) {
    s = lrs::ladmap_step(x, x, s, cfg);
    CHECK(s.mu >= prev);
    CHECK(s.mu <= cfg.mu_max);
    prev = s.mu;
  }
}

TEST_CASE("identical inputs give identical iterate sequences") {
  lrs::Rng rng(5);
  const Matrix x = rng.gaussian(4, 5);
  NnlrsConfig cfg;
  const lrs::NnlrsSolution s1 = lrs::solve_nnlrs(x, x, cfg);
  const lrs::NnlrsSolution s2 = lrs::solve_nnlrs(x, x, cfg);
  CHECK(s1.iterations == s2.iterations);
  CHECK((s1.z_star - s2.z_star).cwiseAbs().maxCoeff() == 0.0);
  CHECK((s1.e_star - s2.e_star).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE(s1.objective_history.size() == s2.objective_history.size());
  for (std::size_t i = 0; i < s1.objective_history.size(); ++i) {
    CHECK(s1.objective_history[i] == s2.objective_history[i]);
  }
}

TEST_CASE("solution tracks the gap between Z and H") {
  lrs::Rng rng(9);
  const Matrix x = rng.gaussian(4, 6);
  NnlrsConfig cfg;
  const lrs::NnlrsSolution sol = lrs::solve_nnlrs(x, x, cfg);
  REQUIRE(sol.converged);
  CHECK((sol.z_star - sol.h_star).norm() <= cfg.eps2 * x.norm());
}

TEST_CASE("configuration validation rejects bad values") {
  NnlrsConfig cfg;
  cfg.beta = -0.1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = NnlrsConfig{};
  cfg.lambda = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = NnlrsConfig{};
  cfg.rho0 = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = NnlrsConfig{};
  const Matrix x = Matrix::Ones(2, 2);
  const Matrix a = Matrix::Ones(3, 2);
  CHECK_THROWS_AS(lrs::solve_nnlrs(x, a, cfg), std::invalid_argument);
}
