#pragma once

#include <utility>
#include <vector>

#include "lrs/matrix.hpp"
#include "lrs/minimize.hpp"
#include "lrs/solver.hpp"

namespace lrs {

// Configuration for the joint solve of a linear projection P and the
// coefficient matrix Z:
//
//   min ||Z||_* + beta ||Z||_1 + lambda ||E||_{2,1} + gamma ||X - P'PX||_F^2
//   s.t. PX = PX Z + E,  Z >= 0.
struct EfConfig {
  NnlrsConfig nnlrs;
  double gamma = 1.0;       // reconstruction weight
  Index reduced_dim = 100;  // rows of P
  double eps3 = 1e-4;       // outer tolerance, relative to ||PX||_F
  int outer_max = 30;

  // Inner augmented-Lagrangian loop for the (E, P) subproblem.
  double inner_mu0 = 0.1;
  double inner_mu_max = 1e10;
  double inner_rho = 1.1;
  double inner_eps1 = 1e-6;
  double inner_eps2 = 1e-3;
  int inner_max_iter = 500;

  optim::MinimizeOptions p_step;  // smooth minimizer for the P update

  void validate(Index data_dim) const;
};

struct EfObjective {
  double value = 0.0;
  double constraint_residual = 0.0;  // ||PX - PXZ - E||_F
};

struct EfSolution {
  Matrix z_star, p_star, e_star;
  int outer_iterations = 0;
  bool converged = false;
  bool minimizer_flagged = false;  // a P step failed to reduce its objective
  std::vector<double> objective_history;  // one entry per outer iteration
};

struct EpResult {
  Matrix e, p;
  int iterations = 0;
  bool converged = false;
  bool minimizer_flagged = false;
};

EfObjective ef_objective(const Matrix& x, const Matrix& z, const Matrix& e,
                         const Matrix& p, const EfConfig& cfg);

// Top-k principal directions of the (uncentered) data: P rows span the best
// rank-k reconstruction subspace of X. When k exceeds the rank, remaining
// rows come deterministically from the orthogonal complement.
std::pair<Matrix, Matrix> pca_embed(const Matrix& x, Index k);

// (Z, E) subproblem with P fixed: the base solver on the projected data.
NnlrsSolution update_ze(const Matrix& x, const Matrix& p, const EfConfig& cfg);

// (E, P) subproblem with Z fixed, by inexact augmented-Lagrangian
// iterations; the P update runs a monotone quasi-Newton minimizer on
//   gamma ||X - P'PX||_F^2 + (mu/2) ||PX(I - Z) - E + Y1/mu||_F^2.
// e_init may be empty (zeros); solve_ef warm-starts it.
EpResult update_ep(const Matrix& x, const Matrix& z, Matrix p_init,
                   const EfConfig& cfg, Matrix e_init = Matrix());

// Analytic gradient of the P objective above; exposed for verification
// against finite differences.
Matrix ep_gradient(const Matrix& x, const Matrix& z, const Matrix& p,
                   const Matrix& e, const Matrix& y1, double mu, double gamma);

// Alternates update_ze and update_ep from a principal-directions start
// until Z, P and E all settle or outer_max is reached.
EfSolution solve_ef(const Matrix& x, const EfConfig& cfg);

}  // namespace lrs
