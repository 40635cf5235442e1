#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lrs/matrix.hpp"

namespace lrs {

// Hyperparameters and schedules for the linearized alternating-direction
// solve of
//
//   min ||Z||_* + beta ||Z||_1 + lambda ||E||_{2,1}
//   s.t. X = A Z + E,  Z >= 0.
struct NnlrsConfig {
  double beta = 0.2;      // weight of the sparsity term
  double lambda = 10.0;   // weight of the column-sparse noise term
  double mu0 = 0.1;       // initial penalty
  double mu_max = 1e10;
  double rho0 = 1.1;      // penalty growth factor
  double eps1 = 1e-6;     // relative feasibility tolerance
  double eps2 = 1e-2;     // scaled variable-change tolerance
  int max_iter = 1000;
  bool objective_history = true;  // record the objective every iteration

  void validate() const;
};

// One iterate of the solver. H mirrors Z through the coupling Z = H and is
// kept exactly nonnegative; Y1, Y2 are the multipliers of the two
// constraints.
struct SolverState {
  Matrix z, h, e, y1, y2;
  double mu = 0.0;
  double eta1 = 0.0;  // squared spectral norm of the dictionary
  int iteration = 0;
  // Diagnostics of the step that produced this state. change_residual is
  // the updated penalty times max(sqrt(eta1)|dZ|, |dH|, |dE|) / ||X||_F,
  // the quantity the stopping rule compares against eps2.
  double primal_residual = 0.0;  // ||X - A Z - E||_F / ||X||_F
  double change_residual = 0.0;
};

struct ResidualPair {
  double primal = 0.0;
  double change = 0.0;
};

struct NnlrsSolution {
  Matrix z_star, h_star, e_star;
  int iterations = 0;
  bool converged = false;
  std::vector<ResidualPair> feasibility_history;
  std::vector<double> objective_history;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, int iteration)
      : std::runtime_error(what + " (iteration " + std::to_string(iteration) +
                           ")"),
        iteration_(iteration) {}
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

// Zero-initialized state with eta1 precomputed from the dictionary.
SolverState make_initial_state(const Matrix& x, const Matrix& a,
                               const NnlrsConfig& cfg);

// One linearized alternating-direction update: proximal steps on Z, H, E,
// then multiplier and adaptive penalty updates. Throws SolverError if a
// non-finite iterate appears.
SolverState ladmap_step(const Matrix& x, const Matrix& a,
                        const SolverState& state, const NnlrsConfig& cfg);

// Iterates ladmap_step until the feasibility and variable-change criteria
// both hold or max_iter is reached. Non-convergence is reported through the
// flag, not an exception. H_star is the exactly nonnegative iterate that
// downstream graph construction consumes.
NnlrsSolution solve_nnlrs(const Matrix& x, const Matrix& a,
                          const NnlrsConfig& cfg);

// ||Z||_* + beta ||Z||_1 + lambda ||E||_{2,1}
double nnlrs_objective(const Matrix& z, const Matrix& e,
                       const NnlrsConfig& cfg);

}  // namespace lrs
