#include "lrs/solver.hpp"

#include <algorithm>
#include <cmath>

#include "lrs/proximal.hpp"

namespace lrs {

void NnlrsConfig::validate() const {
  if (!(beta >= 0.0)) throw std::invalid_argument("beta must be >= 0");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  if (!(mu0 > 0.0)) throw std::invalid_argument("mu0 must be > 0");
  if (!(mu_max >= mu0)) throw std::invalid_argument("mu_max must be >= mu0");
  if (!(rho0 > 1.0)) throw std::invalid_argument("rho0 must be > 1");
  if (!(eps1 > 0.0)) throw std::invalid_argument("eps1 must be > 0");
  if (!(eps2 > 0.0)) throw std::invalid_argument("eps2 must be > 0");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
}

SolverState make_initial_state(const Matrix& x, const Matrix& a,
                               const NnlrsConfig& cfg) {
  cfg.validate();
  if (x.size() == 0 || a.size() == 0) {
    throw std::invalid_argument("solver: X and A must be nonempty");
  }
  if (a.rows() != x.rows()) {
    throw std::invalid_argument("solver: A must have the same row count as X");
  }
  SolverState s;
  s.z = Matrix::Zero(a.cols(), x.cols());
  s.h = Matrix::Zero(a.cols(), x.cols());
  s.e = Matrix::Zero(x.rows(), x.cols());
  s.y1 = Matrix::Zero(x.rows(), x.cols());
  s.y2 = Matrix::Zero(a.cols(), x.cols());
  s.mu = cfg.mu0;
  s.eta1 = prox::spectral_norm_sq(a);
  s.iteration = 0;
  return s;
}

SolverState ladmap_step(const Matrix& x, const Matrix& a,
                        const SolverState& state, const NnlrsConfig& cfg) {
  const double mu = state.mu;
  const double eta1 = state.eta1;
  const double norm_x = x.norm();

  SolverState next = state;
  try {
    // Z: nuclear-norm proximal step at the linearized point.
    const Matrix residual = x - a * state.z - state.e + state.y1 / mu;
    const Matrix gap = state.z - state.h + state.y2 / mu;
    const Matrix point = state.z + (a.transpose() * residual - gap) / eta1;
    next.z = prox::svt(point, 1.0 / (eta1 * mu));

    // H: entrywise shrinkage followed by projection onto the nonnegative
    // orthant.
    next.h =
        prox::soft_threshold(next.z + state.y2 / mu, cfg.beta / mu).cwiseMax(0.0);

    // E: column-wise shrinkage.
    next.e = prox::l21_shrink(x - a * next.z + state.y1 / mu, cfg.lambda / mu);
  } catch (const std::exception& err) {
    throw SolverError(err.what(), state.iteration);
  }

  next.y1 = state.y1 + mu * (x - a * next.z - next.e);
  next.y2 = state.y2 + mu * (next.z - next.h);

  const double change =
      std::max({std::sqrt(eta1) * (next.z - state.z).norm(),
                (next.h - state.h).norm(), (next.e - state.e).norm()});
  const double scaled_change = norm_x > 0.0 ? change / norm_x : 0.0;
  next.primal_residual =
      norm_x > 0.0 ? (x - a * next.z - next.e).norm() / norm_x : 0.0;

  // The penalty grows only while the iterates are settling; the stopping
  // rule then re-scales the same change by the grown penalty.
  const double rho = mu * scaled_change < cfg.eps2 ? cfg.rho0 : 1.0;
  next.mu = std::min(cfg.mu_max, rho * mu);
  next.change_residual = next.mu * scaled_change;
  next.iteration = state.iteration + 1;

  if (!all_finite(next.z) || !all_finite(next.h) || !all_finite(next.e) ||
      !all_finite(next.y1) || !all_finite(next.y2)) {
    throw SolverError("non-finite iterate", next.iteration);
  }
  return next;
}

NnlrsSolution solve_nnlrs(const Matrix& x, const Matrix& a,
                          const NnlrsConfig& cfg) {
  SolverState state = make_initial_state(x, a, cfg);

  NnlrsSolution sol;
  if (x.norm() == 0.0) {
    // The stopping rule divides by ||X||_F; a zero X has the zero solution.
    sol.z_star = state.z;
    sol.h_star = state.h;
    sol.e_star = state.e;
    sol.converged = true;
    return sol;
  }

  for (int k = 0; k < cfg.max_iter; ++k) {
    state = ladmap_step(x, a, state, cfg);
    sol.feasibility_history.push_back(
        {state.primal_residual, state.change_residual});
    if (cfg.objective_history) {
      sol.objective_history.push_back(nnlrs_objective(state.z, state.e, cfg));
    }
    if (state.primal_residual < cfg.eps1 &&
        state.change_residual < cfg.eps2) {
      sol.converged = true;
      break;
    }
  }

  sol.z_star = state.z;
  sol.h_star = state.h;
  sol.e_star = state.e;
  sol.iterations = state.iteration;
  return sol;
}

double nnlrs_objective(const Matrix& z, const Matrix& e,
                       const NnlrsConfig& cfg) {
  return nuclear_norm(z) + cfg.beta * l1_norm(z) + cfg.lambda * l21_norm(e);
}

}  // namespace lrs
