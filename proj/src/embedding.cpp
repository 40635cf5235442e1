#include "lrs/embedding.hpp"

#include <cmath>
#include <stdexcept>

#include "lrs/proximal.hpp"

namespace lrs {

void EfConfig::validate(Index data_dim) const {
  nnlrs.validate();
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  if (reduced_dim < 1 || reduced_dim > data_dim) {
    throw std::invalid_argument("reduced_dim must be in [1, d]");
  }
  if (!(eps3 > 0.0)) throw std::invalid_argument("eps3 must be > 0");
  if (outer_max < 1) throw std::invalid_argument("outer_max must be >= 1");
  if (!(inner_mu0 > 0.0) || !(inner_mu_max >= inner_mu0) ||
      !(inner_rho > 1.0) || !(inner_eps1 > 0.0) || !(inner_eps2 > 0.0) ||
      inner_max_iter < 1) {
    throw std::invalid_argument("invalid inner-loop configuration");
  }
}

EfObjective ef_objective(const Matrix& x, const Matrix& z, const Matrix& e,
                         const Matrix& p, const EfConfig& cfg) {
  EfObjective obj;
  const Matrix px = p * x;
  obj.value = nuclear_norm(z) + cfg.nnlrs.beta * l1_norm(z) +
              cfg.nnlrs.lambda * l21_norm(e) +
              cfg.gamma * (x - p.transpose() * px).squaredNorm();
  obj.constraint_residual = (px - px * z - e).norm();
  return obj;
}

std::pair<Matrix, Matrix> pca_embed(const Matrix& x, Index k) {
  if (k < 1 || k > std::min(x.rows(), x.cols())) {
    throw std::invalid_argument("pca_embed: need 1 <= k <= min(d, n)");
  }
  // Full left factor so rank-deficient data still yields k orthonormal
  // directions.
  Eigen::BDCSVD<Matrix> svd(x, Eigen::ComputeFullU);
  Matrix u = svd.matrixU();
  for (Index c = 0; c < u.cols(); ++c) {
    for (Index r = 0; r < u.rows(); ++r) {
      if (u(r, c) != 0.0) {
        if (u(r, c) < 0.0) u.col(c) = -u.col(c);
        break;
      }
    }
  }
  Matrix p = u.leftCols(k).transpose();
  return {p, p * x};
}

Matrix ep_gradient(const Matrix& x, const Matrix& z, const Matrix& p,
                   const Matrix& e, const Matrix& y1, double mu,
                   double gamma) {
  const Matrix px = p * x;
  const Matrix m = x - p.transpose() * px;
  const Matrix r = x - x * z;
  const Matrix n = p * r - e + y1 / mu;
  return -2.0 * gamma * (px * m.transpose() + (p * m) * x.transpose()) +
         mu * n * r.transpose();
}

NnlrsSolution update_ze(const Matrix& x, const Matrix& p,
                        const EfConfig& cfg) {
  const Matrix px = p * x;
  return solve_nnlrs(px, px, cfg.nnlrs);
}

EpResult update_ep(const Matrix& x, const Matrix& z, Matrix p_init,
                   const EfConfig& cfg, Matrix e_init) {
  if (p_init.cols() != x.rows()) {
    throw std::invalid_argument("update_ep: P columns must match data dim");
  }
  EpResult out;
  out.p = std::move(p_init);
  if (e_init.size() == 0) {
    out.e = Matrix::Zero(out.p.rows(), x.cols());
  } else {
    out.e = std::move(e_init);
  }
  if (x.norm() == 0.0) {
    out.converged = true;
    return out;
  }

  const Matrix r = x - x * z;  // X (I - Z), fixed across the loop
  Matrix y1 = Matrix::Zero(out.p.rows(), x.cols());
  double mu = cfg.inner_mu0;

  for (int k = 0; k < cfg.inner_max_iter; ++k) {
    const Matrix p_prev = out.p;
    const Matrix e_prev = out.e;

    // E: column-wise shrinkage at the current projection.
    out.e = prox::l21_shrink(out.p * r + y1 / mu, cfg.nnlrs.lambda / mu);

    // P: smooth subproblem by a monotone quasi-Newton descent.
    const Matrix e_fixed = out.e;
    const double gamma = cfg.gamma;
    const auto objective = [&](const Matrix& p, Matrix* grad) {
      if (grad) *grad = ep_gradient(x, z, p, e_fixed, y1, mu, gamma);
      const Matrix m = x - p.transpose() * (p * x);
      const Matrix n = p * r - e_fixed + y1 / mu;
      return gamma * m.squaredNorm() + 0.5 * mu * n.squaredNorm();
    };
    const optim::MinimizeResult res =
        optim::minimize(objective, out.p, cfg.p_step);
    if (res.made_progress || res.converged) {
      out.p = res.x;
    } else {
      out.minimizer_flagged = true;  // keep the previous P and continue
    }

    y1 += mu * (out.p * r - out.e);
    mu = std::min(cfg.inner_mu_max, cfg.inner_rho * mu);
    out.iterations = k + 1;

    const double scale = (out.p * x).norm();
    if (scale == 0.0) break;
    const double feas = (out.p * r - out.e).norm() / scale;
    const double de = (out.e - e_prev).norm() / scale;
    const double dp = (out.p - p_prev).norm() / scale;
    if (feas < cfg.inner_eps1 && de < cfg.inner_eps2 &&
        dp < cfg.inner_eps2) {
      out.converged = true;
      break;
    }
  }
  return out;
}

EfSolution solve_ef(const Matrix& x, const EfConfig& cfg) {
  cfg.validate(x.rows());
  if (x.cols() < 2) {
    throw std::invalid_argument("solve_ef: need at least 2 samples");
  }
  const Index k = std::min(cfg.reduced_dim, std::min(x.rows(), x.cols()));

  EfSolution sol;
  sol.p_star = pca_embed(x, k).first;
  sol.z_star = Matrix::Zero(x.cols(), x.cols());
  sol.e_star = Matrix::Zero(k, x.cols());

  // Per-iteration objective recording is only kept at the outer level.
  EfConfig inner = cfg;
  inner.nnlrs.objective_history = false;

  for (int outer = 0; outer < cfg.outer_max; ++outer) {
    const Matrix z_prev = sol.z_star;
    const Matrix p_prev = sol.p_star;
    const Matrix e_prev = sol.e_star;

    NnlrsSolution ze = update_ze(x, sol.p_star, inner);
    sol.z_star = ze.h_star;

    EpResult ep = update_ep(x, sol.z_star, sol.p_star, inner, ze.e_star);
    sol.p_star = ep.p;
    sol.e_star = ep.e;
    sol.minimizer_flagged = sol.minimizer_flagged || ep.minimizer_flagged;

    sol.objective_history.push_back(
        ef_objective(x, sol.z_star, sol.e_star, sol.p_star, cfg).value);
    sol.outer_iterations = outer + 1;

    const double scale = (sol.p_star * x).norm();
    const double change =
        std::max({(sol.z_star - z_prev).norm(), (sol.p_star - p_prev).norm(),
                  (sol.e_star - e_prev).norm()});
    if (change < cfg.eps3 * std::max(scale, 1e-300)) {
      sol.converged = true;
      break;
    }
  }
  return sol;
}

}  // namespace lrs
