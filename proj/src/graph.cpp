#include "lrs/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace lrs {

Matrix normalize_samples(const Matrix& x, std::vector<Index>* zero_columns) {
  Matrix out = x;
  for (Index j = 0; j < out.cols(); ++j) {
    const double norm = out.col(j).norm();
    if (norm > 0.0) {
      out.col(j) /= norm;
    } else if (zero_columns) {
      zero_columns->push_back(j);
    }
  }
  return out;
}

Matrix postprocess_coefficients(const Matrix& z, double theta) {
  if (!(theta >= 0.0)) {
    throw std::invalid_argument("postprocess_coefficients: theta must be >= 0");
  }
  if (z.size() > 0 && z.minCoeff() < 0.0) {
    throw std::invalid_argument(
        "postprocess_coefficients: coefficients must be nonnegative");
  }
  Matrix out = z;
  for (Index j = 0; j < out.cols(); ++j) {
    const double norm = out.col(j).norm();
    if (norm == 0.0) continue;
    // Columns already unit to rounding are left untouched, which makes the
    // whole transform idempotent.
    if (std::abs(norm - 1.0) > 4.0 * std::numeric_limits<double>::epsilon()) {
      out.col(j) /= norm;
    }
    for (Index i = 0; i < out.rows(); ++i) {
      if (out(i, j) < theta) out(i, j) = 0.0;
    }
  }
  return out;
}

AffinityGraph symmetrize(const Matrix& zhat) {
  if (zhat.rows() != zhat.cols()) {
    throw std::invalid_argument("symmetrize: matrix must be square");
  }
  AffinityGraph g;
  g.w = (zhat + zhat.transpose()) / 2.0;
  return g;
}

AffinityGraph build_nnlrs_graph(const Matrix& x, const NnlrsConfig& cfg,
                                double theta, NnlrsSolution* solution_out) {
  if (x.cols() < 2) {
    throw std::invalid_argument("build_nnlrs_graph: need at least 2 samples");
  }
  const Matrix xn = normalize_samples(x);
  NnlrsSolution sol = solve_nnlrs(xn, xn, cfg);
  AffinityGraph g = symmetrize(postprocess_coefficients(sol.h_star, theta));
  g.solver_converged = sol.converged;
  if (solution_out) *solution_out = std::move(sol);
  return g;
}

AffinityGraph knn_gaussian_graph(const Matrix& x, int k, double sigma) {
  const Index n = x.cols();
  if (k < 1 || k >= n) {
    throw std::invalid_argument("knn_gaussian_graph: need 1 <= k < n");
  }
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("knn_gaussian_graph: sigma must be positive");
  }

  Matrix sq_dist(n, n);
  for (Index i = 0; i < n; ++i) {
    sq_dist(i, i) = 0.0;
    for (Index j = i + 1; j < n; ++j) {
      const double d2 = (x.col(i) - x.col(j)).squaredNorm();
      sq_dist(i, j) = d2;
      sq_dist(j, i) = d2;
    }
  }

  Matrix w = Matrix::Zero(n, n);
  std::vector<Index> order(n);
  for (Index i = 0; i < n; ++i) {
    std::iota(order.begin(), order.end(), Index{0});
    // Stable distance order with index tie-break; self excluded.
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
      if (sq_dist(i, a) != sq_dist(i, b)) return sq_dist(i, a) < sq_dist(i, b);
      return a < b;
    });
    int taken = 0;
    for (Index j : order) {
      if (j == i) continue;
      w(i, j) = std::exp(-sq_dist(i, j) / (2.0 * sigma * sigma));
      if (++taken == k) break;
    }
  }

  AffinityGraph g;
  g.w = w.cwiseMax(w.transpose());
  return g;
}

Matrix laplacian(const AffinityGraph& g) {
  const Vector degrees = g.w.rowwise().sum();
  Matrix l = -g.w;
  l.diagonal() += degrees;
  return l;
}

Matrix normalized_laplacian(const AffinityGraph& g) {
  const Vector degrees = g.w.rowwise().sum();
  Vector dinv_sqrt(degrees.size());
  for (Index i = 0; i < degrees.size(); ++i) {
    dinv_sqrt(i) = degrees(i) > 0.0 ? 1.0 / std::sqrt(degrees(i)) : 0.0;
  }
  return dinv_sqrt.asDiagonal() * laplacian(g) * dinv_sqrt.asDiagonal();
}

}  // namespace lrs
