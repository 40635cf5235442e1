#pragma once

#include <vector>

#include "lrs/matrix.hpp"
#include "lrs/solver.hpp"

namespace lrs {

// Default threshold for stripping near-zero coefficients before
// symmetrization.
inline constexpr double kDefaultTheta = 1e-4;

// Symmetric nonnegative affinity matrix over n samples.
struct AffinityGraph {
  Matrix w;
  bool solver_converged = true;  // metadata from the producing solve

  Index node_count() const { return w.rows(); }
};

// Scale every column to unit l2 norm; zero columns are left untouched and
// their indices reported through zero_columns when given.
Matrix normalize_samples(const Matrix& x,
                         std::vector<Index>* zero_columns = nullptr);

// Normalize each nonnegative coefficient column to unit l2 norm, then zero
// entries below theta. Surviving entries keep their normalized values.
Matrix postprocess_coefficients(const Matrix& z, double theta);

// W = (Zhat + Zhat^T) / 2 for a square nonnegative Zhat.
AffinityGraph symmetrize(const Matrix& zhat);

// Full pipeline on a data matrix with itself as the dictionary:
// normalize columns, solve for nonnegative low-rank and sparse
// coefficients, threshold, symmetrize. The solve's result is exposed
// through solution_out when given.
AffinityGraph build_nnlrs_graph(const Matrix& x, const NnlrsConfig& cfg,
                                double theta = kDefaultTheta,
                                NnlrsSolution* solution_out = nullptr);

// Baseline: connect each sample to its k nearest Euclidean neighbors with
// Gaussian weights exp(-d^2 / (2 sigma^2)), symmetrized by max(W, W^T).
AffinityGraph knn_gaussian_graph(const Matrix& x, int k, double sigma);

// L = D - W.
Matrix laplacian(const AffinityGraph& g);

// D^{-1/2} L D^{-1/2}; rows and columns of isolated nodes are zero.
Matrix normalized_laplacian(const AffinityGraph& g);

}  // namespace lrs
