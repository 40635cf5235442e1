#pragma once

#include "lrs/matrix.hpp"

namespace lrs::prox {

// Entrywise shrinkage: m -> sign(m) * max(|m| - tau, 0).
// Proximal operator of tau * ||.||_1.
Matrix soft_threshold(const Matrix& m, double tau);

// Singular value thresholding: soft-threshold the singular values of m.
// Proximal operator of tau * ||.||_*.
Matrix svt(const Matrix& m, double tau);

// Column-wise shrinkage: column j scaled by max(0, 1 - tau/||m_j||_2).
// Proximal operator of tau * ||.||_{2,1}; zero columns stay exactly zero.
Matrix l21_shrink(const Matrix& m, double tau);

// Largest singular value squared, relative accuracy better than 1e-6.
// Power iteration on a'a with a full-SVD fallback on non-convergence.
double spectral_norm_sq(const Matrix& a);

}  // namespace lrs::prox
