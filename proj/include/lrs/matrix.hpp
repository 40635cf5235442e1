#pragma once

#include <Eigen/Dense>

namespace lrs {

// Dense column-major real matrices throughout; samples are columns.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Singular values below this are treated as zero when reporting ranks.
inline constexpr double kSingularFloor = 1e-12;

// Thin SVD m = u * sigma.asDiagonal() * v.transpose() with a fixed sign
// convention: the first nonzero entry of each left singular vector is
// nonnegative. This makes every SVD-based computation reproducible.
struct Svd {
  Matrix u;
  Vector sigma;
  Matrix v;
};

Svd thin_svd(const Matrix& m);

// Singular values only (descending).
Vector singular_values(const Matrix& m);

bool all_finite(const Matrix& m);

double l1_norm(const Matrix& m);
double l21_norm(const Matrix& m);
double nuclear_norm(const Matrix& m);

Index numerical_rank(const Matrix& m);

}  // namespace lrs
