#include "lrs/matrix.hpp"

#include <stdexcept>

namespace lrs {

namespace {

// Flip column pairs so the first nonzero entry of each left singular
// vector is nonnegative.
void fix_signs(Matrix& u, Matrix& v) {
  for (Index k = 0; k < u.cols(); ++k) {
    double lead = 0.0;
    for (Index i = 0; i < u.rows(); ++i) {
      if (u(i, k) != 0.0) {
        lead = u(i, k);
        break;
      }
    }
    if (lead < 0.0) {
      u.col(k) = -u.col(k);
      if (k < v.cols()) v.col(k) = -v.col(k);
    }
  }
}

}  // namespace

Svd thin_svd(const Matrix& m) {
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success || !svd.singularValues().allFinite()) {
    throw std::runtime_error("thin_svd: decomposition failed");
  }
  Svd out{svd.matrixU(), svd.singularValues(), svd.matrixV()};
  fix_signs(out.u, out.v);
  return out;
}

Vector singular_values(const Matrix& m) {
  Eigen::BDCSVD<Matrix> svd(m);
  if (svd.info() != Eigen::Success || !svd.singularValues().allFinite()) {
    throw std::runtime_error("singular_values: decomposition failed");
  }
  return svd.singularValues();
}

bool all_finite(const Matrix& m) { return m.allFinite(); }

double l1_norm(const Matrix& m) { return m.cwiseAbs().sum(); }

double l21_norm(const Matrix& m) {
  double s = 0.0;
  for (Index j = 0; j < m.cols(); ++j) s += m.col(j).norm();
  return s;
}

double nuclear_norm(const Matrix& m) { return singular_values(m).sum(); }

Index numerical_rank(const Matrix& m) {
  const Vector sv = singular_values(m);
  Index r = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > kSingularFloor) ++r;
  }
  return r;
}

}  // namespace lrs
