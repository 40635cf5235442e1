#include "lrs/proximal.hpp"

#include <cmath>
#include <stdexcept>

namespace lrs::prox {

namespace {

void require_nonneg_tau(double tau, const char* op) {
  if (!(tau >= 0.0)) {
    throw std::invalid_argument(std::string(op) + ": tau must be nonnegative");
  }
}

}  // namespace

Matrix soft_threshold(const Matrix& m, double tau) {
  require_nonneg_tau(tau, "soft_threshold");
  return m.unaryExpr([tau](double v) {
    const double mag = std::abs(v) - tau;
    return mag > 0.0 ? (v > 0.0 ? mag : -mag) : 0.0;
  });
}

Matrix svt(const Matrix& m, double tau) {
  require_nonneg_tau(tau, "svt");
  if (tau == 0.0) return m;
  Svd svd = thin_svd(m);
  Vector s = (svd.sigma.array() - tau).max(0.0);
  return svd.u * s.asDiagonal() * svd.v.transpose();
}

Matrix l21_shrink(const Matrix& m, double tau) {
  require_nonneg_tau(tau, "l21_shrink");
  Matrix out(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j) {
    const double norm = m.col(j).norm();
    if (norm > tau) {
      out.col(j) = m.col(j) * ((norm - tau) / norm);
    } else {
      out.col(j).setZero();
    }
  }
  return out;
}

double spectral_norm_sq(const Matrix& a) {
  if (a.size() == 0) {
    throw std::invalid_argument("spectral_norm_sq: empty matrix");
  }
  // Gram matrix on the smaller side.
  const Matrix b = a.cols() <= a.rows()
                       ? Matrix(a.transpose() * a)
                       : Matrix(a * a.transpose());
  if (b.rows() == 1) return b(0, 0);

  Vector v = Vector::Ones(b.rows()).normalized();
  double est = v.dot(b * v);
  constexpr int kMaxIter = 5000;
  for (int it = 0; it < kMaxIter; ++it) {
    Vector bv = b * v;
    const double norm = bv.norm();
    if (norm == 0.0) return 0.0;  // a is the zero matrix
    v = bv / norm;
    const double next = v.dot(b * v);
    // Rayleigh quotient is nondecreasing on a PSD Gram matrix.
    if (std::abs(next - est) <= 1e-13 * std::max(next, 1e-300)) {
      return next;
    }
    est = next;
  }
  // Slow spectral gap: fall back to a full decomposition.
  const Vector sv = singular_values(a);
  return sv(0) * sv(0);
}

}  // namespace lrs::prox
