#include "oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace oracle {

namespace {

using lrs::Index;
using lrs::Matrix;
using lrs::Vector;

Matrix local_svt(const Matrix& m, double tau) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Vector s = svd.singularValues();
  for (Index i = 0; i < s.size(); ++i) s(i) = std::max(s(i) - tau, 0.0);
  return svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();
}

Matrix local_soft(const Matrix& m, double tau) {
  Matrix out = m;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      const double v = m(i, j);
      const double mag = std::abs(v) - tau;
      out(i, j) = mag > 0.0 ? (v > 0.0 ? mag : -mag) : 0.0;
    }
  }
  return out;
}

Matrix local_l21(const Matrix& m, double tau) {
  Matrix out = m;
  for (Index j = 0; j < m.cols(); ++j) {
    const double norm = m.col(j).norm();
    if (norm > tau) {
      out.col(j) *= (norm - tau) / norm;
    } else {
      out.col(j).setZero();
    }
  }
  return out;
}

double local_objective(const Matrix& z, const Matrix& e, double beta,
                       double lambda) {
  Eigen::JacobiSVD<Matrix> svd(z);
  double obj = svd.singularValues().sum() + beta * z.cwiseAbs().sum();
  for (Index j = 0; j < e.cols(); ++j) obj += lambda * e.col(j).norm();
  return obj;
}

}  // namespace

ReferenceSolution reference_nnlrs(const Matrix& x, const Matrix& a,
                                  double beta, double lambda, double tol,
                                  int max_iter) {
  const Index m = a.cols();
  const Index n = x.cols();

  // Copies: z1 carries the nuclear term, z2 the entrywise l1 term, z3 the
  // nonnegativity, t the column-sparse residual t = x - a z.
  Matrix z = Matrix::Zero(m, n);
  Matrix z1 = z, z2 = z, z3 = z;
  Matrix t = Matrix::Zero(x.rows(), n);
  Matrix u1 = z, u2 = z, u3 = z;
  Matrix u4 = Matrix::Zero(x.rows(), n);

  double c = 1.0;
  const double scale = std::max(1.0, x.norm());
  Eigen::LDLT<Matrix> coupling(
      (3.0 * Matrix::Identity(m, m) + a.transpose() * a).eval());

  ReferenceSolution out;
  int adaptations = 0;
  for (int k = 0; k < max_iter; ++k) {
    z1 = local_svt(z - u1, 1.0 / c);
    z2 = local_soft(z - u2, beta / c);
    z3 = (z - u3).cwiseMax(0.0);
    t = local_l21(x - a * z - u4, lambda / c);

    const Matrix z_prev = z;
    z = coupling.solve((z1 + u1) + (z2 + u2) + (z3 + u3) +
                       a.transpose() * (x - t - u4));

    u1 += z1 - z;
    u2 += z2 - z;
    u3 += z3 - z;
    u4 += t + a * z - x;

    const double primal =
        std::sqrt((z1 - z).squaredNorm() + (z2 - z).squaredNorm() +
                  (z3 - z).squaredNorm() + (t + a * z - x).squaredNorm());
    const double dual = c * (z - z_prev).norm();
    out.iterations = k + 1;
    if (primal <= tol * scale && dual <= tol * scale) {
      out.converged = true;
      break;
    }

    if ((k + 1) % 50 == 0 && adaptations < 200) {
      if (primal > 10.0 * dual) {
        c *= 2.0;
        u1 /= 2.0; u2 /= 2.0; u3 /= 2.0; u4 /= 2.0;
        ++adaptations;
      } else if (dual > 10.0 * primal) {
        c /= 2.0;
        u1 *= 2.0; u2 *= 2.0; u3 *= 2.0; u4 *= 2.0;
        ++adaptations;
      }
    }
  }

  out.z = z3;  // exactly nonnegative copy
  out.e = x - a * z3;
  out.objective = local_objective(out.z, out.e, beta, lambda);
  return out;
}

Matrix fd_gradient(const std::function<double(const Matrix&)>& f,
                   const Matrix& p, double h) {
  Matrix g(p.rows(), p.cols());
  for (Index j = 0; j < p.cols(); ++j) {
    for (Index i = 0; i < p.rows(); ++i) {
      const double step = h * std::max(1.0, std::abs(p(i, j)));
      Matrix plus = p, minus = p;
      plus(i, j) += step;
      minus(i, j) -= step;
      g(i, j) = (f(plus) - f(minus)) / (2.0 * step);
    }
  }
  return g;
}

double nearest_labeled_error(const Matrix& x, const std::vector<int>& truth,
                             const std::vector<Index>& labeled) {
  std::vector<bool> is_labeled(truth.size(), false);
  for (Index i : labeled) is_labeled[static_cast<std::size_t>(i)] = true;
  int wrong = 0, total = 0;
  for (Index i = 0; i < x.cols(); ++i) {
    if (is_labeled[static_cast<std::size_t>(i)]) continue;
    double best = std::numeric_limits<double>::infinity();
    int pred = -1;
    for (Index j : labeled) {
      const double d = (x.col(i) - x.col(j)).squaredNorm();
      if (d < best) {
        best = d;
        pred = truth[static_cast<std::size_t>(j)];
      }
    }
    ++total;
    if (pred != truth[static_cast<std::size_t>(i)]) ++wrong;
  }
  return total > 0 ? 100.0 * wrong / total : 0.0;
}

}  // namespace oracle
