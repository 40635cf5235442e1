#include "lrs/minimize.hpp"

#include <cmath>
#include <deque>
#include <vector>

namespace lrs::optim {

namespace {

double dot(const Matrix& a, const Matrix& b) {
  return (a.array() * b.array()).sum();
}

struct Pair {
  Matrix s, y;
  double rho;
};

// Two-loop recursion with gamma scaling from the most recent pair.
Matrix lbfgs_direction(const std::deque<Pair>& pairs, const Matrix& grad) {
  Matrix q = grad;
  std::vector<double> alpha(pairs.size());
  for (std::size_t i = pairs.size(); i-- > 0;) {
    alpha[i] = pairs[i].rho * dot(pairs[i].s, q);
    q -= alpha[i] * pairs[i].y;
  }
  if (!pairs.empty()) {
    const Pair& last = pairs.back();
    q *= dot(last.s, last.y) / dot(last.y, last.y);
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double beta = pairs[i].rho * dot(pairs[i].y, q);
    q += (alpha[i] - beta) * pairs[i].s;
  }
  return -q;
}

}  // namespace

MinimizeResult minimize(const Objective& f, Matrix x0,
                        const MinimizeOptions& opts) {
  constexpr double kArmijo = 1e-4;

  MinimizeResult best;
  Matrix grad(x0.rows(), x0.cols());
  double value = f(x0, &grad);
  Matrix x = std::move(x0);

  best.x = x;
  best.value = value;
  best.grad_norm = grad.norm();

  // Tolerance is relative to the entry gradient, so warm starts return
  // quickly instead of spending the whole iteration budget.
  const double gscale = std::max(1.0, grad.norm());

  std::deque<Pair> pairs;
  for (int it = 0; it < opts.max_iter; ++it) {
    const double gnorm = grad.norm();
    if (gnorm <= opts.grad_tol * std::max(gscale, x.norm())) {
      best.converged = true;
      break;
    }

    Matrix dir = lbfgs_direction(pairs, grad);
    double slope = dot(grad, dir);
    if (!(slope < 0.0) || !all_finite(dir)) {
      // Curvature information went bad; restart from steepest descent.
      pairs.clear();
      dir = -grad;
      slope = -gnorm * gnorm;
    }

    // Backtracking to sufficient decrease.
    double step = pairs.empty() ? 1.0 / std::max(1.0, gnorm) : 1.0;
    bool accepted = false;
    Matrix x_next, grad_next(x.rows(), x.cols());
    double value_next = 0.0;
    for (int ls = 0; ls < opts.max_line_search; ++ls) {
      x_next = x + step * dir;
      value_next = f(x_next, &grad_next);
      if (std::isfinite(value_next) &&
          value_next <= value + kArmijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    Pair pair{x_next - x, grad_next - grad, 0.0};
    const double sy = dot(pair.s, pair.y);
    if (sy > 1e-12 * pair.s.norm() * pair.y.norm()) {
      pair.rho = 1.0 / sy;
      pairs.push_back(std::move(pair));
      if (static_cast<int>(pairs.size()) > opts.memory) pairs.pop_front();
    }

    x = std::move(x_next);
    grad = std::move(grad_next);
    value = value_next;
    ++best.iterations;

    if (value < best.value) {
      best.value = value;
      best.x = x;
      best.grad_norm = grad.norm();
      best.made_progress = true;
    }
  }

  if (!best.converged) {
    best.grad_norm = grad.norm();
    if (grad.norm() <= opts.grad_tol * std::max(gscale, x.norm())) {
      best.converged = true;
    }
  }
  return best;
}

}  // namespace lrs::optim
