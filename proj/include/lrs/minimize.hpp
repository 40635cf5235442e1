#pragma once

#include <functional>

#include "lrs/matrix.hpp"

namespace lrs::optim {

struct MinimizeOptions {
  int max_iter = 200;
  // Stop when ||grad||_F falls below grad_tol relative to the larger of the
  // entry gradient norm and ||x||_F.
  double grad_tol = 1e-6;
  int memory = 8;            // curvature pairs kept
  int max_line_search = 40;  // backtracking steps per iteration
};

struct MinimizeResult {
  Matrix x;
  double value = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;    // gradient tolerance reached
  bool made_progress = false;  // objective strictly decreased at least once
};

// f(x, grad) returns the objective and fills grad when non-null.
using Objective = std::function<double(const Matrix&, Matrix* grad)>;

// Limited-memory BFGS over matrix variables with Frobenius inner products
// and Armijo backtracking. Monotone: every accepted step decreases the
// objective, and the best iterate seen is returned.
MinimizeResult minimize(const Objective& f, Matrix x0,
                        const MinimizeOptions& opts = {});

}  // namespace lrs::optim
