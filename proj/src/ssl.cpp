#include "lrs/ssl.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace lrs {

namespace {

std::vector<int> argmax_rows(const Matrix& f) {
  std::vector<int> pred(f.rows());
  for (Index i = 0; i < f.rows(); ++i) {
    int best = 0;
    for (Index j = 1; j < f.cols(); ++j) {
      if (f(i, j) > f(i, best)) best = static_cast<int>(j);
    }
    pred[i] = best;
  }
  return pred;
}

// Symmetric solve with a residual contract of 1e-8 relative to the
// right-hand side; falls back to a pivoted factorization when the Cholesky
// route is too inaccurate.
Matrix solve_symmetric(const Matrix& system, const Matrix& rhs,
                       const char* context) {
  const double scale = std::max(1.0, rhs.norm());
  const auto ldlt = system.ldlt();
  Matrix f = ldlt.solve(rhs);
  if ((system * f - rhs).norm() <= 1e-8 * scale) return f;
  f = system.fullPivLu().solve(rhs);
  if ((system * f - rhs).norm() <= 1e-8 * scale) return f;
  throw std::runtime_error(std::string(context) +
                           ": linear solve residual above 1e-8 (rcond=" +
                           std::to_string(ldlt.rcond()) + ")");
}

// Connected components over nonzero edges; returns component id per node.
std::vector<int> components(const Matrix& w) {
  const Index n = w.rows();
  std::vector<int> comp(n, -1);
  int next = 0;
  std::vector<Index> stack;
  for (Index s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const Index u = stack.back();
      stack.pop_back();
      for (Index v = 0; v < n; ++v) {
        if (comp[v] == -1 && w(u, v) != 0.0) {
          comp[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return comp;
}

}  // namespace

LabelProblem LabelProblem::from_labels(const std::vector<int>& truth,
                                       const std::vector<Index>& labeled,
                                       Index classes) {
  LabelProblem prob;
  prob.classes = classes;
  prob.truth = truth;
  prob.labeled = labeled;
  std::sort(prob.labeled.begin(), prob.labeled.end());
  prob.y = Matrix::Zero(static_cast<Index>(truth.size()), classes);
  for (Index i : prob.labeled) {
    prob.y(i, truth[static_cast<std::size_t>(i)]) = 1.0;
  }
  prob.validate();
  return prob;
}

void LabelProblem::validate() const {
  const Index n = y.rows();
  if (classes < 1 || y.cols() != classes) {
    throw std::invalid_argument("LabelProblem: inconsistent class count");
  }
  if (static_cast<Index>(truth.size()) != n) {
    throw std::invalid_argument("LabelProblem: truth size mismatch");
  }
  for (int t : truth) {
    if (t < 0 || t >= classes) {
      throw std::invalid_argument("LabelProblem: label out of range");
    }
  }
  std::vector<bool> is_labeled(n, false);
  for (Index i : labeled) {
    if (i < 0 || i >= n) {
      throw std::invalid_argument("LabelProblem: labeled index out of range");
    }
    is_labeled[static_cast<std::size_t>(i)] = true;
  }
  for (Index i = 0; i < n; ++i) {
    const double row_sum = y.row(i).sum();
    const bool one_hot = row_sum == 1.0 && y.row(i).maxCoeff() == 1.0 &&
                         y.row(i).minCoeff() == 0.0;
    if (is_labeled[static_cast<std::size_t>(i)] ? !one_hot : row_sum != 0.0) {
      throw std::invalid_argument("LabelProblem: Y rows must be one-hot on "
                                  "labeled nodes and zero elsewhere");
    }
  }
}

Propagation ghf_propagate(const AffinityGraph& g, const LabelProblem& prob) {
  prob.validate();
  if (prob.labeled.empty()) {
    throw std::invalid_argument("ghf_propagate: labeled set is empty");
  }
  std::vector<bool> seen(prob.classes, false);
  for (Index i : prob.labeled) seen[prob.truth[static_cast<std::size_t>(i)]] = true;
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
    throw std::invalid_argument(
        "ghf_propagate: every class needs a labeled sample");
  }

  const Index n = g.w.rows();
  std::vector<bool> is_labeled(n, false);
  for (Index i : prob.labeled) is_labeled[static_cast<std::size_t>(i)] = true;
  std::vector<Index> unlabeled;
  for (Index i = 0; i < n; ++i) {
    if (!is_labeled[static_cast<std::size_t>(i)]) unlabeled.push_back(i);
  }

  Propagation out;
  out.f = prob.y;
  if (!unlabeled.empty()) {
    const Matrix l = laplacian(g);
    const Index nu = static_cast<Index>(unlabeled.size());
    Matrix l_uu(nu, nu);
    Matrix w_ul(nu, static_cast<Index>(prob.labeled.size()));
    for (Index a = 0; a < nu; ++a) {
      for (Index b = 0; b < nu; ++b) l_uu(a, b) = l(unlabeled[a], unlabeled[b]);
      for (std::size_t b = 0; b < prob.labeled.size(); ++b) {
        w_ul(a, static_cast<Index>(b)) = g.w(unlabeled[a], prob.labeled[b]);
      }
    }
    Matrix y_l(static_cast<Index>(prob.labeled.size()), prob.classes);
    for (std::size_t b = 0; b < prob.labeled.size(); ++b) {
      y_l.row(static_cast<Index>(b)) = prob.y.row(prob.labeled[b]);
    }

    // Components without a labeled node make L_uu singular.
    const std::vector<int> comp = components(g.w);
    std::vector<bool> comp_labeled(static_cast<std::size_t>(n), false);
    for (Index i : prob.labeled) comp_labeled[comp[static_cast<std::size_t>(i)]] = true;
    bool singular = false;
    for (Index i : unlabeled) {
      if (!comp_labeled[comp[static_cast<std::size_t>(i)]]) {
        out.flagged.push_back(i);
        singular = true;
      }
    }
    if (singular) l_uu.diagonal().array() += 1e-10;

    const Matrix f_u = solve_symmetric(l_uu, w_ul * y_l, "ghf_propagate");
    for (Index a = 0; a < nu; ++a) out.f.row(unlabeled[a]) = f_u.row(a);
  }
  out.predictions = argmax_rows(out.f);
  return out;
}

Propagation lgc_propagate(const AffinityGraph& g, const LabelProblem& prob,
                          double mu) {
  prob.validate();
  if (prob.labeled.empty()) {
    throw std::invalid_argument("lgc_propagate: labeled set is empty");
  }
  if (!(mu > 0.0)) {
    throw std::invalid_argument("lgc_propagate: mu must be positive");
  }
  Matrix system = normalized_laplacian(g);
  system.diagonal().array() += mu;

  Propagation out;
  out.f = solve_symmetric(system, mu * prob.y, "lgc_propagate");
  out.predictions = argmax_rows(out.f);
  return out;
}

double error_rate(const Propagation& p, const LabelProblem& prob,
                  const std::vector<Index>& eval) {
  if (eval.empty()) {
    throw std::invalid_argument("error_rate: evaluation set is empty");
  }
  int wrong = 0;
  for (Index i : eval) {
    if (p.predictions[static_cast<std::size_t>(i)] !=
        prob.truth[static_cast<std::size_t>(i)]) {
      ++wrong;
    }
  }
  return 100.0 * wrong / static_cast<double>(eval.size());
}

}  // namespace lrs
