#pragma once

#include <vector>

#include "lrs/graph.hpp"
#include "lrs/matrix.hpp"

namespace lrs {

// Transductive labeling problem over n graph nodes and c classes. Y has
// one-hot rows for labeled nodes and zero rows otherwise; truth carries the
// full ground-truth labels for evaluation only.
struct LabelProblem {
  Matrix y;
  std::vector<Index> labeled;
  Index classes = 0;
  std::vector<int> truth;

  static LabelProblem from_labels(const std::vector<int>& truth,
                                  const std::vector<Index>& labeled,
                                  Index classes);
  void validate() const;
};

struct Propagation {
  Matrix f;
  std::vector<int> predictions;   // row argmax, lowest class index on ties
  std::vector<Index> flagged;     // nodes with no labeled attachment
};

// Harmonic propagation: labeled scores clamped to Y, unlabeled scores solve
// L_uu F_u = W_ul Y_l. Unlabeled components with no labeled node are
// regularized (+1e-10 I) and reported through `flagged`.
Propagation ghf_propagate(const AffinityGraph& g, const LabelProblem& prob);

// Elastic propagation: F solves (Lnorm + mu I) F = mu Y.
Propagation lgc_propagate(const AffinityGraph& g, const LabelProblem& prob,
                          double mu = 0.99);

// Percent of misclassified nodes among `eval`.
double error_rate(const Propagation& p, const LabelProblem& prob,
                  const std::vector<Index>& eval);

}  // namespace lrs
