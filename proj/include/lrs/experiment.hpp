#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lrs/embedding.hpp"
#include "lrs/graph.hpp"
#include "lrs/matrix.hpp"
#include "lrs/ssl.hpp"

namespace lrs {

struct Dataset {
  Matrix x;  // d x n, samples as columns
  std::vector<int> labels;
  std::string name;
  Index class_count = 0;

  void validate() const;
};

enum class GraphMethod { Nnlrs, NnlrsEf, PcaNnlrs, Knn };
enum class Propagator { Ghf, Lgc };

std::string to_string(GraphMethod m);
std::string to_string(Propagator p);
GraphMethod graph_method_from_string(const std::string& s);
Propagator propagator_from_string(const std::string& s);

struct ExperimentSpec {
  GraphMethod method = GraphMethod::Nnlrs;
  Propagator propagation = Propagator::Lgc;
  std::vector<double> label_fractions = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  int trials = 50;
  std::uint64_t seed = 0;
  Index samples_per_class = 0;  // 0 = use every sample of each class
  double theta = kDefaultTheta;
  NnlrsConfig solver;
  EfConfig ef;
  Index pca_dim = 100;  // for the separate-embedding baseline
  int knn_k = 5;
  double knn_sigma = 1.0;
  double lgc_mu = 0.99;
  int workers = 1;

  void validate() const;
};

// Deterministic subsample and label split for one trial: a fixed function
// of (seed, trial_index). Per class: choose samples_per_class samples, then
// mark ceil(fraction * count) of them labeled (never less than one).
// Label sets nest across fractions for the same trial.
struct TrialSplit {
  std::vector<Index> sample_indices;  // into the dataset's columns
  std::vector<int> truth;             // labels of the subsample
  std::vector<Index> labeled;         // indices into the subsample
};
TrialSplit sample_trial(const Dataset& ds, const ExperimentSpec& spec,
                        double fraction, int trial_index);

struct ResultRow {
  double beta = 0.0;
  std::string method;
  std::string propagation;
  double fraction = 0.0;
  int trials = 0;
  double mean_error_pct = 0.0;
  double std_error_pct = 0.0;
  int nonconverged = 0;  // solver runs that hit the iteration cap
  int failed = 0;        // trials that raised an error
};

struct ResultTable {
  std::vector<ResultRow> rows;
  std::vector<std::string> header;  // '#' comment lines for the outputs
  int total_trials = 0;
  int total_failed = 0;

  void write_csv(const std::string& path) const;
  void write_text(const std::string& path) const;
  std::string render_text() const;
};

ResultTable run_experiment(const Dataset& ds, const ExperimentSpec& spec);

// One run_experiment per beta value, collected into a single table.
ResultTable beta_sweep(const Dataset& ds, const ExperimentSpec& spec,
                       const std::vector<double>& betas);

}  // namespace lrs
