#include "lrs/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "lrs/io.hpp"
#include "lrs/rng.hpp"

namespace lrs {

void Dataset::validate() const {
  if (x.cols() < 2) throw std::invalid_argument("dataset: need n >= 2");
  if (static_cast<Index>(labels.size()) != x.cols()) {
    throw std::invalid_argument("dataset: label count must match samples");
  }
  if (class_count < 1) throw std::invalid_argument("dataset: class_count >= 1");
  for (int l : labels) {
    if (l < 0 || l >= class_count) {
      throw std::invalid_argument("dataset: label out of range");
    }
  }
}

void ExperimentSpec::validate() const {
  if (trials < 1) throw std::invalid_argument("spec: trials >= 1");
  if (label_fractions.empty()) {
    throw std::invalid_argument("spec: need at least one label fraction");
  }
  for (double f : label_fractions) {
    if (!(f > 0.0 && f < 1.0)) {
      throw std::invalid_argument("spec: fractions must lie in (0, 1)");
    }
  }
  if (workers < 1) throw std::invalid_argument("spec: workers >= 1");
  solver.validate();
}

std::string to_string(GraphMethod m) {
  switch (m) {
    case GraphMethod::Nnlrs: return "nnlrs";
    case GraphMethod::NnlrsEf: return "nnlrs-ef";
    case GraphMethod::PcaNnlrs: return "pca+nnlrs";
    case GraphMethod::Knn: return "knn";
  }
  return "?";
}

std::string to_string(Propagator p) {
  return p == Propagator::Ghf ? "ghf" : "lgc";
}

GraphMethod graph_method_from_string(const std::string& s) {
  if (s == "nnlrs") return GraphMethod::Nnlrs;
  if (s == "nnlrs-ef") return GraphMethod::NnlrsEf;
  if (s == "pca+nnlrs") return GraphMethod::PcaNnlrs;
  if (s == "knn") return GraphMethod::Knn;
  throw std::invalid_argument("unknown graph method: " + s);
}

Propagator propagator_from_string(const std::string& s) {
  if (s == "ghf") return Propagator::Ghf;
  if (s == "lgc") return Propagator::Lgc;
  throw std::invalid_argument("unknown propagation method: " + s);
}

TrialSplit sample_trial(const Dataset& ds, const ExperimentSpec& spec,
                        double fraction, int trial_index) {
  ds.validate();
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("sample_trial: fraction must be in (0, 1]");
  }

  std::vector<std::vector<Index>> by_class(
      static_cast<std::size_t>(ds.class_count));
  for (Index j = 0; j < ds.x.cols(); ++j) {
    by_class[static_cast<std::size_t>(ds.labels[static_cast<std::size_t>(j)])]
        .push_back(j);
  }

  Rng rng = Rng::substream(spec.seed, 0x747269616cULL + // "trial"
                                          static_cast<std::uint64_t>(trial_index));
  TrialSplit split;
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    const auto& pool = by_class[c];
    const Index want =
        spec.samples_per_class > 0 ? spec.samples_per_class
                                   : static_cast<Index>(pool.size());
    if (static_cast<Index>(pool.size()) < want || pool.empty()) {
      throw std::invalid_argument(
          "sample_trial: class " + std::to_string(c) + " has " +
          std::to_string(pool.size()) + " samples, needs " +
          std::to_string(want));
    }
    // One shuffle serves both the subsample and the nested label prefix.
    const std::vector<std::size_t> perm = rng.permutation(pool.size());
    const Index labeled_count = std::max<Index>(
        1, static_cast<Index>(
               std::ceil(fraction * static_cast<double>(want))));
    for (Index i = 0; i < want; ++i) {
      const Index dataset_col = pool[perm[static_cast<std::size_t>(i)]];
      const Index local = static_cast<Index>(split.sample_indices.size());
      split.sample_indices.push_back(dataset_col);
      split.truth.push_back(static_cast<int>(c));
      if (i < std::min(labeled_count, want)) split.labeled.push_back(local);
    }
  }
  return split;
}

namespace {

struct TrialOutcome {
  bool ok = false;
  bool solver_converged = true;
  double error_pct = 0.0;
  std::string error_message;
};

Matrix subsample_columns(const Matrix& x, const std::vector<Index>& cols) {
  Matrix out(x.rows(), static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    out.col(static_cast<Index>(j)) = x.col(cols[j]);
  }
  return out;
}

AffinityGraph build_graph(const Matrix& x_sub, const ExperimentSpec& spec) {
  switch (spec.method) {
    case GraphMethod::Nnlrs:
      return build_nnlrs_graph(x_sub, spec.solver, spec.theta);
    case GraphMethod::Knn:
      return knn_gaussian_graph(normalize_samples(x_sub), spec.knn_k,
                                spec.knn_sigma);
    case GraphMethod::PcaNnlrs: {
      const Matrix xn = normalize_samples(x_sub);
      const Index k =
          std::min(spec.pca_dim, std::min(xn.rows(), xn.cols()));
      return build_nnlrs_graph(pca_embed(xn, k).second, spec.solver,
                               spec.theta);
    }
    case GraphMethod::NnlrsEf: {
      const Matrix xn = normalize_samples(x_sub);
      EfConfig cfg = spec.ef;
      cfg.nnlrs = spec.solver;
      cfg.reduced_dim = std::min(spec.ef.reduced_dim,
                                 std::min(xn.rows(), xn.cols()));
      const EfSolution sol = solve_ef(xn, cfg);
      AffinityGraph g =
          symmetrize(postprocess_coefficients(sol.z_star, spec.theta));
      g.solver_converged = sol.converged;
      return g;
    }
  }
  throw std::logic_error("unreachable graph method");
}

TrialOutcome run_trial(const Dataset& ds, const ExperimentSpec& spec,
                       double fraction, int trial_index) {
  TrialOutcome outcome;
  try {
    const TrialSplit split = sample_trial(ds, spec, fraction, trial_index);
    const Matrix x_sub = subsample_columns(ds.x, split.sample_indices);
    const AffinityGraph graph = build_graph(x_sub, spec);
    outcome.solver_converged = graph.solver_converged;

    const LabelProblem prob =
        LabelProblem::from_labels(split.truth, split.labeled, ds.class_count);
    const Propagation prop =
        spec.propagation == Propagator::Ghf
            ? ghf_propagate(graph, prob)
            : lgc_propagate(graph, prob, spec.lgc_mu);

    std::vector<Index> eval;
    std::vector<bool> is_labeled(split.truth.size(), false);
    for (Index i : split.labeled) is_labeled[static_cast<std::size_t>(i)] = true;
    for (std::size_t i = 0; i < split.truth.size(); ++i) {
      if (!is_labeled[i]) eval.push_back(static_cast<Index>(i));
    }
    if (eval.empty()) {
      throw std::invalid_argument("trial: no unlabeled nodes to evaluate");
    }
    outcome.error_pct = error_rate(prop, prob, eval);
    outcome.ok = true;
  } catch (const std::exception& err) {
    outcome.error_message = err.what();
  }
  return outcome;
}

}  // namespace

ResultTable run_experiment(const Dataset& ds, const ExperimentSpec& spec) {
  ds.validate();
  spec.validate();

  struct Task {
    double fraction;
    int trial;
  };
  std::vector<Task> tasks;
  for (double f : spec.label_fractions) {
    for (int t = 0; t < spec.trials; ++t) tasks.push_back({f, t});
  }

  std::vector<TrialOutcome> outcomes(tasks.size());
  const int workers =
      std::min<int>(spec.workers, static_cast<int>(tasks.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      outcomes[i] = run_trial(ds, spec, tasks[i].fraction, tasks[i].trial);
    }
  } else {
    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
      for (std::size_t i = cursor.fetch_add(1); i < tasks.size();
           i = cursor.fetch_add(1)) {
        outcomes[i] = run_trial(ds, spec, tasks[i].fraction, tasks[i].trial);
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  ResultTable table;
  table.header.push_back("# lrs-results v1");
  table.header.push_back(
      "# dataset=" + (ds.name.empty() ? std::string("unnamed") : ds.name) +
      " method=" + to_string(spec.method) +
      " propagation=" + to_string(spec.propagation) +
      " seed=" + std::to_string(spec.seed) +
      " trials=" + std::to_string(spec.trials) +
      " beta=" + io::format_value(spec.solver.beta) +
      " lambda=" + io::format_value(spec.solver.lambda));

  std::size_t cursor = 0;
  for (double f : spec.label_fractions) {
    ResultRow row;
    row.beta = spec.solver.beta;
    row.method = to_string(spec.method);
    row.propagation = to_string(spec.propagation);
    row.fraction = f;
    row.trials = spec.trials;

    std::vector<double> errors;
    for (int t = 0; t < spec.trials; ++t, ++cursor) {
      const TrialOutcome& o = outcomes[cursor];
      if (o.ok) {
        errors.push_back(o.error_pct);
        if (!o.solver_converged) ++row.nonconverged;
      } else {
        ++row.failed;
      }
    }
    table.total_trials += spec.trials;
    table.total_failed += row.failed;

    if (!errors.empty()) {
      double mean = 0.0;
      for (double e : errors) mean += e;
      mean /= static_cast<double>(errors.size());
      double var = 0.0;
      for (double e : errors) var += (e - mean) * (e - mean);
      row.mean_error_pct = mean;
      row.std_error_pct =
          errors.size() > 1
              ? std::sqrt(var / static_cast<double>(errors.size() - 1))
              : 0.0;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

ResultTable beta_sweep(const Dataset& ds, const ExperimentSpec& spec,
                       const std::vector<double>& betas) {
  if (betas.empty()) throw std::invalid_argument("beta_sweep: no beta values");
  ResultTable table;
  for (double beta : betas) {
    ExperimentSpec s = spec;
    s.solver.beta = beta;
    s.ef.nnlrs.beta = beta;
    ResultTable part = run_experiment(ds, s);
    if (table.header.empty()) {
      table.header.push_back("# lrs-results v1");
      table.header.push_back(
          "# sweep=beta dataset=" +
          (ds.name.empty() ? std::string("unnamed") : ds.name) +
          " method=" + to_string(spec.method) +
          " propagation=" + to_string(spec.propagation) +
          " seed=" + std::to_string(spec.seed) +
          " trials=" + std::to_string(spec.trials) +
          " lambda=" + io::format_value(spec.solver.lambda));
    }
    table.rows.insert(table.rows.end(), part.rows.begin(), part.rows.end());
    table.total_trials += part.total_trials;
    table.total_failed += part.total_failed;
  }
  return table;
}

void ResultTable::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw io::ParseError(path + ": cannot open for writing");
  for (const std::string& line : header) out << line << '\n';
  out << "beta,method,propagation,fraction,trials,mean_error_pct,"
         "std_error_pct,nonconverged,failed\n";
  for (const ResultRow& r : rows) {
    out << io::format_value(r.beta) << ',' << r.method << ',' << r.propagation
        << ',' << io::format_value(r.fraction) << ',' << r.trials << ','
        << io::format_value(r.mean_error_pct) << ','
        << io::format_value(r.std_error_pct) << ',' << r.nonconverged << ','
        << r.failed << '\n';
  }
  if (!out) throw io::ParseError(path + ": write failed");
}

std::string ResultTable::render_text() const {
  std::ostringstream out;
  for (const std::string& line : header) out << line << '\n';
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-8s %-10s %-5s %9s %7s %12s %11s %8s %7s\n",
                "beta", "method", "prop", "fraction", "trials", "mean_err_%",
                "std_err_%", "noncvg", "failed");
  out << buf;
  for (const ResultRow& r : rows) {
    std::snprintf(buf, sizeof(buf),
                  "%-8.4g %-10s %-5s %9.3g %7d %12.4f %11.4f %8d %7d\n",
                  r.beta, r.method.c_str(), r.propagation.c_str(), r.fraction,
                  r.trials, r.mean_error_pct, r.std_error_pct, r.nonconverged,
                  r.failed);
    out << buf;
  }
  return out.str();
}

void ResultTable::write_text(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw io::ParseError(path + ": cannot open for writing");
  out << render_text();
  if (!out) throw io::ParseError(path + ": write failed");
}

}  // namespace lrs
