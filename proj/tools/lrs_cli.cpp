// Command-line driver: build affinity graphs, run transductive labeling
// experiments, learn joint embeddings, sweep hyperparameters, and generate
// synthetic union-of-subspaces datasets.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include "lrs/embedding.hpp"
#include "lrs/experiment.hpp"
#include "lrs/graph.hpp"
#include "lrs/io.hpp"
#include "lrs/proximal.hpp"
#include "lrs/rng.hpp"
#include "lrs/ssl.hpp"
#include "lrs/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitTooManyFailures = 2;

struct DataArgs {
  std::string data_path;
  std::string labels_path;
  bool rows_are_samples = false;
};

void add_data_flags(CLI::App* cmd, DataArgs& args, bool labels_required) {
  cmd->add_option("--data", args.data_path, "Matrix CSV (comma-delimited)")
      ->required();
  auto* labels =
      cmd->add_option("--labels", args.labels_path, "Label CSV, one per line");
  if (labels_required) labels->required();
  cmd->add_flag("--rows-are-samples", args.rows_are_samples,
                "Treat CSV rows as samples instead of features");
}

void add_solver_flags(CLI::App* cmd, lrs::NnlrsConfig& cfg) {
  cmd->add_option("--solver.beta", cfg.beta, "Sparsity weight");
  cmd->add_option("--solver.lambda", cfg.lambda, "Noise weight");
  cmd->add_option("--solver.mu0", cfg.mu0, "Initial penalty");
  cmd->add_option("--solver.mu-max", cfg.mu_max, "Penalty cap");
  cmd->add_option("--solver.rho0", cfg.rho0, "Penalty growth factor");
  cmd->add_option("--solver.eps1", cfg.eps1, "Feasibility tolerance");
  cmd->add_option("--solver.eps2", cfg.eps2, "Variable-change tolerance");
  cmd->add_option("--solver.max-iter", cfg.max_iter, "Iteration cap");
  cmd->add_option("--solver.objective-history", cfg.objective_history,
                  "Record the objective every iteration (0/1)");
}

void add_ef_flags(CLI::App* cmd, lrs::EfConfig& cfg) {
  cmd->add_option("--ef.gamma", cfg.gamma, "Reconstruction weight");
  cmd->add_option("--ef.reduced-dim", cfg.reduced_dim, "Projection rows");
  cmd->add_option("--ef.eps3", cfg.eps3, "Outer-loop tolerance");
  cmd->add_option("--ef.outer-max", cfg.outer_max, "Outer iteration cap");
  cmd->add_option("--ef.inner-mu0", cfg.inner_mu0, "Inner initial penalty");
  cmd->add_option("--ef.inner-mu-max", cfg.inner_mu_max, "Inner penalty cap");
  cmd->add_option("--ef.inner-rho", cfg.inner_rho, "Inner penalty growth");
  cmd->add_option("--ef.inner-eps1", cfg.inner_eps1, "Inner feasibility tol");
  cmd->add_option("--ef.inner-eps2", cfg.inner_eps2, "Inner change tol");
  cmd->add_option("--ef.inner-max-iter", cfg.inner_max_iter,
                  "Inner iteration cap");
}

lrs::Dataset load_dataset(const DataArgs& args) {
  lrs::Dataset ds;
  ds.x = lrs::io::load_matrix(args.data_path,
                              args.rows_are_samples
                                  ? lrs::io::Orientation::RowsAreSamples
                                  : lrs::io::Orientation::ColumnsAreSamples);
  ds.labels = lrs::io::load_labels(args.labels_path);
  ds.name = std::filesystem::path(args.data_path).stem().string();
  int max_label = -1;
  for (int l : ds.labels) max_label = std::max(max_label, l);
  ds.class_count = max_label + 1;
  ds.validate();
  return ds;
}

bool approx(double a, double b, double tol = 1e-9) {
  return std::abs(a - b) <= tol;
}

// Built-in checks of the closed-form operators against hand-computed values
// and decomposition-based cross-checks.
int run_selftest() {
  using lrs::Matrix;
  int passed = 0, failed = 0;
  auto check = [&](const char* name, bool ok) {
    std::printf("%-44s %s\n", name, ok ? "PASS" : "FAIL");
    (ok ? passed : failed)++;
  };

  {
    Matrix m(1, 1);
    m << 1.2;
    check("soft_threshold shrinks toward zero",
          approx(lrs::prox::soft_threshold(m, 0.5)(0, 0), 0.7));
    m << -0.3;
    check("soft_threshold zeroes below threshold",
          approx(lrs::prox::soft_threshold(m, 0.5)(0, 0), 0.0));
    Matrix r(1, 2);
    r << -2.0, 3.0;
    const Matrix s = lrs::prox::soft_threshold(r, 1.0);
    check("soft_threshold keeps signs",
          approx(s(0, 0), -1.0) && approx(s(0, 1), 2.0));
  }
  {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    const Matrix t = lrs::prox::svt(d, 2.0);
    check("svt thresholds singular values",
          approx(t(0, 0), 1.0) && approx(t(1, 1), 0.0) &&
              approx(t(0, 1), 0.0) && approx(t(1, 0), 0.0));
    lrs::Rng rng(7);
    const Matrix m = rng.gaussian(4, 3);
    check("svt with zero threshold is identity",
          (lrs::prox::svt(m, 0.0) - m).cwiseAbs().maxCoeff() < 1e-10);
    const Matrix m2 = lrs::Rng(11).gaussian(5, 4);
    const lrs::Vector sv = lrs::singular_values(m2);
    const Matrix cut = lrs::prox::svt(m2, sv(1));
    const lrs::Vector sv_cut = lrs::singular_values(cut);
    bool ok = lrs::numerical_rank(cut) <= 1;
    for (lrs::Index i = 0; i < sv_cut.size(); ++i) {
      ok = ok && approx(sv_cut(i), std::max(sv(i) - sv(1), 0.0), 1e-9);
    }
    check("svt singular values match recomputation", ok);
  }
  {
    Matrix c(2, 1);
    c << 3.0, 4.0;
    const Matrix a = lrs::prox::l21_shrink(c, 1.0);
    check("l21_shrink rescales columns",
          approx(a(0, 0), 2.4) && approx(a(1, 0), 3.2));
    const Matrix b = lrs::prox::l21_shrink(c, 5.0);
    check("l21_shrink zeroes short columns",
          b(0, 0) == 0.0 && b(1, 0) == 0.0);
    const Matrix m = lrs::Rng(3).gaussian(3, 5);
    check("l21_shrink with zero threshold is identity",
          (lrs::prox::l21_shrink(m, 0.0) - m).cwiseAbs().maxCoeff() == 0.0);
  }
  {
    check("spectral norm of identity",
          approx(lrs::prox::spectral_norm_sq(Matrix::Identity(3, 3)), 1.0,
                 1e-9));
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = 1.0;
    check("spectral norm of diag(2,1)",
          approx(lrs::prox::spectral_norm_sq(d), 4.0, 1e-9));
    const Matrix m = lrs::Rng(19).gaussian(10, 8);
    const lrs::Vector sv = lrs::singular_values(m);
    const double want = sv(0) * sv(0);
    check("spectral norm matches full decomposition",
          std::abs(lrs::prox::spectral_norm_sq(m) - want) <= 1e-6 * want);
  }

  std::printf("%d passed, %d failed\n", passed, failed);
  return failed == 0 ? kExitOk : kExitUsage;
}

std::vector<std::string> seed_header(std::uint64_t seed) {
  return {"# seed=" + std::to_string(seed)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonnegative low-rank and sparse affinity graphs with "
               "graph-based transductive labeling"};
  app.require_subcommand(1);

  // ---- graph build ----------------------------------------------------
  auto* graph_cmd = app.add_subcommand("graph", "Graph construction");
  graph_cmd->require_subcommand(1);
  auto* graph_build = graph_cmd->add_subcommand(
      "build", "Build an affinity graph from a data matrix");
  DataArgs graph_data;
  graph_build->add_option("--data", graph_data.data_path, "Matrix CSV")
      ->required();
  graph_build->add_flag("--rows-are-samples", graph_data.rows_are_samples,
                        "Treat CSV rows as samples");
  std::string graph_method = "nnlrs";
  std::string graph_out;
  double theta = lrs::kDefaultTheta;
  std::uint64_t graph_seed = 0;
  lrs::NnlrsConfig graph_solver;
  lrs::EfConfig graph_ef;
  int knn_k = 5;
  double knn_sigma = 1.0;
  lrs::Index pca_dim = 100;
  graph_build->add_option("--method", graph_method,
                          "nnlrs | nnlrs-ef | pca+nnlrs | knn");
  graph_build->add_option("--out", graph_out, "Output graph file")->required();
  graph_build->add_option("--theta", theta, "Coefficient threshold");
  graph_build->add_option("--knn.k", knn_k, "Neighbor count");
  graph_build->add_option("--knn.sigma", knn_sigma, "Gaussian kernel width");
  graph_build->add_option("--pca.dim", pca_dim, "PCA dimension");
  graph_build->add_option("--seed", graph_seed, "Recorded in the output header");
  add_solver_flags(graph_build, graph_solver);
  add_ef_flags(graph_build, graph_ef);
  graph_build->set_config("--config", "", "Key=value config file");

  // ---- ssl run ---------------------------------------------------------
  auto* ssl_cmd = app.add_subcommand("ssl", "Transductive labeling");
  ssl_cmd->require_subcommand(1);
  auto* ssl_run = ssl_cmd->add_subcommand(
      "run", "Random-split labeling experiment over a dataset");
  DataArgs ssl_data;
  add_data_flags(ssl_run, ssl_data, true);
  lrs::ExperimentSpec ssl_spec;
  std::string ssl_method = "nnlrs";
  std::string ssl_prop = "lgc";
  std::string ssl_out_dir = ".";
  ssl_run->add_option("--method", ssl_method,
                      "nnlrs | nnlrs-ef | pca+nnlrs | knn");
  ssl_run->add_option("--propagation", ssl_prop, "ghf | lgc");
  ssl_run->add_option("--fractions", ssl_spec.label_fractions,
                      "Label fractions in (0,1)")
      ->delimiter(',');
  ssl_run->add_option("--trials", ssl_spec.trials, "Random trials per fraction");
  ssl_run->add_option("--seed", ssl_spec.seed, "Base seed");
  ssl_run->add_option("--samples-per-class", ssl_spec.samples_per_class,
                      "Per-trial subsample size (0 = all)");
  ssl_run->add_option("--theta", ssl_spec.theta, "Coefficient threshold");
  ssl_run->add_option("--knn.k", ssl_spec.knn_k, "Neighbor count");
  ssl_run->add_option("--knn.sigma", ssl_spec.knn_sigma, "Kernel width");
  ssl_run->add_option("--pca.dim", ssl_spec.pca_dim, "PCA dimension");
  ssl_run->add_option("--lgc.mu", ssl_spec.lgc_mu, "Fitness weight");
  ssl_run->add_option("--workers", ssl_spec.workers, "Parallel trial workers");
  ssl_run->add_option("--out-dir", ssl_out_dir, "Output directory");
  add_solver_flags(ssl_run, ssl_spec.solver);
  add_ef_flags(ssl_run, ssl_spec.ef);
  ssl_run->set_config("--config", "", "Key=value config file");

  // ---- ef run ----------------------------------------------------------
  auto* ef_cmd = app.add_subcommand("ef", "Joint embedding learning");
  ef_cmd->require_subcommand(1);
  auto* ef_run = ef_cmd->add_subcommand(
      "run", "Learn a projection and coefficients jointly");
  DataArgs ef_data;
  ef_run->add_option("--data", ef_data.data_path, "Matrix CSV")->required();
  ef_run->add_flag("--rows-are-samples", ef_data.rows_are_samples,
                   "Treat CSV rows as samples");
  lrs::NnlrsConfig ef_solver;
  lrs::EfConfig ef_cfg;
  std::string ef_out_p, ef_out_graph, ef_out_history;
  double ef_theta = lrs::kDefaultTheta;
  std::uint64_t ef_seed = 0;
  ef_run->add_option("--out-p", ef_out_p, "Output projection file")->required();
  ef_run->add_option("--out-graph", ef_out_graph, "Optional output graph");
  ef_run->add_option("--out-history", ef_out_history,
                     "Optional per-iteration objective CSV");
  ef_run->add_option("--theta", ef_theta, "Coefficient threshold");
  ef_run->add_option("--seed", ef_seed, "Recorded in the output header");
  add_solver_flags(ef_run, ef_solver);
  add_ef_flags(ef_run, ef_cfg);
  ef_run->set_config("--config", "", "Key=value config file");

  // ---- sweep beta --------------------------------------------------------
  auto* sweep_cmd = app.add_subcommand("sweep", "Hyperparameter sweeps");
  sweep_cmd->require_subcommand(1);
  auto* sweep_beta = sweep_cmd->add_subcommand(
      "beta", "Re-run the labeling experiment over a list of beta values");
  DataArgs sweep_data;
  add_data_flags(sweep_beta, sweep_data, true);
  lrs::ExperimentSpec sweep_spec;
  std::string sweep_method = "nnlrs";
  std::string sweep_prop = "lgc";
  std::string sweep_out_dir = ".";
  std::vector<double> sweep_betas = {0.0, 0.2, 100.0};
  sweep_beta->add_option("--betas", sweep_betas, "Beta values")->delimiter(',');
  sweep_beta->add_option("--method", sweep_method,
                         "nnlrs | nnlrs-ef | pca+nnlrs | knn");
  sweep_beta->add_option("--propagation", sweep_prop, "ghf | lgc");
  sweep_beta->add_option("--fractions", sweep_spec.label_fractions,
                         "Label fractions in (0,1)")
      ->delimiter(',');
  sweep_beta->add_option("--trials", sweep_spec.trials, "Trials per fraction");
  sweep_beta->add_option("--seed", sweep_spec.seed, "Base seed");
  sweep_beta->add_option("--samples-per-class", sweep_spec.samples_per_class,
                         "Per-trial subsample size (0 = all)");
  sweep_beta->add_option("--theta", sweep_spec.theta, "Coefficient threshold");
  sweep_beta->add_option("--workers", sweep_spec.workers, "Parallel workers");
  sweep_beta->add_option("--out-dir", sweep_out_dir, "Output directory");
  add_solver_flags(sweep_beta, sweep_spec.solver);
  sweep_beta->set_config("--config", "", "Key=value config file");

  // ---- selftest ops ------------------------------------------------------
  auto* selftest_cmd = app.add_subcommand("selftest", "Built-in checks");
  selftest_cmd->require_subcommand(1);
  auto* selftest_ops = selftest_cmd->add_subcommand(
      "ops", "Check the closed-form operators against known values");

  // ---- synth make ----------------------------------------------------------
  auto* synth_cmd = app.add_subcommand("synth", "Synthetic datasets");
  synth_cmd->require_subcommand(1);
  auto* synth_make = synth_cmd->add_subcommand(
      "make", "Generate a union-of-subspaces dataset");
  lrs::SynthOptions synth_opts;
  std::uint64_t synth_seed = 0;
  std::string synth_out_dir = ".";
  synth_make->add_option("--seed", synth_seed, "Generator seed");
  synth_make->add_option("--subspaces", synth_opts.subspace_count,
                         "Number of subspaces");
  synth_make->add_option("--subspace-dim", synth_opts.subspace_dim,
                         "Dimension of each subspace");
  synth_make->add_option("--ambient-dim", synth_opts.ambient_dim,
                         "Ambient dimension");
  synth_make->add_option("--per-subspace", synth_opts.samples_per_subspace,
                         "Samples per subspace");
  synth_make->add_option("--noise", synth_opts.noise_sigma,
                         "Gaussian noise level");
  synth_make->add_option("--corrupt-frac", synth_opts.corrupt_fraction,
                         "Fraction of columns replaced by noise");
  synth_make->add_option("--out-dir", synth_out_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (graph_build->parsed()) {
      const lrs::Matrix x = lrs::io::load_matrix(
          graph_data.data_path, graph_data.rows_are_samples
                                    ? lrs::io::Orientation::RowsAreSamples
                                    : lrs::io::Orientation::ColumnsAreSamples);
      std::vector<lrs::Index> zero_cols;
      lrs::normalize_samples(x, &zero_cols);
      for (lrs::Index j : zero_cols) {
        std::fprintf(stderr, "warning: zero-norm sample column %lld\n",
                     static_cast<long long>(j));
      }
      lrs::AffinityGraph g;
      const lrs::GraphMethod method = lrs::graph_method_from_string(graph_method);
      switch (method) {
        case lrs::GraphMethod::Nnlrs:
          g = lrs::build_nnlrs_graph(x, graph_solver, theta);
          break;
        case lrs::GraphMethod::Knn:
          g = lrs::knn_gaussian_graph(lrs::normalize_samples(x), knn_k,
                                      knn_sigma);
          break;
        case lrs::GraphMethod::PcaNnlrs: {
          const lrs::Matrix xn = lrs::normalize_samples(x);
          const lrs::Index k =
              std::min(pca_dim, std::min(xn.rows(), xn.cols()));
          g = lrs::build_nnlrs_graph(lrs::pca_embed(xn, k).second,
                                     graph_solver, theta);
          break;
        }
        case lrs::GraphMethod::NnlrsEf: {
          const lrs::Matrix xn = lrs::normalize_samples(x);
          lrs::EfConfig cfg = graph_ef;
          cfg.nnlrs = graph_solver;
          cfg.reduced_dim =
              std::min(cfg.reduced_dim, std::min(xn.rows(), xn.cols()));
          const lrs::EfSolution sol = lrs::solve_ef(xn, cfg);
          g = lrs::symmetrize(
              lrs::postprocess_coefficients(sol.z_star, theta));
          g.solver_converged = sol.converged;
          break;
        }
      }
      std::vector<std::string> comments = seed_header(graph_seed);
      comments.push_back("# method=" + graph_method +
                         " theta=" + lrs::io::format_value(theta) +
                         " converged=" + (g.solver_converged ? "1" : "0"));
      lrs::io::save_graph(graph_out, g, comments);
      if (!g.solver_converged) {
        std::fprintf(stderr, "warning: solver did not converge\n");
      }
      return kExitOk;
    }

    if (ssl_run->parsed()) {
      lrs::Dataset ds = load_dataset(ssl_data);
      ssl_spec.method = lrs::graph_method_from_string(ssl_method);
      ssl_spec.propagation = lrs::propagator_from_string(ssl_prop);
      ssl_spec.ef.nnlrs = ssl_spec.solver;
      const lrs::ResultTable table = lrs::run_experiment(ds, ssl_spec);
      std::filesystem::create_directories(ssl_out_dir);
      table.write_csv(ssl_out_dir + "/results.csv");
      table.write_text(ssl_out_dir + "/results.txt");
      std::fputs(table.render_text().c_str(), stdout);
      if (table.total_failed * 10 > table.total_trials) {
        std::fprintf(stderr, "error: %d of %d trials failed\n",
                     table.total_failed, table.total_trials);
        return kExitTooManyFailures;
      }
      return kExitOk;
    }

    if (ef_run->parsed()) {
      const lrs::Matrix x = lrs::io::load_matrix(
          ef_data.data_path, ef_data.rows_are_samples
                                 ? lrs::io::Orientation::RowsAreSamples
                                 : lrs::io::Orientation::ColumnsAreSamples);
      const lrs::Matrix xn = lrs::normalize_samples(x);
      ef_cfg.nnlrs = ef_solver;
      ef_cfg.reduced_dim =
          std::min(ef_cfg.reduced_dim, std::min(xn.rows(), xn.cols()));
      const lrs::EfSolution sol = lrs::solve_ef(xn, ef_cfg);
      std::vector<std::string> comments = seed_header(ef_seed);
      comments.push_back(
          "# gamma=" + lrs::io::format_value(ef_cfg.gamma) +
          " reduced_dim=" + std::to_string(ef_cfg.reduced_dim) +
          " outer_iterations=" + std::to_string(sol.outer_iterations) +
          " converged=" + (sol.converged ? "1" : "0"));
      lrs::io::save_projection(ef_out_p, sol.p_star, comments);
      if (!ef_out_graph.empty()) {
        lrs::AffinityGraph g = lrs::symmetrize(
            lrs::postprocess_coefficients(sol.z_star, ef_theta));
        g.solver_converged = sol.converged;
        lrs::io::save_graph(ef_out_graph, g, comments);
      }
      if (!ef_out_history.empty()) {
        lrs::Matrix hist(static_cast<lrs::Index>(sol.objective_history.size()),
                         1);
        for (lrs::Index i = 0; i < hist.rows(); ++i) {
          hist(i, 0) = sol.objective_history[static_cast<std::size_t>(i)];
        }
        lrs::io::save_matrix(ef_out_history, hist, comments);
      }
      if (!sol.converged) {
        std::fprintf(stderr, "warning: outer loop did not converge\n");
      }
      return kExitOk;
    }

    if (sweep_beta->parsed()) {
      lrs::Dataset ds = load_dataset(sweep_data);
      sweep_spec.method = lrs::graph_method_from_string(sweep_method);
      sweep_spec.propagation = lrs::propagator_from_string(sweep_prop);
      sweep_spec.ef.nnlrs = sweep_spec.solver;
      const lrs::ResultTable table =
          lrs::beta_sweep(ds, sweep_spec, sweep_betas);
      std::filesystem::create_directories(sweep_out_dir);
      table.write_csv(sweep_out_dir + "/results.csv");
      table.write_text(sweep_out_dir + "/results.txt");
      std::fputs(table.render_text().c_str(), stdout);
      if (table.total_failed * 10 > table.total_trials) {
        std::fprintf(stderr, "error: %d of %d trials failed\n",
                     table.total_failed, table.total_trials);
        return kExitTooManyFailures;
      }
      return kExitOk;
    }

    if (selftest_ops->parsed()) {
      return run_selftest();
    }

    if (synth_make->parsed()) {
      const lrs::SynthDataset ds =
          lrs::make_subspace_dataset(synth_seed, synth_opts);
      std::filesystem::create_directories(synth_out_dir);
      std::vector<std::string> comments = seed_header(synth_seed);
      std::string planted = "# corrupted=";
      for (std::size_t i = 0; i < ds.corrupted.size(); ++i) {
        if (i) planted += ';';
        planted += std::to_string(ds.corrupted[i]);
      }
      if (!ds.corrupted.empty()) comments.push_back(planted);
      lrs::io::save_matrix(synth_out_dir + "/X.csv", ds.x, comments);
      lrs::io::save_labels(synth_out_dir + "/labels.csv", ds.labels, comments);
      return kExitOk;
    }
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitUsage;
  }

  return kExitUsage;
}
