#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lrs/embedding.hpp"
#include "lrs/experiment.hpp"
#include "lrs/graph.hpp"
#include "lrs/proximal.hpp"
#include "lrs/solver.hpp"
#include "lrs/ssl.hpp"
#include "lrs/synth.hpp"

namespace py = pybind11;

namespace {

lrs::NnlrsConfig make_config(double beta, double lambda, double mu0,
                             double mu_max, double rho0, double eps1,
                             double eps2, int max_iter,
                             bool objective_history) {
  lrs::NnlrsConfig cfg;
  cfg.beta = beta;
  cfg.lambda = lambda;
  cfg.mu0 = mu0;
  cfg.mu_max = mu_max;
  cfg.rho0 = rho0;
  cfg.eps1 = eps1;
  cfg.eps2 = eps2;
  cfg.max_iter = max_iter;
  cfg.objective_history = objective_history;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Nonnegative low-rank and sparse affinity graphs";

  py::class_<lrs::NnlrsConfig>(m, "SolverConfig")
      .def(py::init(&make_config), py::arg("beta") = 0.2,
           py::arg("lambda_") = 10.0, py::arg("mu0") = 0.1,
           py::arg("mu_max") = 1e10, py::arg("rho0") = 1.1,
           py::arg("eps1") = 1e-6, py::arg("eps2") = 1e-2,
           py::arg("max_iter") = 1000, py::arg("objective_history") = true)
      .def_readwrite("beta", &lrs::NnlrsConfig::beta)
      .def_readwrite("lambda_", &lrs::NnlrsConfig::lambda)
      .def_readwrite("mu0", &lrs::NnlrsConfig::mu0)
      .def_readwrite("mu_max", &lrs::NnlrsConfig::mu_max)
      .def_readwrite("rho0", &lrs::NnlrsConfig::rho0)
      .def_readwrite("eps1", &lrs::NnlrsConfig::eps1)
      .def_readwrite("eps2", &lrs::NnlrsConfig::eps2)
      .def_readwrite("max_iter", &lrs::NnlrsConfig::max_iter)
      .def_readwrite("objective_history", &lrs::NnlrsConfig::objective_history);

  py::class_<lrs::NnlrsSolution>(m, "Solution")
      .def_readonly("z", &lrs::NnlrsSolution::z_star)
      .def_readonly("h", &lrs::NnlrsSolution::h_star)
      .def_readonly("e", &lrs::NnlrsSolution::e_star)
      .def_readonly("iterations", &lrs::NnlrsSolution::iterations)
      .def_readonly("converged", &lrs::NnlrsSolution::converged)
      .def_readonly("objective_history", &lrs::NnlrsSolution::objective_history);

  m.def("soft_threshold", &lrs::prox::soft_threshold, py::arg("m"),
        py::arg("tau"));
  m.def("svt", &lrs::prox::svt, py::arg("m"), py::arg("tau"));
  m.def("l21_shrink", &lrs::prox::l21_shrink, py::arg("m"), py::arg("tau"));
  m.def("spectral_norm_sq", &lrs::prox::spectral_norm_sq, py::arg("a"));

  m.def("solve", &lrs::solve_nnlrs, py::arg("x"), py::arg("a"),
        py::arg("config") = lrs::NnlrsConfig{},
        "Solve min ||Z||_* + beta ||Z||_1 + lambda ||E||_{2,1} "
        "s.t. X = A Z + E, Z >= 0.");
  m.def("objective", &lrs::nnlrs_objective, py::arg("z"), py::arg("e"),
        py::arg("config") = lrs::NnlrsConfig{});

  m.def("normalize_samples",
        [](const lrs::Matrix& x) { return lrs::normalize_samples(x); },
        py::arg("x"));
  m.def(
      "build_graph",
      [](const lrs::Matrix& x, const lrs::NnlrsConfig& cfg, double theta) {
        lrs::NnlrsSolution sol;
        lrs::AffinityGraph g = lrs::build_nnlrs_graph(x, cfg, theta, &sol);
        return py::make_tuple(g.w, sol.converged);
      },
      py::arg("x"), py::arg("config") = lrs::NnlrsConfig{},
      py::arg("theta") = lrs::kDefaultTheta,
      "Affinity matrix from normalized data with itself as dictionary; "
      "returns (W, converged).");
  m.def(
      "knn_graph",
      [](const lrs::Matrix& x, int k, double sigma) {
        return lrs::knn_gaussian_graph(x, k, sigma).w;
      },
      py::arg("x"), py::arg("k") = 5, py::arg("sigma") = 1.0);
  m.def(
      "laplacian",
      [](const lrs::Matrix& w, bool normalized) {
        lrs::AffinityGraph g;
        g.w = w;
        return normalized ? lrs::normalized_laplacian(g) : lrs::laplacian(g);
      },
      py::arg("w"), py::arg("normalized") = false);

  m.def(
      "propagate",
      [](const lrs::Matrix& w, const std::vector<int>& truth,
         const std::vector<lrs::Index>& labeled, lrs::Index classes,
         const std::string& method, double mu) {
        lrs::AffinityGraph g;
        g.w = w;
        const lrs::LabelProblem prob =
            lrs::LabelProblem::from_labels(truth, labeled, classes);
        const lrs::Propagation p = method == "ghf"
                                       ? lrs::ghf_propagate(g, prob)
                                       : lrs::lgc_propagate(g, prob, mu);
        return py::make_tuple(p.f, p.predictions);
      },
      py::arg("w"), py::arg("labels"), py::arg("labeled"), py::arg("classes"),
      py::arg("method") = "lgc", py::arg("mu") = 0.99,
      "Graph label propagation; returns (scores, predictions).");

  m.def(
      "pca_embed",
      [](const lrs::Matrix& x, lrs::Index k) {
        auto [p, px] = lrs::pca_embed(x, k);
        return py::make_tuple(p, px);
      },
      py::arg("x"), py::arg("k"));
  m.def(
      "solve_ef",
      [](const lrs::Matrix& x, const lrs::NnlrsConfig& solver, double gamma,
         lrs::Index reduced_dim, double eps3, int outer_max) {
        lrs::EfConfig cfg;
        cfg.nnlrs = solver;
        cfg.gamma = gamma;
        cfg.reduced_dim = reduced_dim;
        cfg.eps3 = eps3;
        cfg.outer_max = outer_max;
        const lrs::EfSolution sol = lrs::solve_ef(x, cfg);
        return py::make_tuple(sol.z_star, sol.p_star, sol.e_star,
                              sol.objective_history, sol.converged);
      },
      py::arg("x"), py::arg("solver") = lrs::NnlrsConfig{},
      py::arg("gamma") = 1.0, py::arg("reduced_dim") = 100,
      py::arg("eps3") = 1e-4, py::arg("outer_max") = 30,
      "Jointly learn a projection and coefficients; returns "
      "(Z, P, E, objective_history, converged).");

  m.def(
      "make_subspace_dataset",
      [](std::uint64_t seed, int subspaces, lrs::Index subspace_dim,
         lrs::Index ambient_dim, lrs::Index per_subspace, double noise,
         double corrupt_fraction) {
        lrs::SynthOptions opts;
        opts.subspace_count = subspaces;
        opts.subspace_dim = subspace_dim;
        opts.ambient_dim = ambient_dim;
        opts.samples_per_subspace = per_subspace;
        opts.noise_sigma = noise;
        opts.corrupt_fraction = corrupt_fraction;
        const lrs::SynthDataset ds = lrs::make_subspace_dataset(seed, opts);
        return py::make_tuple(ds.x, ds.labels, ds.corrupted);
      },
      py::arg("seed") = 0, py::arg("subspaces") = 3,
      py::arg("subspace_dim") = 2, py::arg("ambient_dim") = 20,
      py::arg("per_subspace") = 15, py::arg("noise") = 0.0,
      py::arg("corrupt_fraction") = 0.0,
      "Union-of-subspaces sample; returns (X, labels, corrupted_columns).");

  m.def("block_mass_fraction", &lrs::block_mass_fraction, py::arg("w"),
        py::arg("labels"));
}
