#include <doctest.h>

#include <cmath>

#include "lrs/graph.hpp"
#include "lrs/rng.hpp"
#include "lrs/ssl.hpp"

using lrs::AffinityGraph;
using lrs::Index;
using lrs::LabelProblem;
using lrs::Matrix;
using lrs::Propagation;

namespace {

AffinityGraph path3() {
  AffinityGraph g;
  g.w = Matrix::Zero(3, 3);
  g.w(0, 1) = g.w(1, 0) = 1.0;
  g.w(1, 2) = g.w(2, 1) = 1.0;
  return g;
}

}  // namespace

TEST_CASE("harmonic scores on a path graph") {
  const LabelProblem prob = LabelProblem::from_labels({0, 0, 1}, {0, 2}, 2);
  const Propagation p = lrs::ghf_propagate(path3(), prob);
  CHECK(p.f(0, 0) == 1.0);
  CHECK(p.f(2, 1) == 1.0);
  CHECK(p.f(1, 0) == doctest::Approx(0.5));
  CHECK(p.f(1, 1) == doctest::Approx(0.5));
  CHECK(p.predictions[1] == 0);  // tie broken toward the lower class index
}

TEST_CASE("all labeled nodes reproduce Y exactly") {
  const LabelProblem prob =
      LabelProblem::from_labels({0, 1, 1}, {0, 1, 2}, 2);
  const Propagation p = lrs::ghf_propagate(path3(), prob);
  CHECK((p.f - prob.y).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("star graph center averages its leaves") {
  AffinityGraph g;
  g.w = Matrix::Zero(4, 4);
  for (Index leaf = 1; leaf < 4; ++leaf) {
    g.w(0, leaf) = g.w(leaf, 0) = 1.0;
  }
  const LabelProblem prob =
      LabelProblem::from_labels({0, 0, 0, 1}, {1, 2, 3}, 2);
  const Propagation p = lrs::ghf_propagate(g, prob);
  CHECK(p.f(0, 0) == doctest::Approx(2.0 / 3.0));
  CHECK(p.f(0, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(p.predictions[0] == 0);
}

TEST_CASE("harmonic scores obey the maximum principle") {
  for (int seed = 0; seed < 10; ++seed) {
    lrs::Rng rng(seed);
    const Index n = 8;
    Matrix raw = rng.gaussian(n, n).cwiseAbs();
    AffinityGraph g;
    g.w = (raw + raw.transpose()) / 2.0;  // dense, hence connected
    g.w.diagonal().setZero();
    std::vector<int> truth;
    for (Index i = 0; i < n; ++i) {
      truth.push_back(static_cast<int>(rng.uniform_int(3)));
    }
    truth[0] = 0;
    truth[1] = 1;
    truth[2] = 2;
    const LabelProblem prob = LabelProblem::from_labels(truth, {0, 1, 2}, 3);
    const Propagation p = lrs::ghf_propagate(g, prob);
    for (Index i = 0; i < n; ++i) {
      CHECK(p.f.row(i).minCoeff() >= -1e-10);
      CHECK(p.f.row(i).maxCoeff() <= 1.0 + 1e-10);
      CHECK(p.f.row(i).sum() == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("ghf requires labels from every class") {
  const std::vector<int> truth = {0, 1, 1};
  CHECK_THROWS_AS(
      lrs::ghf_propagate(path3(), LabelProblem::from_labels(truth, {0}, 2)),
      std::invalid_argument);
}

TEST_CASE("disconnected unlabeled nodes are flagged and regularized") {
  AffinityGraph g;
  g.w = Matrix::Zero(3, 3);
  g.w(0, 1) = g.w(1, 0) = 1.0;  // node 2 isolated, unlabeled
  const LabelProblem prob = LabelProblem::from_labels({0, 1, 0}, {0, 1}, 2);
  const Propagation p = lrs::ghf_propagate(g, prob);
  REQUIRE(p.flagged.size() == 1);
  CHECK(p.flagged[0] == 2);
}

TEST_CASE("elastic propagation on a single node") {
  AffinityGraph g;
  g.w = Matrix::Zero(1, 1);
  const LabelProblem prob = LabelProblem::from_labels({0}, {0}, 2);
  const Propagation p = lrs::lgc_propagate(g, prob, 0.99);
  CHECK(p.f(0, 0) == doctest::Approx(1.0));
  CHECK(p.f(0, 1) == doctest::Approx(0.0));
  CHECK(p.predictions[0] == 0);
}

TEST_CASE("two disconnected nodes keep their own labels") {
  AffinityGraph g;
  g.w = Matrix::Zero(2, 2);
  const LabelProblem prob = LabelProblem::from_labels({0, 1}, {0, 1}, 2);
  const Propagation p = lrs::lgc_propagate(g, prob);
  CHECK(p.predictions[0] == 0);
  CHECK(p.predictions[1] == 1);
}

TEST_CASE("elastic predictions are invariant to uniform scaling of Y") {
  lrs::Rng rng(21);
  Matrix raw = rng.gaussian(7, 7).cwiseAbs();
  AffinityGraph g;
  g.w = (raw + raw.transpose()) / 2.0;
  g.w.diagonal().setZero();
  std::vector<int> truth = {0, 1, 2, 0, 1, 2, 0};
  LabelProblem prob = LabelProblem::from_labels(truth, {0, 1, 2}, 3);
  const Propagation base = lrs::lgc_propagate(g, prob);

  LabelProblem scaled = prob;
  scaled.y *= 7.5;
  // Bypass validation: scaled Y is only a linearity probe.
  Matrix system = lrs::normalized_laplacian(g);
  system.diagonal().array() += 0.99;
  const Matrix f = system.ldlt().solve(0.99 * scaled.y);
  CHECK((f - 7.5 * base.f).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("propagators agree on single-labeled components") {
  AffinityGraph g;
  g.w = Matrix::Zero(6, 6);
  auto link = [&](Index a, Index b) { g.w(a, b) = g.w(b, a) = 1.0; };
  link(0, 1);
  link(1, 2);  // component {0,1,2}, labeled node 0
  link(3, 4);
  link(4, 5);  // component {3,4,5}, labeled node 4
  const std::vector<int> truth = {0, 0, 0, 1, 1, 1};
  const LabelProblem prob = LabelProblem::from_labels(truth, {0, 4}, 2);
  const Propagation ghf = lrs::ghf_propagate(g, prob);
  const Propagation lgc = lrs::lgc_propagate(g, prob);
  CHECK(ghf.predictions == lgc.predictions);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    CHECK(ghf.predictions[i] == truth[i]);
  }
}

TEST_CASE("class permutation permutes score columns") {
  AffinityGraph g = path3();
  const std::vector<int> truth = {0, 1, 1};
  const LabelProblem prob = LabelProblem::from_labels(truth, {0, 2}, 2);
  const std::vector<int> swapped = {1, 0, 0};
  const LabelProblem prob_swapped =
      LabelProblem::from_labels(swapped, {0, 2}, 2);
  for (bool use_ghf : {true, false}) {
    const Propagation a = use_ghf ? lrs::ghf_propagate(g, prob)
                                  : lrs::lgc_propagate(g, prob);
    const Propagation b = use_ghf ? lrs::ghf_propagate(g, prob_swapped)
                                  : lrs::lgc_propagate(g, prob_swapped);
    CHECK((a.f.col(0) - b.f.col(1)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((a.f.col(1) - b.f.col(0)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("error_rate") {
  Propagation p;
  p.predictions = {0, 1, 1, 0};
  LabelProblem prob;
  prob.truth = {0, 1, 1, 0};
  CHECK(lrs::error_rate(p, prob, {0, 1, 2, 3}) == 0.0);
  prob.truth = {1, 0, 0, 1};
  CHECK(lrs::error_rate(p, prob, {0, 1, 2, 3}) == 100.0);
  prob.truth = {0, 1, 1, 1};
  CHECK(lrs::error_rate(p, prob, {0, 1, 2, 3}) == 25.0);
  CHECK_THROWS_AS(lrs::error_rate(p, prob, {}), std::invalid_argument);
}
