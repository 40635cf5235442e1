#include "lrs/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lrs/rng.hpp"

namespace lrs {

void SynthOptions::validate() const {
  if (subspace_count < 1) throw std::invalid_argument("subspace_count >= 1");
  if (subspace_dim < 1) throw std::invalid_argument("subspace_dim >= 1");
  if (samples_per_subspace < 1) {
    throw std::invalid_argument("samples_per_subspace >= 1");
  }
  if (ambient_dim < subspace_count * subspace_dim + nuisance_dim) {
    throw std::invalid_argument(
        "ambient_dim must fit subspace_count * subspace_dim + nuisance_dim "
        "orthogonal directions");
  }
  if (noise_sigma < 0.0) throw std::invalid_argument("noise_sigma >= 0");
  if (corrupt_fraction < 0.0 || corrupt_fraction > 1.0) {
    throw std::invalid_argument("corrupt_fraction in [0, 1]");
  }
  if (nuisance_dim < 0 || nuisance_sigma < 0.0) {
    throw std::invalid_argument("nuisance options must be nonnegative");
  }
}

SynthDataset make_subspace_dataset(std::uint64_t seed,
                                   const SynthOptions& opts) {
  opts.validate();
  Rng rng = Rng::substream(seed, 0x73796e7468ULL);  // "synth"

  const Index d = opts.ambient_dim;
  const Index class_cols =
      static_cast<Index>(opts.subspace_count) * opts.subspace_dim;
  const Index basis_cols = class_cols + opts.nuisance_dim;
  const Index n =
      static_cast<Index>(opts.subspace_count) * opts.samples_per_subspace;

  // Orthonormal frame: one basis per class subspace, then the shared
  // nuisance directions.
  const Matrix frame = Eigen::HouseholderQR<Matrix>(rng.gaussian(d, basis_cols))
                           .householderQ() *
                       Matrix::Identity(d, basis_cols);
  const auto nuisance = frame.rightCols(opts.nuisance_dim);

  SynthDataset ds;
  ds.x.resize(d, n);
  ds.labels.resize(static_cast<std::size_t>(n));
  Index col = 0;
  for (int s = 0; s < opts.subspace_count; ++s) {
    const auto basis = frame.middleCols(
        static_cast<Index>(s) * opts.subspace_dim, opts.subspace_dim);
    for (Index j = 0; j < opts.samples_per_subspace; ++j, ++col) {
      Vector sample = basis * rng.gaussian(opts.subspace_dim, 1);
      sample.normalize();
      if (opts.nuisance_dim > 0 && opts.nuisance_sigma > 0.0) {
        Vector direction = nuisance * rng.gaussian(opts.nuisance_dim, 1);
        direction.normalize();
        sample += opts.nuisance_sigma * direction;
      }
      if (opts.noise_sigma > 0.0) {
        sample += opts.noise_sigma * rng.gaussian(d, 1);
      }
      sample.normalize();
      ds.x.col(col) = sample;
      ds.labels[static_cast<std::size_t>(col)] = s;
    }
  }

  if (opts.corrupt_fraction > 0.0) {
    const auto count = static_cast<std::size_t>(
        std::ceil(opts.corrupt_fraction * static_cast<double>(n)));
    const std::vector<std::size_t> perm =
        rng.permutation(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < count; ++i) {
      ds.corrupted.push_back(static_cast<Index>(perm[i]));
    }
    std::sort(ds.corrupted.begin(), ds.corrupted.end());
    for (Index j : ds.corrupted) {
      Vector noise = rng.gaussian(d, 1);
      noise.normalize();
      ds.x.col(j) = noise;
    }
  }
  return ds;
}

double block_mass_fraction(const Matrix& w, const std::vector<int>& labels) {
  if (static_cast<Index>(labels.size()) != w.rows() || w.rows() != w.cols()) {
    throw std::invalid_argument("block_mass_fraction: size mismatch");
  }
  double total = 0.0;
  double within = 0.0;
  for (Index i = 0; i < w.rows(); ++i) {
    for (Index j = 0; j < w.cols(); ++j) {
      const double m = std::abs(w(i, j));
      total += m;
      if (labels[static_cast<std::size_t>(i)] ==
          labels[static_cast<std::size_t>(j)]) {
        within += m;
      }
    }
  }
  return total > 0.0 ? within / total : 1.0;
}

}  // namespace lrs
