#pragma once

#include <cstdint>
#include <vector>

#include "lrs/matrix.hpp"

namespace lrs {

// Union-of-subspaces generator: samples with unit norm drawn from
// orthogonal low-dimensional subspaces of the ambient space, optionally
// perturbed by Gaussian noise and with a fraction of columns replaced by
// random directions (gross corruption).
struct SynthOptions {
  int subspace_count = 3;
  Index subspace_dim = 2;
  Index ambient_dim = 20;
  Index samples_per_subspace = 15;
  double noise_sigma = 0.0;
  double corrupt_fraction = 0.0;
  // Shared class-independent subspace mixed into every sample; its energy
  // misleads variance-based embeddings.
  Index nuisance_dim = 0;
  double nuisance_sigma = 0.0;

  void validate() const;
};

struct SynthDataset {
  Matrix x;                       // ambient_dim x n, samples as columns
  std::vector<int> labels;        // subspace index per column
  std::vector<Index> corrupted;   // planted corrupted column indices (sorted)
};

SynthDataset make_subspace_dataset(std::uint64_t seed,
                                   const SynthOptions& opts = {});

// Share of total absolute edge weight that falls between same-label pairs.
double block_mass_fraction(const Matrix& w, const std::vector<int>& labels);

}  // namespace lrs
