#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "lrs/matrix.hpp"

namespace lrs {

// Repo-wide random generator: std::mt19937_64 plus the explicit transforms
// below. Every random draw in the library and tools goes through this class,
// so a seed pins all downstream output bytes.
//
//   uniform()      [0,1) from the top 53 bits of one engine word
//   normal()       Box-Muller pair, one value cached
//   uniform_int(n) unbiased via rejection on the top word
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent substream for (seed, salt), e.g. one per trial.
  static Rng substream(std::uint64_t seed, std::uint64_t salt);

  // splitmix64 finalizer; used for substream derivation.
  static std::uint64_t mix(std::uint64_t x);

  double uniform();
  double normal();
  std::uint64_t uniform_int(std::uint64_t n);

  Matrix gaussian(Index rows, Index cols);

  // Fisher-Yates permutation of {0, .., n-1}.
  std::vector<std::size_t> permutation(std::size_t n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace lrs
