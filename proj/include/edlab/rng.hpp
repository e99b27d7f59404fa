#pragma once
// Deterministic random generators for the test corpus builders. Every
// generator is a pure function of an explicit 64-bit seed.

#include <cstdint>
#include <random>

#include "edlab/matrix_ops.hpp"

namespace edlab {

uint64_t splitmix64(uint64_t& state);

/// Decorrelated per-item seed derived from a base seed and an index.
uint64_t derive_seed(uint64_t seed, uint64_t index);

class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen_); }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return std::uniform_int_distribution<int>(lo, hi)(gen_);
  }
  cplx cnormal() { return cplx(normal(), normal()); }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

/// Matrix with iid standard complex Gaussian entries.
cmat ginibre(Rng& rng, int rows, int cols);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
cmat random_unitary(Rng& rng, int n);

/// Hermitian matrix (G + G^dag)/2, entries O(1).
cmat random_hermitian(Rng& rng, int n);

/// PSD trace-1 matrix of the given rank (rank <= 0 means full rank).
cmat random_density(Rng& rng, int n, int rank = -1);

}  // namespace edlab
