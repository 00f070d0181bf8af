#pragma once

// Portable deterministic randomness: mt19937_64 bits with explicit
// conversions, so streams agree across standard libraries.

#include <cstdint>
#include <random>

#include "entrobound/operator_core.hpp"

namespace entrobound {

std::uint64_t splitmix64(std::uint64_t x);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on [a, b).
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  /// Standard normal by Box-Muller (one variate per call).
  double normal();
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
};

/// Independent stream for (seed, stream, index).
Rng derived_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Ginibre (Hilbert-Schmidt for rank == dim) random state of the given rank.
DensityMatrix random_density(Index dim, Rng& rng, Index rank = 0);
PureStateVector random_pure(Index dim, Rng& rng);
HermitianOperator random_hermitian(Index dim, Rng& rng);
/// Haar-distributed unitary via QR of a Ginibre matrix.
Matrix random_unitary(Index dim, Rng& rng);

}  // namespace entrobound
