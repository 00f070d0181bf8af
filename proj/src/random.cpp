#include "entrobound/random.hpp"

#include <cmath>
#include <numbers>

namespace entrobound {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do x = engine_();
  while (x >= limit);
  return x % n;
}

double Rng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

Rng derived_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t s = splitmix64(seed);
  s = splitmix64(s ^ (stream * 0xD1B54A32D192ED03ULL));
  s = splitmix64(s ^ (index * 0x8CB92BA72F3D8DD7ULL));
  return Rng(s);
}

namespace {

Matrix ginibre(Index rows, Index cols, Rng& rng) {
  Matrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = rng.complex_normal();
  return g;
}

}  // namespace

DensityMatrix random_density(Index dim, Rng& rng, Index rank) {
  if (dim <= 0) throw ValidationError("random_density: dimension must be positive");
  if (rank <= 0 || rank > dim) rank = dim;
  const Matrix g = ginibre(dim, rank, rng);
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix::from_positive(m);
}

PureStateVector random_pure(Index dim, Rng& rng) {
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) v[i] = rng.complex_normal();
  return PureStateVector::normalized(v);
}

HermitianOperator random_hermitian(Index dim, Rng& rng) {
  const Matrix g = ginibre(dim, dim, rng);
  return HermitianOperator(0.5 * (g + g.adjoint()));
}

Matrix random_unitary(Index dim, Rng& rng) {
  const Matrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (Index i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

}  // namespace entrobound
