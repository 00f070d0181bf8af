#include <cmath>
#include <numbers>

#include "doctest.h"
#include "entrobound/ensembles.hpp"
#include "test_util.hpp"

using namespace entrobound;

using entrobound::test::random_ensemble;
using entrobound::test::vertex_enumeration;

TEST_CASE("ordered distance") {
  Rng rng(1);
  const Ensemble mu = random_ensemble(3, 3, rng);
  CHECK(d0(mu, mu) == doctest::Approx(0.0).epsilon(1e-14));
  const DensityMatrix r = random_density(3, rng), s = random_density(3, rng);
  CHECK(d0(Ensemble({1.0}, {r}), Ensemble({1.0}, {s})) == doctest::Approx(trace_distance(r, s)).epsilon(1e-12));
  const DensityMatrix z = DensityMatrix::basis_state(2, 0), o = DensityMatrix::basis_state(2, 1);
  const Ensemble a({0.5, 0.5}, {z, o}), b({0.5, 0.5}, {o, z});
  CHECK(d0(a, b) == doctest::Approx(1.0));
  CHECK(dstar(a, b) == doctest::Approx(0.0).epsilon(1e-14));
  // padding with zero-weight members
  CHECK(d0(Ensemble({1.0}, {z}), a) == doctest::Approx(0.5 * (0.5 + 0.5)));
}

TEST_CASE("transport distance") {
  Rng rng(2);
  const DensityMatrix r = random_density(2, rng);
  CHECK(dstar(Ensemble({0.5, 0.5}, {r, r}), Ensemble({1.0}, {r})) == doctest::Approx(0.0).epsilon(1e-14));
  const TransportPlan plan = dstar_plan(random_ensemble(2, 3, rng), random_ensemble(2, 4, rng));
  CHECK(plan.weights.minCoeff() >= -1e-14);
  CHECK(plan.weights.sum() == doctest::Approx(1.0));
  CHECK_THROWS_AS(dstar(random_ensemble(2, 13, rng), random_ensemble(2, 2, rng)), ValidationError);
}

TEST_CASE("transport solver matches vertex enumeration") {
  Rng rng(3);
  for (int t = 0; t < 40; ++t) {
    const std::size_t m = 3, n = t % 2 == 0 ? 3 : 4;
    const Ensemble mu = random_ensemble(2 + static_cast<Index>(rng.below(2)), m, rng);
    const Ensemble nu = random_ensemble(mu.dim(), n, rng);
    Eigen::MatrixXd cost(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) cost(i, j) = trace_distance(mu.state(i), nu.state(j));
    CHECK(std::abs(dstar(mu, nu) - vertex_enumeration(mu.weights(), nu.weights(), cost)) <= 1e-9);
  }
  // degenerate marginals
  const std::vector<double> p = {0.5, 0.5, 0.0}, q = {0.5, 0.25, 0.25};
  Eigen::MatrixXd c(3, 3);
  c << 0.1, 0.7, 0.3, 0.9, 0.2, 0.4, 0.5, 0.6, 0.8;
  CHECK(std::abs(solve_transport(p, q, c).cost - vertex_enumeration(p, q, c)) <= 1e-12);
}

TEST_CASE("metric properties") {
  Rng rng(4);
  for (int t = 0; t < 30; ++t) {
    const Ensemble a = random_ensemble(2, 3, rng), b = random_ensemble(2, 3, rng), c = random_ensemble(2, 3, rng);
    CHECK(std::abs(d0(a, b) - d0(b, a)) <= 1e-9);
    CHECK(std::abs(dstar(a, b) - dstar(b, a)) <= 1e-9);
    CHECK(d0(a, c) <= d0(a, b) + d0(b, c) + 1e-9);
    CHECK(dstar(a, c) <= dstar(a, b) + dstar(b, c) + 1e-9);
  }
  // a member split into two copies is the same measure
  const Ensemble e = random_ensemble(3, 2, rng);
  const Ensemble split({e.weight(0) * 0.3, e.weight(0) * 0.7, e.weight(1)}, {e.state(0), e.state(0), e.state(1)});
  CHECK(dstar(e, split) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(d0(e, split) > 0.0);
}

TEST_CASE("transport value can exceed the ordered distance") {
  // A coupling moves equal masses, while D0 may pair unequal weights.
  Vector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const Ensemble mu({0.5, 0.5}, {DensityMatrix::pure(PureStateVector(plus)), DensityMatrix::basis_state(2, 1)});
  const Ensemble nu({1.0}, {DensityMatrix::basis_state(2, 0)});
  CHECK(d0(mu, nu) == doctest::Approx((1.0 + std::sqrt(5.0)) / 4.0).epsilon(1e-12));
  CHECK(dstar(mu, nu) == doctest::Approx(0.5 * (1.0 + 1.0 / std::sqrt(2.0))).epsilon(1e-12));
  CHECK(dstar(mu, nu) > d0(mu, nu));

  // small perturbations of one ensemble keep the transport value below D0
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    const Ensemble a = random_ensemble(2, 3, rng);
    std::vector<DensityMatrix> moved;
    for (std::size_t i = 0; i < a.size(); ++i) moved.push_back(mix(0.05, a.state(i), random_density(2, rng)));
    const Ensemble b(a.weights(), moved);
    CHECK(dstar(a, b) <= d0(a, b) + 1e-9);
  }
}

TEST_CASE("qc states") {
  Rng rng(5);
  const DensityMatrix r = random_density(2, rng);
  const auto [single, s1] = qc_state(Ensemble({1.0}, {r}));
  CHECK(mutual_information(single, s1) == doctest::Approx(0.0).epsilon(1e-12));

  const Ensemble bits({0.5, 0.5}, {DensityMatrix::basis_state(2, 0), DensityMatrix::basis_state(2, 1)});
  const auto [bq, bs] = qc_state(bits);
  CHECK(mutual_information(bq, bs) == doctest::Approx(std::numbers::ln2));

  for (int t = 0; t < 10; ++t) {
    const Ensemble mu = random_ensemble(3, 3, rng);
    const auto [st, sh] = qc_state(mu);
    CHECK(std::abs(mutual_information(st, sh) - holevo_chi(mu)) <= 1e-8);
  }
  const HermitianOperator h = HermitianOperator::diagonal(RealVector{{0.0, 1.0}});
  CHECK(average_energy(bits, h) == doctest::Approx(0.5));
}
