#include <cmath>
#include <numbers>

#include "doctest.h"
#include "entrobound/gibbs.hpp"
#include "test_util.hpp"

using namespace entrobound;
using entrobound::test::diag_state;

namespace {

const double ln2 = std::numbers::ln2;

SpectrumModel two_level() { return SpectrumModel::explicit_levels({0.0, 1.0}); }

std::vector<double> oscillator_levels(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = static_cast<double>(k) + 0.5;
  return v;
}

}  // namespace

TEST_CASE("spectrum model validation") {
  CHECK_THROWS_AS(SpectrumModel::explicit_levels({}), ValidationError);
  CHECK_THROWS_AS(SpectrumModel::explicit_levels({1.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(SpectrumModel::oscillator({}), ValidationError);
  CHECK_THROWS_AS(SpectrumModel::oscillator({-1.0}), ValidationError);
  CHECK_THROWS_AS(SpectrumModel::log_power(1.0), ValidationError);
  CHECK(SpectrumModel::oscillator({1.0, 2.0}).ground_energy() == doctest::Approx(1.5));
  const std::vector<double> low = SpectrumModel::oscillator({1.0, 1.0}).lowest_levels(4);
  CHECK(low == std::vector<double>{1.0, 2.0, 2.0, 3.0});
}

TEST_CASE("log partition") {
  CHECK(log_partition(two_level(), std::log(3.0)).value == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-14));

  // oscillator closed form against the explicit truncated sum
  const SpectrumModel osc = SpectrumModel::oscillator({1.0}, 4096);
  const SpectrumModel expl = SpectrumModel::explicit_levels(oscillator_levels(4096));
  for (double lambda : {2.0, 0.5, 0.01}) {
    const SeriesValue a = log_partition(osc, lambda), b = log_partition(expl, lambda);
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-12));
    const double full = -lambda / 2.0 - std::log(-std::expm1(-lambda));
    CHECK(a.value <= full + 1e-12);
    CHECK(a.value + a.tail >= full - 1e-12);
  }
}

TEST_CASE("log-power partition sums lie in the integral bracket") {
  for (double lambda : {0.5, 0.2, 0.1}) {
    const SpectrumModel m = SpectrumModel::log_power(3.0, std::size_t{1} << 20);
    const SeriesValue z = log_partition(m, lambda);
    const double integral = logpower_integral(3.0, lambda);
    CHECK(std::exp(z.value) <= integral + 1.0);
    CHECK(std::exp(z.value + z.tail) >= integral);
  }
}

TEST_CASE("mean energy") {
  CHECK(mean_energy(two_level(), std::log(3.0)).value == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(mean_energy(two_level(), 50.0).value < 1e-20);

  const double h = 1e-6;
  const std::vector<SpectrumModel> models = {SpectrumModel::oscillator({1.0}), SpectrumModel::oscillator({1.0, 2.5}),
                                             SpectrumModel::explicit_levels({0.0, 0.3, 1.0, 1.7}),
                                             SpectrumModel::log_power(3.0)};
  for (const SpectrumModel& m : models)
    for (double lambda : {1.5, 0.7, 0.3}) {
      const double fd = -(log_partition(m, lambda + h).value - log_partition(m, lambda - h).value) / (2.0 * h);
      const double e = mean_energy(m, lambda).value;
      CHECK(std::abs(fd - e) <= 1e-5 * std::abs(e));
    }
  const double lambda = 0.8;
  CHECK(mean_energy(SpectrumModel::oscillator({1.0}), lambda).value ==
        doctest::Approx(1.0 / std::expm1(lambda) + 0.5).epsilon(1e-12));
}

TEST_CASE("two-level closed form") {
  const GibbsSolution s = solve_lambda(two_level(), 0.25);
  CHECK(std::abs(s.lambda - std::log(3.0)) <= 1e-8);
  CHECK(std::abs(s.F_value - h2(0.25)) <= 1e-8);
  CHECK(s.F_value == doctest::Approx(0.5623).epsilon(1e-4));

  const GibbsSolution mid = solve_lambda(two_level(), 0.5);
  CHECK(mid.flag == GibbsFlag::lambda_floor);
  CHECK(mid.lambda == kLambdaMin);
  CHECK(mid.F_value == doctest::Approx(ln2).epsilon(1e-8));

  CHECK(F_H(two_level(), 1.0) == doctest::Approx(ln2));
  CHECK(F_H_solution(two_level(), 1.0).flag == GibbsFlag::saturated);
  CHECK(F_H(two_level(), 0.0) == 0.0);
  CHECK_THROWS_AS(F_H(two_level(), -0.1), ValidationError);
}

TEST_CASE("single oscillator") {
  const GibbsSolution s = F_H_solution(SpectrumModel::oscillator({1.0}, 4096), 1.5);
  CHECK(std::abs(s.F_value - 2.0 * ln2) <= 1e-6);
  CHECK(s.tail_bound < 1e-8);
  CHECK(std::abs(s.lambda - ln2) <= 1e-8);
}

TEST_CASE("F equals lambda E plus ln Z") {
  const std::vector<SpectrumModel> models = {SpectrumModel::oscillator({1.0}), SpectrumModel::oscillator({0.7, 1.3}),
                                             SpectrumModel::explicit_levels({0.0, 0.5, 0.5, 2.0}),
                                             SpectrumModel::log_power(3.0)};
  for (const SpectrumModel& m : models)
    for (double de : {0.05, 0.4, 1.0}) {
      const double e = m.ground_energy() + de;
      if (m.is_finite() && e >= m.flat_mean()) continue;
      const GibbsSolution s = solve_lambda(m, e);
      CHECK(std::abs(s.F_value - (s.lambda * e + log_partition(m, s.lambda).value)) <= 1e-9);
    }
}

TEST_CASE("two equal modes are additive") {
  for (double e : {0.8, 1.5, 4.0}) {
    const double one = F_H(SpectrumModel::oscillator({1.0}), e);
    const double two = F_H(SpectrumModel::oscillator({1.0, 1.0}), 2.0 * e);
    CHECK(std::abs(two - 2.0 * one) <= 1e-8);
  }
  CHECK(F_H(SpectrumModel::oscillator({1.0, 1.0}), 3.0) == doctest::Approx(4.0 * ln2).epsilon(1e-8));
}

TEST_CASE("oscillator upper estimate") {
  CHECK(F_hat({1.0}, 1.5) == doctest::Approx(ln2 + 1.0).epsilon(1e-14));
  CHECK(F_hat({1.0}, 0.5 + 1e-9) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(F_hat({1.0, 4.0}, 5.0) == doctest::Approx(2.0 * std::log(7.5 / 4.0) + 2.0).epsilon(1e-14));
  CHECK_THROWS_AS(F_hat({1.0}, 0.5), DomainError);
  for (const std::vector<double>& w : {std::vector<double>{1.0}, std::vector<double>{1.0, 4.0}}) {
    const SpectrumModel m = SpectrumModel::oscillator(w);
    for (int i = 1; i <= 50; ++i) {
      const double e = m.ground_energy() + 0.1 * i;
      CHECK(F_H(m, e) <= F_hat(w, e));
    }
  }
}

TEST_CASE("truncation honesty") {
  // far above the truncated ceiling of an infinite spectrum
  CHECK_THROWS_AS(F_H(SpectrumModel::oscillator({1.0}, 8), 100.0), NumericalError);
  // a finite spectrum cannot exceed its top level
  CHECK_THROWS_AS(solve_lambda(two_level(), 2.0), ValidationError);
}

TEST_CASE("Gibbs states") {
  const HermitianOperator h = HermitianOperator::diagonal(RealVector{{0.0, 1.0}});
  CHECK(max_abs(gibbs_state(h, GibbsParameter::at_lambda(0.0)).matrix() - DensityMatrix::maximally_mixed(2).matrix()) <
        1e-15);
  CHECK(max_abs(gibbs_state(h, GibbsParameter::at_energy(0.25)).matrix() - diag_state({0.75, 0.25}).matrix()) < 1e-9);

  Rng rng(7);
  const HermitianOperator r = random_hermitian(5, rng);
  const double lo = eigenvalues(r).minCoeff();
  const double e = lo + 0.3 * (r.trace() / 5.0 - lo);
  CHECK(gibbs_state(r, GibbsParameter::at_energy(e)).expectation(r) == doctest::Approx(e).epsilon(1e-8));
}

TEST_CASE("Gibbs-family relative entropy distance") {
  const HermitianOperator h2l = HermitianOperator::diagonal(RealVector{{0.0, 1.0}});
  const SpectrumModel m2 = SpectrumModel::from_operator(h2l);
  const DensityMatrix g = gibbs_state(h2l, GibbsParameter::at_energy(0.3));
  CHECK(gibbs_red(g, h2l, m2).value() == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(gibbs_red(DensityMatrix::basis_state(2, 1), h2l, m2).value() == doctest::Approx(ln2));

  Rng rng(8);
  const HermitianOperator h3 = HermitianOperator::diagonal(RealVector{{0.0, 1.0, 2.5}});
  const SpectrumModel m3 = SpectrumModel::from_operator(h3);
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix x = random_density(3, rng, 1 + static_cast<Index>(rng.below(3)));
    CHECK(std::abs(gibbs_red(x, h3, m3).value() - gibbs_red_entropic(x, h3, m3)) <= 1e-7);
  }
  // Gibbs weights far below the generic eigenvalue cutoff
  const HermitianOperator hosc = HermitianOperator::diagonal(RealVector::Map(oscillator_levels(16).data(), 16));
  const SpectrumModel mosc = SpectrumModel::from_operator(hosc);
  const DensityMatrix lowpure = DensityMatrix::pure(random_pure(16, rng));
  const DensityMatrix cold = mix(0.999, DensityMatrix::basis_state(16, 0), lowpure);
  CHECK(std::abs(gibbs_red(cold, hosc, mosc).value() - gibbs_red_entropic(cold, hosc, mosc)) <= 1e-7);

  // the model must list exactly the eigenvalues of H
  CHECK_THROWS_AS(gibbs_red(g, h2l, SpectrumModel::oscillator({1.0})), ValidationError);
}

TEST_CASE("Gibbs-family distance is not convex") {
  // Both endpoints are Gibbs states (zero distance); their mixture is not.
  const HermitianOperator h = HermitianOperator::diagonal(RealVector{{0.0, 1.0, 2.0}});
  const SpectrumModel m = SpectrumModel::from_operator(h);
  const DensityMatrix cold = DensityMatrix::basis_state(3, 0), hot = DensityMatrix::maximally_mixed(3);
  CHECK(gibbs_red(cold, h, m).value() == doctest::Approx(0.0));
  CHECK(gibbs_red(hot, h, m).value() == doctest::Approx(0.0));
  const double mid = gibbs_red(mix(0.5, cold, hot), h, m).value();
  CHECK(mid > 0.03);
  // the almost-affine lower direction still holds
  CHECK(mid >= -h2(0.5));
}

TEST_CASE("growth diagnostic") {
  std::vector<double> grid;
  for (int i = 0; i <= 12; ++i) grid.push_back(std::pow(10.0, -3.0 * i / 12.0));
  CHECK(hcond_diagnostic(SpectrumModel::oscillator({1.0}, std::size_t{1} << 20), grid).verdict ==
        HcondVerdict::consistent);

  std::vector<double> coarse;
  for (int i = 0; i <= 8; ++i) coarse.push_back(std::pow(10.0, -2.0 * i / 8.0));
  const HcondReport q2 = hcond_diagnostic(SpectrumModel::log_power(2.0, std::size_t{1} << 20), coarse);
  CHECK(q2.verdict == HcondVerdict::inconsistent);
  CHECK(q2.lambda_g_lower.back() >= 0.2);
  CHECK(hcond_diagnostic(SpectrumModel::log_power(3.0, std::size_t{1} << 20), coarse).verdict ==
        HcondVerdict::consistent);
}
