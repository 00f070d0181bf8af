#include <cmath>
#include <numbers>

#include "doctest.h"
#include "entrobound/bounds.hpp"
#include "test_util.hpp"

using namespace entrobound;

namespace {

const double ln2 = std::numbers::ln2;

}  // namespace

TEST_CASE("presets") {
  for (const std::string& id : preset_ids()) CHECK(preset(id).name == id);
  CHECK_THROWS_AS(preset("nope"), ValidationError);
  const BoundDescriptor mi = preset("mutual-info"), ent = preset("entropy");
  CHECK(mi.c_minus + mi.c_plus == doctest::Approx(2.0 * (ent.c_minus + ent.c_plus)));
  CHECK(mi.g_multiplier == doctest::Approx(2.0 * ent.g_multiplier));
}

TEST_CASE("generic engine") {
  Theorem1Inputs in;
  in.B = [](double) { return 1.0; };
  const BoundResult r = eval_theorem1(in, 0.125, 1.0);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-14));

  in.pure_state = true;
  const BoundResult p = eval_theorem1(in, 0.5, 1.0);
  CHECK(p.value == doctest::Approx(r.value).epsilon(1e-14));
  CHECK(p.epsilon_effective == doctest::Approx(0.125));

  // B(E/eps) = (E/eps)^(1/4) is o(1/sqrt(eps)): the bound shrinks to zero
  Theorem1Inputs slow;
  slow.B = [](double x) { return std::pow(x, 0.25); };
  const double first = eval_theorem1(slow, 0.5, 1.0).value;
  double prev = first;
  for (int k = 2; k <= 24; ++k) {
    const double v = eval_theorem1(slow, std::pow(0.5, k), 1.0).value;
    CHECK(v < prev);
    prev = v;
  }
  CHECK(prev < 0.02 * first);

  // split form replaces 2B
  Theorem1Inputs split;
  split.B_plus = [](double) { return 1.5; };
  split.B_minus = [](double) { return 0.5; };
  CHECK(eval_theorem1(split, 0.125, 1.0).value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS(eval_theorem1(in, 1.5, 1.0));
}

TEST_CASE("spectrum-backed bound") {
  const SpectrumModel osc = SpectrumModel::oscillator({1.0});
  const BoundResult r = eval_prop1(preset("entropy"), osc, 0.08, 1.5);
  const double expect = 0.4 * F_H(osc, 18.75) + g_func(0.4);
  CHECK(r.value == doctest::Approx(expect).epsilon(1e-12));
  CHECK(r.F_value == doctest::Approx(F_H(osc, 18.75)).epsilon(1e-12));

  const BoundResult m = eval_prop1(preset("mutual-info"), osc, 0.08, 1.5);
  CHECK(m.main_term == doctest::Approx(2.0 * r.main_term).epsilon(1e-14));
  CHECK(m.g_term == doctest::Approx(2.0 * r.g_term).epsilon(1e-14));

  CHECK(eval_prop1(preset("entropy"), osc, 0.0, 1.5).value == 0.0);

  // decreasing toward zero on a spectrum that passes the growth diagnostic
  const SpectrumModel wide = SpectrumModel::oscillator({1.0}, std::size_t{1} << 16);
  for (const std::string& id : preset_ids()) {
    const double first = eval_prop1(preset(id), wide, 0.5, 1.5).value;
    double prev = first;
    for (int k = 2; k <= 10; ++k) {
      const double v = eval_prop1(preset(id), wide, std::pow(0.5, k), 1.5).value;
      CHECK(v < prev);
      prev = v;
    }
    CHECK(prev < 0.25 * first);
  }
  CHECK_THROWS_AS(eval_prop1(preset("entropy"), osc, std::pow(0.5, 10), 1.5), NumericalError);
}

TEST_CASE("oscillator upper estimate bound") {
  const BoundResult r = eval_oscillator(preset("entropy"), {1.0}, 0.08, 1.5);
  CHECK(r.value == doctest::Approx(0.4 * (std::log(19.25) + 1.0) + g_func(0.4)).epsilon(1e-12));

  const std::vector<double> w = {1.0, 2.0};
  const SpectrumModel m = SpectrumModel::oscillator(w);
  for (double eps : {0.01, 0.05, 0.1, 0.25, 0.5})
    for (double e : {1.6, 2.0, 3.0, 5.0}) {
      CHECK(eval_oscillator(preset("entropy"), w, eps, e).value >= eval_prop1(preset("entropy"), m, eps, e).value);
    }
  const BoundResult edge = eval_oscillator(preset("entropy"), {1.0}, 0.5, 0.51);
  CHECK(std::isfinite(edge.value));
  CHECK(edge.value > 0.0);
}

TEST_CASE("finite-dimensional bound") {
  CHECK(eval_finite_dim(preset("entropy"), 2, 0.0).value == 0.0);
  CHECK(eval_finite_dim(preset("entropy"), 2, 1.0).value == doctest::Approx(3.0 * ln2).epsilon(1e-14));
  CHECK(eval_finite_dim(preset("mutual-info"), 5, 0.3).main_term ==
        doctest::Approx(2.0 * eval_finite_dim(preset("entropy"), 5, 0.3).main_term));
  CHECK_THROWS(eval_finite_dim(preset("entropy"), 2, 1.5));
}

TEST_CASE("pure-state variant") {
  const SpectrumModel osc = SpectrumModel::oscillator({1.0});
  BoundDescriptor pure = preset("entropy");
  pure.pure_state = true;
  CHECK(eval_prop1(pure, osc, 0.4, 2.0).value ==
        doctest::Approx(eval_prop1(preset("entropy"), osc, 0.08, 2.0).value).epsilon(1e-14));
  CHECK(effective_epsilon(0.4, true) == doctest::Approx(0.08));
  CHECK(effective_epsilon(0.4, false) == 0.4);
}

TEST_CASE("monotone envelope") {
  const std::vector<double> env = monotone_envelope({0.1, 0.3, 0.2, 0.5, 0.4});
  CHECK(env == std::vector<double>{0.1, 0.3, 0.3, 0.5, 0.5});
}
