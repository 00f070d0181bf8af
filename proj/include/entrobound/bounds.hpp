#pragma once

// Continuity bounds: one generic engine with a preset per quantity.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "entrobound/gibbs.hpp"

namespace entrobound {

/// Coefficients of a locally almost affine functional f:
///   -c_minus H(rho_B) <= f(rho) <= c_plus H(rho_B),
///   -a h2(p) <= f(mix) - p f(rho) - (1-p) f(sigma) <= b h2(p),
/// plus the factor on g(sqrt(2 eps)) in the final bound.
struct BoundDescriptor {
  std::string name;
  double c_minus = 0.0;
  double c_plus = 1.0;
  double a = 0.0;
  double b = 1.0;
  double g_multiplier = 1.0;
  bool pure_state = false;
  /// Human-readable name of the constrained subsystem.
  std::string marginal = "A";
};

/// Preset ids: entropy, cond-entropy, mutual-info, ree, channel-mi, holevo.
BoundDescriptor preset(const std::string& id);
const std::vector<std::string>& preset_ids();

struct BoundResult {
  double value = 0.0;  // main_term + g_term
  double main_term = 0.0;
  double g_term = 0.0;
  double epsilon = 0.0;
  double epsilon_effective = 0.0;  // eps, or eps^2/2 for pure states
  double energy = 0.0;
  double F_value = 0.0;  // F at E / eps_eff (0 when unused)
  double tail_bound = 0.0;
  std::string formula;
};

/// eps^2/2 for pure states, eps otherwise.
double effective_epsilon(double epsilon, bool pure_state);

struct Theorem1Inputs {
  std::function<double(double)> B;  // B_f(E), used when the split is absent
  std::function<double(double)> B_plus, B_minus;
  std::function<double(double)> a = [](double) { return 0.0; };
  std::function<double(double)> b = [](double) { return 0.0; };
  bool pure_state = false;
};

/// 2 sqrt(2e) B(E/e) + (1 + sqrt(2e)) (a(t) + b(t)), t = sqrt(2e)/(1 + sqrt(2e)),
/// where B_plus + B_minus replaces 2B when both are given.
BoundResult eval_theorem1(const Theorem1Inputs& in, double epsilon, double energy);

/// (c- + c+) sqrt(2e) F(E/e) + g_mult g(sqrt(2e)).
BoundResult eval_prop1(const BoundDescriptor& desc, const SpectrumModel& model, double epsilon, double energy);

/// As eval_prop1 with F replaced by the oscillator upper estimate F_hat.
BoundResult eval_oscillator(const BoundDescriptor& desc, const std::vector<double>& hbar_omega, double epsilon,
                            double energy);

/// (c- + c+) e ln d + (a + b) g(e), 0 <= e <= 1.
BoundResult eval_finite_dim(const BoundDescriptor& desc, Index dim_b, double epsilon);

/// sup over the grid points eps' <= eps of bound(eps'); grid increasing.
std::vector<double> monotone_envelope(const std::vector<double>& values);

}  // namespace entrobound
