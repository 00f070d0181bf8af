#pragma once

// Energy-constrained entropy maximization over a Hamiltonian given by its
// level sequence: partition functions, lambda(E), F_H(E), Gibbs states.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "entrobound/entropic.hpp"
#include "entrobound/operator_core.hpp"

namespace entrobound {

inline constexpr std::size_t kDefaultTruncation = 4096;
inline constexpr double kLambdaMin = 1e-8;
inline constexpr double kLambdaMax = 1e4;
/// Series results whose tail exceeds this fraction of the value are rejected.
inline constexpr double kTailRelTol = 1e-6;

/// Explicit nondecreasing levels E_0 <= E_1 <= ...
struct ExplicitLevels {
  std::vector<double> levels;
};
/// Independent modes, H = sum_i hw_i (n_i + 1/2).
struct OscillatorModes {
  std::vector<double> hbar_omega;
};
/// E_k = ln^q k for k >= 1.
struct LogPower {
  double q;
};

class SpectrumModel {
 public:
  using Kind = std::variant<ExplicitLevels, OscillatorModes, LogPower>;

  /// truncation == 0 keeps every level (explicit) or uses kDefaultTruncation.
  static SpectrumModel explicit_levels(std::vector<double> levels, std::size_t truncation = 0);
  static SpectrumModel oscillator(std::vector<double> hbar_omega,
                                  std::size_t truncation = kDefaultTruncation);
  static SpectrumModel log_power(double q, std::size_t truncation = kDefaultTruncation);
  /// Explicit levels from the eigenvalues of H, all kept.
  static SpectrumModel from_operator(const HermitianOperator& h);

  const Kind& kind() const { return kind_; }
  /// Levels kept in series evaluations; per mode for oscillators.
  std::size_t truncation() const { return truncation_; }
  /// True when the truncation covers the whole (finite) spectrum.
  bool is_finite() const;
  double ground_energy() const;
  /// Number of levels equal to the ground energy.
  std::size_t ground_multiplicity() const;
  /// Mean energy of the maximally mixed state over the kept levels.
  double flat_mean() const;
  std::string describe() const;

  /// Lowest `count` levels in nondecreasing order (for building diagonal
  /// Hamiltonians on truncated spaces).
  std::vector<double> lowest_levels(std::size_t count) const;

  SpectrumModel with_truncation(std::size_t n) const;

 private:
  SpectrumModel(Kind k, std::size_t n) : kind_(std::move(k)), truncation_(n) {}
  Kind kind_;
  std::size_t truncation_;
};

struct SeriesValue {
  double value;  // over the kept levels
  double tail;   // upper estimate of the omitted contribution
};

/// ln sum_k exp(-lambda E_k) over the kept levels; tail bounds
/// ln(full sum) - value.
SeriesValue log_partition(const SpectrumModel& model, double lambda);
/// Gibbs mean energy over the kept levels; tail bounds the effect of the
/// omitted levels.
SeriesValue mean_energy(const SpectrumModel& model, double lambda);

enum class GibbsFlag { none, lambda_floor, lambda_cap, ground, saturated };
const char* to_string(GibbsFlag f);

struct GibbsSolution {
  double lambda;
  double energy;
  double F_value;
  double tail_bound;  // F_value <= F_exact <= F_value + tail_bound
  double log_partition;
  GibbsFlag flag = GibbsFlag::none;
};

/// Root of mean_energy(lambda) = E by bracketed geometric bisection.
GibbsSolution solve_lambda(const SpectrumModel& model, double energy);

/// sup of H(rho) over Tr H rho <= E, with the truncation tail attached.
GibbsSolution F_H_solution(const SpectrumModel& model, double energy);
double F_H(const SpectrumModel& model, double energy);

/// l ln((E + E0)/(l E*)) + l with E0 = sum hw/2 and E* the geometric mean.
double F_hat(const std::vector<double>& hbar_omega, double energy);

struct GibbsParameter {
  enum class Kind { lambda, energy } kind;
  double value;
  static GibbsParameter at_lambda(double l) { return {Kind::lambda, l}; }
  static GibbsParameter at_energy(double e) { return {Kind::energy, e}; }
};

/// exp(-lambda H) / Tr exp(-lambda H), built in the eigenbasis of H.
DensityMatrix gibbs_state(const HermitianOperator& h, GibbsParameter param);

/// Relative entropy to the energy-matched Gibbs state.
ExtendedReal gibbs_red(const DensityMatrix& rho, const HermitianOperator& h, const SpectrumModel& model);
/// Same quantity as F_H(Tr H rho) - H(rho).
double gibbs_red_entropic(const DensityMatrix& rho, const HermitianOperator& h, const SpectrumModel& model);

enum class HcondVerdict { consistent, inconsistent, inconclusive };
const char* to_string(HcondVerdict v);

struct HcondReport {
  std::vector<double> lambdas;
  std::vector<double> lambda_g;       // lambda * ln Z over the kept levels
  std::vector<double> lambda_g_tail;  // lambda * tail of ln Z
  /// Certified lower bound of lambda * ln Z(lambda) for the full series.
  std::vector<double> lambda_g_lower;
  std::vector<double> energies;     // mean energy at each lambda
  std::vector<double> F_over_sqrtE; // F(E)/sqrt(E) on the matched grid
  HcondVerdict verdict;
  std::string reason;
};

/// Trend diagnostic for [Tr exp(-lambda H)]^lambda -> 1 as lambda -> 0.
HcondReport hcond_diagnostic(const SpectrumModel& model, const std::vector<double>& lambda_grid);

/// Integral of exp(-lambda ln^q x) over [1, inf).
double logpower_integral(double q, double lambda);

}  // namespace entrobound
