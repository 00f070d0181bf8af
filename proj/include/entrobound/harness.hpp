#pragma once

// Randomized certification: constrained samplers, bound sweeps, local
// almost-affinity checks and the log-power growth diagnostic.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "entrobound/bounds.hpp"
#include "entrobound/gibbs.hpp"
#include "entrobound/random.hpp"

namespace entrobound {

enum class SamplerKind { mixed, pure, boundary };
SamplerKind parse_sampler(const std::string& s);
const char* to_string(SamplerKind s);

/// Diagonal Hamiltonian on the joint space of `shape` whose entry at a
/// basis index is the model level of the composite index over the
/// constrained factors (identity on the other factors).
HermitianOperator constraint_hamiltonian(const SpectrumModel& model, const SubsystemShape& shape,
                                         const std::vector<std::size_t>& constrained);

/// Pair with Tr H rho <= E, Tr H sigma <= E and trace distance <= eps, all
/// checked after construction. Throws NumericalError when the rejection
/// budget (10^4 draws) is exhausted.
std::pair<DensityMatrix, DensityMatrix> sample_constrained_pair(const HermitianOperator& h, double energy,
                                                                double epsilon, SamplerKind sampler, Rng& rng);

struct SweepConfig {
  std::string quantity = "entropy";
  SpectrumModel spectrum = SpectrumModel::oscillator({1.0});
  std::vector<Index> shape{16};
  std::vector<std::size_t> constrained{0};
  double energy = 2.0;
  std::vector<double> epsilons{0.01, 0.05, 0.1};
  std::size_t trials = 200;
  SamplerKind sampler = SamplerKind::mixed;
  std::uint64_t seed = 1;
  std::size_t ensemble_size = 4;
  /// Multiplies every bound; values below 1 inject faults for testing.
  double bound_scale = 1.0;

  void validate() const;
};

struct SweepRow {
  std::size_t trial;
  double epsilon;
  double energy;
  double f_rho;
  double f_sigma;
  double abs_diff;
  double bound;
  double margin;
  double tail_bound;
  std::string channel;  // empty unless the quantity runs over channels
};

struct SweepSummary {
  std::size_t rows = 0;
  std::size_t violations = 0;
  double min_margin = 0.0;
  double mean_margin = 0.0;
  double runtime_seconds = 0.0;
  std::map<std::string, std::size_t> violations_by_channel;
  std::map<std::string, std::size_t> rows_by_channel;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  SweepSummary summary;
};

inline constexpr double kViolationTol = 1e-9;

/// Runs every (epsilon, trial) pair; trials are distributed over
/// worker_count() threads and rows are kept in trial order.
SweepReport run_sweep(const SweepConfig& config);

/// ENTROBOUND_THREADS if set, else hardware concurrency.
unsigned worker_count();

struct LaaReport {
  std::string quantity;
  Index dim = 0;
  std::size_t trials = 0;
  std::size_t violations = 0;
  double min_slack = 0.0;    // over the enforced inequalities
  std::size_t infinite_cases = 0;
  /// Convexity direction for the Gibbs-family distance: reported only.
  std::size_t upper_exceedances = 0;
  double max_upper_excess = 0.0;
};

/// quantity: entropy, cond-entropy-ext, mutual-info, relative-entropy, gibbs-red.
LaaReport laa_check(const std::string& quantity, Index dim, std::size_t trials, std::uint64_t seed);
const std::vector<std::string>& laa_quantities();

struct Lemma2Report {
  double q;
  HcondReport diagnostic;
  /// q <= 2: lambda ln of the certified lower bound of the partition sum.
  std::vector<double> appendix_lower;
  /// q > 2: lambda ln(1 + certified upper bound of the integral).
  std::vector<double> appendix_upper;
};

inline constexpr std::size_t kLemma2Truncation = std::size_t{1} << 20;

Lemma2Report lemma2_diagnostic(double q, const std::vector<double>& lambda_grid);
/// k points log-spaced from lambda_max down to lambda_min.
std::vector<double> log_grid(double lambda_min, double lambda_max, std::size_t points);

}  // namespace entrobound
