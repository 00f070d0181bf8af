#include "entrobound/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <sstream>
#include <thread>

#include "entrobound/channels.hpp"
#include "entrobound/ensembles.hpp"

namespace entrobound {

SamplerKind parse_sampler(const std::string& s) {
  if (s == "mixed") return SamplerKind::mixed;
  if (s == "pure") return SamplerKind::pure;
  if (s == "boundary") return SamplerKind::boundary;
  throw ValidationError("unknown sampler '" + s + "' (expected mixed, pure or boundary)");
}

const char* to_string(SamplerKind s) {
  switch (s) {
    case SamplerKind::mixed: return "mixed";
    case SamplerKind::pure: return "pure";
    case SamplerKind::boundary: return "boundary";
  }
  return "unknown";
}

HermitianOperator constraint_hamiltonian(const SpectrumModel& model, const SubsystemShape& shape,
                                         const std::vector<std::size_t>& constrained) {
  if (constrained.empty()) throw ValidationError("at least one constrained factor is required");
  std::vector<bool> mark(shape.size(), false);
  Index dc = 1;
  for (std::size_t k : constrained) {
    if (k >= shape.size()) throw ValidationError("constrained factor index out of range");
    if (mark[k]) throw ValidationError("duplicate constrained factor index");
    mark[k] = true;
    dc *= shape[k];
  }
  const std::vector<double> levels = model.lowest_levels(static_cast<std::size_t>(dc));
  const Index total = shape.total();
  RealVector diag(total);
  for (Index i = 0; i < total; ++i) {
    Index rem = i, stride = total, composite = 0, weight = 1;
    std::vector<Index> digits(shape.size());
    for (std::size_t k = 0; k < shape.size(); ++k) {
      stride /= shape[k];
      digits[k] = rem / stride;
      rem %= stride;
    }
    for (std::size_t k = shape.size(); k-- > 0;) {
      if (!mark[k]) continue;
      composite += digits[k] * weight;
      weight *= shape[k];
    }
    diag[i] = levels[static_cast<std::size_t>(composite)];
  }
  return HermitianOperator::diagonal(diag);
}

// ---------------------------------------------------------------------------

namespace {

constexpr int kRejectionBudget = 10000;

struct EnergyFrame {
  EigenDecomposition eig;
  double emin, emax, flat;
  HermitianOperator h;

  explicit EnergyFrame(const HermitianOperator& op) : eig(eig_hermitian(op)), h(op) {
    emax = eig.values[0];
    emin = eig.values[eig.values.size() - 1];
    flat = op.trace() / static_cast<double>(op.dim());
  }

  double ceiling(double e) const { return e - 1e-12 * std::max(1.0, std::abs(e)); }

  DensityMatrix low_state(double below, Rng& rng) const {
    const double target = emin + rng.uniform(0.1, 0.9) * (below - emin);
    if (target >= flat) return DensityMatrix::maximally_mixed(h.dim());
    return gibbs_state(h, GibbsParameter::at_energy(target));
  }

  DensityMatrix top_state() const {
    const Vector v = eig.vectors.col(0);
    return DensityMatrix::pure(PureStateVector::normalized(v));
  }

  // Random state with energy in [lo, hi].
  DensityMatrix state_in_band(double lo, double hi, Rng& rng) const {
    const Index d = h.dim();
    const Index rank = rng.uniform() < 0.25 ? 1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(d))) : d;
    const DensityMatrix r0 = random_density(d, rng, rank);
    const double e0 = r0.expectation(h);
    if (e0 >= lo && e0 <= hi) return r0;
    if (e0 > hi) {
      const double target = rng.uniform(std::max(lo, emin + 0.5 * (hi - emin)), hi);
      const DensityMatrix low = low_state(target, rng);
      const double el = low.expectation(h);
      const double s = std::clamp((e0 - target) / (e0 - el), 0.0, 1.0);
      return mix(1.0 - s, r0, low);
    }
    if (emax < lo) throw ValidationError("sampler: energy band lies above the largest level");
    const double target = rng.uniform(lo, hi);
    const double s = std::clamp((target - e0) / (emax - e0), 0.0, 1.0);
    return mix(1.0 - s, r0, top_state());
  }
};

std::pair<double, double> band(const EnergyFrame& f, double energy, SamplerKind sampler) {
  const double hi = f.ceiling(energy);
  if (sampler != SamplerKind::boundary) return {f.emin, hi};
  double lo = energy - 0.01 * std::abs(energy);
  if (lo <= f.emin) lo = f.emin + 0.99 * (energy - f.emin);
  return {lo, hi};
}

double distance_fraction(Rng& rng) { return rng.uniform() < 0.5 ? 1.0 : rng.uniform(); }

std::pair<DensityMatrix, DensityMatrix> sample_pure_pair(const EnergyFrame& f, double energy, double epsilon,
                                                         Rng& rng) {
  const Index d = f.h.dim();
  std::vector<double> levels(f.eig.values.data(), f.eig.values.data() + d);
  std::reverse(levels.begin(), levels.end());
  const SpectrumModel model = SpectrumModel::explicit_levels(levels);
  // eigenvalues are descending in f.eig, so level k sits in column d-1-k.
  auto biased = [&](double kappa) {
    Vector a(d);
    for (Index k = 0; k < d; ++k) {
      const double e = f.eig.values[k];
      a[k] = rng.complex_normal() * std::exp(-0.5 * kappa * (e - f.emin));
    }
    return Vector(f.eig.vectors * a);
  };
  const double cap = f.ceiling(energy);
  for (int attempt = 0; attempt < kRejectionBudget; ++attempt) {
    const double target = f.emin + rng.uniform(0.2, 0.8) * (energy - f.emin);
    const double kappa = target >= model.flat_mean() ? 0.0 : solve_lambda(model, target).lambda;
    const Vector u = biased(kappa).normalized();
    Vector w = biased(kappa);
    w -= u * u.dot(w);
    if (w.norm() < 1e-12) continue;
    w.normalize();
    const double sin_t = epsilon * distance_fraction(rng) * (1.0 - 1e-12);
    const Vector v = std::sqrt(1.0 - sin_t * sin_t) * u + sin_t * w;
    const PureStateVector pu = PureStateVector::normalized(u), pv = PureStateVector::normalized(v);
    const DensityMatrix rho = DensityMatrix::pure(pu), sigma = DensityMatrix::pure(pv);
    if (rho.expectation(f.h) > cap || sigma.expectation(f.h) > cap) continue;
    if (trace_distance(rho, sigma) > epsilon) continue;
    return {rho, sigma};
  }
  throw NumericalError("sampler: rejection budget of 10^4 draws exhausted for the pure-state sampler at E = " +
                       std::to_string(energy));
}

}  // namespace

std::pair<DensityMatrix, DensityMatrix> sample_constrained_pair(const HermitianOperator& h, double energy,
                                                                double epsilon, SamplerKind sampler, Rng& rng) {
  const EnergyFrame f(h);
  if (!(energy > f.emin)) throw ValidationError("sampler: E must exceed the lowest level " + std::to_string(f.emin));
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ValidationError("sampler: epsilon outside [0, 1]");
  if (sampler == SamplerKind::pure) {
    if (epsilon == 0.0) {
      auto [rho, sigma] = sample_pure_pair(f, energy, 0.5, rng);
      (void)sigma;
      return {rho, rho};
    }
    return sample_pure_pair(f, energy, epsilon, rng);
  }
  const auto [lo, hi] = band(f, energy, sampler);
  for (int attempt = 0; attempt < kRejectionBudget; ++attempt) {
    DensityMatrix rho = f.state_in_band(lo, hi, rng);
    if (epsilon == 0.0) return {rho, rho};
    const DensityMatrix nu = f.state_in_band(lo, hi, rng);
    const double t_rn = trace_distance(rho, nu);
    if (t_rn <= 0.0) continue;
    const double t = std::min(1.0, epsilon * distance_fraction(rng) * (1.0 - 1e-12) / t_rn);
    DensityMatrix sigma = mix(1.0 - t, rho, nu);
    const double er = rho.expectation(h), es = sigma.expectation(h);
    if (er > energy || es > energy) continue;
    if (sampler == SamplerKind::boundary && (er < lo || es < lo)) continue;
    if (trace_distance(rho, sigma) > epsilon) continue;
    return {std::move(rho), std::move(sigma)};
  }
  throw NumericalError("sampler: rejection budget of 10^4 draws exhausted at E = " + std::to_string(energy));
}

// ---------------------------------------------------------------------------

void SweepConfig::validate() const {
  const BoundDescriptor desc = preset(quantity);
  (void)desc;
  SubsystemShape s(shape);
  if (s.total() < 2) throw ValidationError("config: joint dimension must be at least 2");
  for (std::size_t k : constrained)
    if (k >= s.size()) throw ValidationError("config: constrained factor index out of range");
  if (constrained.empty()) throw ValidationError("config: constrained factor list is empty");
  if (!(energy > spectrum.ground_energy()))
    throw ValidationError("config: energy must exceed the ground energy " + std::to_string(spectrum.ground_energy()));
  if (epsilons.empty()) throw ValidationError("config: epsilon schedule is empty");
  for (double e : epsilons)
    if (!(e >= 0.0 && e <= 0.5)) throw ValidationError("config: epsilon " + std::to_string(e) + " outside [0, 1/2]");
  if (trials == 0) throw ValidationError("config: trials must be positive");
  if (!(bound_scale > 0.0)) throw ValidationError("config: bound_scale must be positive");
  if (quantity == "cond-entropy" && s.size() != 2) throw ValidationError("config: cond-entropy needs a bipartite shape");
  if (quantity == "mutual-info" && s.size() != 3)
    throw ValidationError("config: mutual-info needs a tripartite shape A, B, C");
  if (quantity == "channel-mi" && s.size() > 2) throw ValidationError("config: channel-mi needs shape [A] or [A, C]");
  if ((quantity == "channel-mi" || quantity == "holevo") && (constrained.size() != 1 || constrained[0] != 0))
    throw ValidationError("config: the channel input (factor 0) must be the constrained factor");
  if (quantity == "holevo") {
    if (s.size() != 1) throw ValidationError("config: holevo needs a single-factor shape");
    if (sampler == SamplerKind::pure) throw ValidationError("config: holevo has no pure-state variant");
    if (ensemble_size < 1 || ensemble_size > static_cast<std::size_t>(kTransportCap))
      throw ValidationError("config: ensemble_size outside [1, 12]");
  }
}

unsigned worker_count() {
  if (const char* env = std::getenv("ENTROBOUND_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct SweepContext {
  const SweepConfig& cfg;
  SubsystemShape shape;
  HermitianOperator h;
  SpectrumModel h_model;
  std::vector<Channel> zoo;
  std::vector<BoundResult> bounds;
};

double quantity_value(const SweepContext& ctx, const DensityMatrix& rho, const Channel* channel) {
  const std::string& q = ctx.cfg.quantity;
  if (q == "entropy") return von_neumann_entropy(partial_trace(rho, ctx.shape, ctx.cfg.constrained));
  if (q == "cond-entropy") return conditional_entropy_ext(rho, ctx.shape);
  if (q == "mutual-info") {
    const DensityMatrix ab = partial_trace(rho, ctx.shape, {0, 1});
    return mutual_information(ab, SubsystemShape{ctx.shape[0], ctx.shape[1]});
  }
  if (q == "ree") return gibbs_red(rho, ctx.h, ctx.h_model).value();
  if (q == "channel-mi") {
    if (ctx.shape.size() == 1) return channel_mi(*channel, rho);
    SubsystemShape out;
    const DensityMatrix bc = apply_local(*channel, rho, ctx.shape, 0, &out);
    return mutual_information(bc, out);
  }
  throw ValidationError("unsupported quantity '" + q + "'");
}

std::pair<Ensemble, Ensemble> sample_ensembles(const SweepContext& ctx, double epsilon, Rng& rng) {
  const EnergyFrame f(ctx.h);
  const auto [lo, hi] = band(f, ctx.cfg.energy, ctx.cfg.sampler);
  const std::size_t n = ctx.cfg.ensemble_size;
  auto draw = [&]() {
    std::vector<double> w(n);
    double s = 0.0;
    for (auto& x : w) s += (x = 0.05 + rng.uniform());
    for (auto& x : w) x /= s;
    std::vector<DensityMatrix> states;
    for (std::size_t i = 0; i < n; ++i) states.push_back(f.state_in_band(lo, hi, rng));
    return Ensemble(std::move(w), std::move(states));
  };
  for (int attempt = 0; attempt < kRejectionBudget; ++attempt) {
    Ensemble mu = draw();
    if (epsilon == 0.0) return {mu, mu};
    const Ensemble nu1 = draw();
    const double base = d0(mu, nu1);
    if (base <= 0.0) continue;
    const double t = std::min(1.0, epsilon * distance_fraction(rng) * (1.0 - 1e-12) / base);
    std::vector<double> q(n);
    std::vector<DensityMatrix> states;
    for (std::size_t i = 0; i < n; ++i) {
      const Matrix m = (1.0 - t) * mu.weight(i) * mu.state(i).matrix() + t * nu1.weight(i) * nu1.state(i).matrix();
      q[i] = m.trace().real();
      states.push_back(DensityMatrix::from_positive(m / q[i]));
    }
    double qs = 0.0;
    for (double x : q) qs += x;
    for (double& x : q) x /= qs;
    Ensemble nu(std::move(q), std::move(states));
    if (average_energy(mu, ctx.h) > ctx.cfg.energy || average_energy(nu, ctx.h) > ctx.cfg.energy) continue;
    if (d0(mu, nu) > epsilon) continue;
    return {std::move(mu), std::move(nu)};
  }
  throw NumericalError("sampler: rejection budget of 10^4 draws exhausted for ensembles");
}

SweepRow run_trial(const SweepContext& ctx, std::size_t eps_index, std::size_t trial) {
  const SweepConfig& cfg = ctx.cfg;
  const double epsilon = cfg.epsilons[eps_index];
  Rng rng = derived_rng(cfg.seed, eps_index, trial);
  const std::size_t global = eps_index * cfg.trials + trial;
  const BoundResult& b = ctx.bounds[eps_index];

  SweepRow row{global, epsilon, cfg.energy, 0.0, 0.0, 0.0, b.value * cfg.bound_scale, 0.0, b.tail_bound, ""};
  const Channel* channel = nullptr;
  if (!ctx.zoo.empty()) {
    channel = &ctx.zoo[global % ctx.zoo.size()];
    row.channel = channel->name();
  }
  if (cfg.quantity == "holevo") {
    const auto [mu, nu] = sample_ensembles(ctx, epsilon, rng);
    row.f_rho = output_holevo(*channel, mu);
    row.f_sigma = output_holevo(*channel, nu);
  } else {
    const auto [rho, sigma] = sample_constrained_pair(ctx.h, cfg.energy, epsilon, cfg.sampler, rng);
    row.f_rho = quantity_value(ctx, rho, channel);
    row.f_sigma = quantity_value(ctx, sigma, channel);
  }
  row.abs_diff = std::abs(row.f_rho - row.f_sigma);
  row.margin = row.bound - row.abs_diff;
  return row;
}

}  // namespace

SweepReport run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const SubsystemShape shape(cfg.shape);
  const HermitianOperator h = constraint_hamiltonian(cfg.spectrum, shape, cfg.constrained);
  SweepContext ctx{cfg, shape, h, SpectrumModel::from_operator(h), {}, {}};
  if (cfg.quantity == "channel-mi" || cfg.quantity == "holevo") ctx.zoo = channel_zoo(shape[0]);

  BoundDescriptor desc = preset(cfg.quantity);
  desc.pure_state = cfg.sampler == SamplerKind::pure;
  for (double e : cfg.epsilons) ctx.bounds.push_back(eval_prop1(desc, cfg.spectrum, e, cfg.energy));

  const std::size_t total = cfg.epsilons.size() * cfg.trials;
  std::vector<SweepRow> rows(total);
  std::vector<std::exception_ptr> errors(total);
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t k; (k = next.fetch_add(1)) < total;) {
      try {
        rows[k] = run_trial(ctx, k / cfg.trials, k % cfg.trials);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const unsigned n_workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(total));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < n_workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  SweepReport report;
  report.rows = std::move(rows);
  SweepSummary& s = report.summary;
  s.rows = total;
  s.min_margin = std::numeric_limits<double>::infinity();
  double margin_sum = 0.0;
  for (const SweepRow& r : report.rows) {
    if (r.margin < -kViolationTol && -r.margin <= r.tail_bound * cfg.bound_scale) {
      std::ostringstream os;
      os.precision(6);
      os << "truncation tail " << r.tail_bound << " could flip the margin " << r.margin << " of trial " << r.trial;
      throw NumericalError(os.str());
    }
    const bool violated = r.margin < -kViolationTol;
    if (violated) ++s.violations;
    if (!r.channel.empty()) {
      ++s.rows_by_channel[r.channel];
      if (violated) ++s.violations_by_channel[r.channel];
      else s.violations_by_channel.try_emplace(r.channel, 0);
    }
    s.min_margin = std::min(s.min_margin, r.margin);
    margin_sum += r.margin;
  }
  s.mean_margin = margin_sum / static_cast<double>(total);
  s.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& laa_quantities() {
  static const std::vector<std::string> q = {"entropy", "cond-entropy-ext", "mutual-info", "relative-entropy",
                                             "gibbs-red"};
  return q;
}

namespace {

DensityMatrix random_state_mixed_rank(Index d, Rng& rng) {
  const Index rank = rng.uniform() < 0.3 ? 1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(d))) : d;
  return random_density(d, rng, rank);
}

// Random state supported on the range of the first `r` columns of u.
DensityMatrix random_state_in(const Matrix& u, Index r, Rng& rng) {
  const DensityMatrix small = random_density(r, rng);
  const Matrix basis = u.leftCols(r);
  return DensityMatrix::from_positive(basis * small.matrix() * basis.adjoint());
}

}  // namespace

LaaReport laa_check(const std::string& quantity, Index dim, std::size_t trials, std::uint64_t seed) {
  if (std::find(laa_quantities().begin(), laa_quantities().end(), quantity) == laa_quantities().end())
    throw ValidationError("laa-check: unknown quantity '" + quantity + "'");
  if (dim < 2) throw ValidationError("laa-check: dimension must be at least 2");
  if (trials == 0) throw ValidationError("laa-check: trials must be positive");

  LaaReport rep;
  rep.quantity = quantity;
  rep.dim = dim;
  rep.trials = trials;
  rep.min_slack = std::numeric_limits<double>::infinity();
  constexpr double tol = 1e-8;

  const SubsystemShape bip{dim, 2};
  std::vector<double> osc(static_cast<std::size_t>(dim));
  for (Index n = 0; n < dim; ++n) osc[static_cast<std::size_t>(n)] = static_cast<double>(n) + 0.5;
  const HermitianOperator hosc = HermitianOperator::diagonal(RealVector::Map(osc.data(), dim));
  const SpectrumModel mosc = SpectrumModel::explicit_levels(osc);

  auto record = [&](double slack) {
    rep.min_slack = std::min(rep.min_slack, slack);
    if (slack < -tol) ++rep.violations;
  };

  const std::uint64_t stream = std::hash<std::string>{}(quantity) & 0xFFFFFFFFu;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = derived_rng(seed, stream ^ static_cast<std::uint64_t>(dim) << 32, t);
    const double p = rng.uniform(1e-3, 1.0 - 1e-3);
    const double hp = h2(p);
    if (quantity == "entropy" || quantity == "cond-entropy-ext" || quantity == "mutual-info") {
      const Index d = quantity == "entropy" ? dim : 2 * dim;
      const DensityMatrix rho = random_state_mixed_rank(d, rng), sigma = random_state_mixed_rank(d, rng);
      const DensityMatrix m = mix(p, rho, sigma);
      auto f = [&](const DensityMatrix& x) {
        if (quantity == "entropy") return von_neumann_entropy(x);
        if (quantity == "cond-entropy-ext") return conditional_entropy_ext(x, bip);
        return mutual_information(x, bip);
      };
      const double gap = f(m) - p * f(rho) - (1.0 - p) * f(sigma);
      if (quantity == "mutual-info")
        record(hp - std::abs(gap));
      else
        record(std::min(gap, hp - gap));
    } else if (quantity == "relative-entropy") {
      const Matrix u = random_unitary(dim, rng);
      const bool deficient = rng.uniform() < 0.25;
      const Index r = deficient ? dim - 1 : dim;
      const DensityMatrix omega = random_state_in(u, r, rng);
      auto draw = [&]() { return deficient && rng.uniform() < 0.5 ? random_state_in(u, r, rng) : random_state_mixed_rank(dim, rng); };
      const DensityMatrix rho = draw(), sigma = draw();
      const ExtendedReal lhs = relative_entropy(mix(p, rho, sigma), omega);
      const ExtendedReal a = relative_entropy(rho, omega), b = relative_entropy(sigma, omega);
      const ExtendedReal avg = p * a + (1.0 - p) * b;
      if (lhs.is_infinite() || avg.is_infinite()) {
        if (lhs.is_infinite() != avg.is_infinite()) {
          ++rep.violations;
          rep.min_slack = -std::numeric_limits<double>::infinity();
        } else {
          ++rep.infinite_cases;
        }
        continue;
      }
      record(lhs.value() - avg.value() + hp);  // lower direction
      record(avg.value() - lhs.value());       // convexity
    } else {  // gibbs-red
      const DensityMatrix rho = random_state_mixed_rank(dim, rng), sigma = random_state_mixed_rank(dim, rng);
      const double lhs = gibbs_red(mix(p, rho, sigma), hosc, mosc).value();
      const double avg = p * gibbs_red(rho, hosc, mosc).value() + (1.0 - p) * gibbs_red(sigma, hosc, mosc).value();
      record(lhs - avg + hp);
      const double excess = lhs - avg;
      if (excess > tol) {
        ++rep.upper_exceedances;
        rep.max_upper_excess = std::max(rep.max_upper_excess, excess);
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

std::vector<double> log_grid(double lambda_min, double lambda_max, std::size_t points) {
  if (!(lambda_min > 0.0 && lambda_max > lambda_min)) throw ValidationError("grid: need 0 < lambda_min < lambda_max");
  if (points < 2) throw ValidationError("grid: need at least 2 points");
  std::vector<double> g(points);
  const double r = std::log(lambda_min / lambda_max);
  for (std::size_t i = 0; i < points; ++i)
    g[i] = lambda_max * std::exp(r * static_cast<double>(i) / static_cast<double>(points - 1));
  g.back() = lambda_min;
  return g;
}

Lemma2Report lemma2_diagnostic(double q, const std::vector<double>& grid) {
  if (!(q > 1.0)) throw ValidationError("lemma2: q must exceed 1 (the partition series diverges otherwise)");
  for (double l : grid)
    if (!(l > 0.0 && l <= 1.0)) throw ValidationError("lemma2: grid points must lie in (0, 1]");
  Lemma2Report r{q, hcond_diagnostic(SpectrumModel::log_power(q, kLemma2Truncation), grid), {}, {}};
  const double half_sqrt_pi = std::sqrt(std::numbers::pi) / 2.0;
  for (double l : grid) {
    if (q <= 2.0) {
      const double shift = q < 2.0 ? l : 0.0;
      r.appendix_lower.push_back(l * (std::log(half_sqrt_pi) - 0.5 * std::log(l) + 0.25 / l - shift));
    } else {
      const double a = std::pow(l, -1.0 / q);
      const double inner = (std::expm1(a) / a) + std::sqrt(std::numbers::pi) * std::exp(0.25 * a * a);
      r.appendix_upper.push_back(l * std::log1p(a * inner));
    }
  }
  return r;
}

}  // namespace entrobound
