#include "entrobound/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <set>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace entrobound {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double log1pexp(double t) { return t > 0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

void require_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw DomainError("lambda must be positive and finite, got " + std::to_string(lambda));
}

double logpower_level(double q, std::size_t k) {
  const double l = std::log(static_cast<double>(k));
  return l > 0.0 ? std::pow(l, q) : 0.0;
}

// ln of the integral of exp(u - lambda u^q) over [a, inf), a >= 0.
double log_tail_integral(double q, double lambda, double a) {
  const double peak = std::pow(1.0 / (lambda * q), 1.0 / (q - 1.0));
  auto h = [q, lambda](double u) { return u - lambda * std::pow(u, q); };
  const double top = std::max(a, peak);
  const double m = h(top);
  auto f = [&](double u) { return std::exp(h(u) - m); };
  double total = 0.0;
  if (peak > a) total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, peak, 15, 1e-12);
  boost::math::quadrature::exp_sinh<double> right;
  total += right.integrate([&](double t) { return f(top + t); }, 0.0, std::numeric_limits<double>::infinity());
  return m + std::log(total);
}

struct Series {
  double log_z;
  double mean;
  double log_z_tail;
  double mean_tail;
};

Series explicit_series(const std::vector<double>& levels, std::size_t n, double lambda) {
  const double e0 = levels.front();
  double s = 0.0, m = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double w = std::exp(-lambda * (levels[k] - e0));
    s += w;
    m += levels[k] * w;
  }
  double r = 0.0, mr = 0.0;
  for (std::size_t k = n; k < levels.size(); ++k) {
    const double w = std::exp(-lambda * (levels[k] - e0));
    r += w;
    mr += levels[k] * w;
  }
  const double mean = m / s;
  return {-lambda * e0 + std::log(s), mean, std::log1p(r / s), std::abs(mr - mean * r) / (s + r)};
}

Series oscillator_series(const std::vector<double>& hw, std::size_t n, double lambda) {
  Series out{0.0, 0.0, 0.0, 0.0};
  const double nd = static_cast<double>(n);
  for (double w : hw) {
    const double a = lambda * w;
    out.log_z += -0.5 * a + std::log(-std::expm1(-a * nd)) - std::log(-std::expm1(-a));
    const double missing = nd / std::expm1(a * nd);
    out.mean += w * (0.5 + 1.0 / std::expm1(a) - missing);
    out.log_z_tail += -std::log1p(-std::exp(-a * nd));
    out.mean_tail += w * missing;
  }
  return out;
}

Series logpower_series(double q, const std::vector<double>& table, double lambda) {
  double s = 0.0, m = 0.0;
  for (double e : table) {
    const double w = std::exp(-lambda * e);
    s += w;
    m += e * w;
  }
  const double log_s = std::log(s);
  // Summand decreasing in k, so the omitted sum is at most the integral over [N, inf).
  const double log_r = log_tail_integral(q, lambda, std::log(static_cast<double>(table.size())));
  const double tail = log1pexp(log_r - log_s);
  // Rough companion estimate for the mean: integrand ln^q x exp(-lambda ln^q x).
  const double a = std::log(static_cast<double>(table.size()));
  const double mean_tail = std::exp(log_r - log_s) * std::max(std::pow(a, q), 1.0 / lambda);
  return {log_s, m / s, tail, std::isfinite(mean_tail) ? mean_tail : std::numeric_limits<double>::infinity()};
}

}  // namespace

// ---------------------------------------------------------------------------

struct LogPowerTable {
  static std::vector<double> build(double q, std::size_t n) {
    std::vector<double> t(n);
    for (std::size_t k = 1; k <= n; ++k) t[k - 1] = logpower_level(q, k);
    return t;
  }
};

SpectrumModel SpectrumModel::explicit_levels(std::vector<double> levels, std::size_t truncation) {
  if (levels.empty()) throw ValidationError("spectrum: explicit level list is empty");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!std::isfinite(levels[i])) throw ValidationError("spectrum: level " + std::to_string(i) + " is not finite");
    if (i > 0 && levels[i] < levels[i - 1])
      throw ValidationError("spectrum: levels must be nondecreasing (index " + std::to_string(i) + ")");
  }
  const std::size_t n = truncation == 0 ? levels.size() : std::min(truncation, levels.size());
  return SpectrumModel(ExplicitLevels{std::move(levels)}, n);
}

SpectrumModel SpectrumModel::oscillator(std::vector<double> hbar_omega, std::size_t truncation) {
  if (hbar_omega.empty()) throw ValidationError("spectrum: oscillator needs at least one mode");
  for (double w : hbar_omega)
    if (!(w > 0.0) || !std::isfinite(w)) throw ValidationError("spectrum: hbar_omega must be positive");
  if (truncation < 1) throw ValidationError("spectrum: truncation must be positive");
  return SpectrumModel(OscillatorModes{std::move(hbar_omega)}, truncation);
}

SpectrumModel SpectrumModel::log_power(double q, std::size_t truncation) {
  if (!(q > 1.0) || !std::isfinite(q))
    throw ValidationError("spectrum: log-power exponent q must exceed 1 (series diverges otherwise)");
  if (truncation < 1) throw ValidationError("spectrum: truncation must be positive");
  return SpectrumModel(LogPower{q}, truncation);
}

SpectrumModel SpectrumModel::from_operator(const HermitianOperator& h) {
  RealVector ev = eigenvalues(h);
  std::vector<double> levels(ev.data(), ev.data() + ev.size());
  std::reverse(levels.begin(), levels.end());
  return explicit_levels(std::move(levels));
}

bool SpectrumModel::is_finite() const {
  if (const auto* e = std::get_if<ExplicitLevels>(&kind_)) return truncation_ >= e->levels.size();
  return false;
}

double SpectrumModel::ground_energy() const {
  return std::visit(overloaded{
                        [](const ExplicitLevels& e) { return e.levels.front(); },
                        [](const OscillatorModes& o) {
                          double s = 0.0;
                          for (double w : o.hbar_omega) s += 0.5 * w;
                          return s;
                        },
                        [](const LogPower&) { return 0.0; },
                    },
                    kind_);
}

std::size_t SpectrumModel::ground_multiplicity() const {
  if (const auto* e = std::get_if<ExplicitLevels>(&kind_)) {
    const double e0 = e->levels.front();
    const double tol = 1e-12 * std::max(1.0, std::abs(e0));
    std::size_t m = 0;
    for (std::size_t k = 0; k < truncation_ && e->levels[k] - e0 <= tol; ++k) ++m;
    return m;
  }
  return 1;
}

double SpectrumModel::flat_mean() const {
  return std::visit(overloaded{
                        [this](const ExplicitLevels& e) {
                          double s = 0.0;
                          for (std::size_t k = 0; k < truncation_; ++k) s += e.levels[k];
                          return s / static_cast<double>(truncation_);
                        },
                        [this](const OscillatorModes& o) {
                          double s = 0.0;
                          for (double w : o.hbar_omega) s += w * 0.5 * static_cast<double>(truncation_);
                          return s;
                        },
                        [this](const LogPower& l) {
                          double s = 0.0;
                          for (std::size_t k = 1; k <= truncation_; ++k) s += logpower_level(l.q, k);
                          return s / static_cast<double>(truncation_);
                        },
                    },
                    kind_);
}

std::string SpectrumModel::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const ExplicitLevels& e) { os << "explicit(" << e.levels.size() << " levels"; },
                 [&](const OscillatorModes& o) {
                   os << "oscillator(hbar_omega=[";
                   for (std::size_t i = 0; i < o.hbar_omega.size(); ++i) os << (i ? "," : "") << o.hbar_omega[i];
                   os << "]";
                 },
                 [&](const LogPower& l) { os << "logpower(q=" << l.q; },
             },
             kind_);
  os << ", N=" << truncation_ << ")";
  return os.str();
}

std::vector<double> SpectrumModel::lowest_levels(std::size_t count) const {
  return std::visit(
      overloaded{
          [&](const ExplicitLevels& e) {
            if (count > e.levels.size())
              throw ValidationError("spectrum: requested " + std::to_string(count) + " levels, only " +
                                    std::to_string(e.levels.size()) + " available");
            return std::vector<double>(e.levels.begin(), e.levels.begin() + static_cast<std::ptrdiff_t>(count));
          },
          [&](const OscillatorModes& o) {
            // Best-first enumeration over occupation tuples.
            using Node = std::pair<double, std::vector<std::size_t>>;
            auto energy = [&](const std::vector<std::size_t>& n) {
              double s = 0.0;
              for (std::size_t i = 0; i < n.size(); ++i) s += o.hbar_omega[i] * (static_cast<double>(n[i]) + 0.5);
              return s;
            };
            std::priority_queue<Node, std::vector<Node>, std::greater<>> open;
            std::set<std::vector<std::size_t>> seen;
            std::vector<std::size_t> start(o.hbar_omega.size(), 0);
            open.emplace(energy(start), start);
            seen.insert(start);
            std::vector<double> out;
            while (out.size() < count) {
              auto [e, n] = open.top();
              open.pop();
              out.push_back(e);
              for (std::size_t i = 0; i < n.size(); ++i) {
                auto next = n;
                ++next[i];
                if (seen.insert(next).second) open.emplace(energy(next), next);
              }
            }
            return out;
          },
          [&](const LogPower& l) {
            std::vector<double> out(count);
            for (std::size_t k = 1; k <= count; ++k) out[k - 1] = logpower_level(l.q, k);
            return out;
          },
      },
      kind_);
}

SpectrumModel SpectrumModel::with_truncation(std::size_t n) const {
  return std::visit(overloaded{
                        [n](const ExplicitLevels& e) { return explicit_levels(e.levels, n); },
                        [n](const OscillatorModes& o) { return oscillator(o.hbar_omega, n); },
                        [n](const LogPower& l) { return log_power(l.q, n); },
                    },
                    kind_);
}

// ---------------------------------------------------------------------------

namespace {

Series evaluate(const SpectrumModel& model, double lambda) {
  require_lambda(lambda);
  const std::size_t n = model.truncation();
  return std::visit(overloaded{
                        [&](const ExplicitLevels& e) { return explicit_series(e.levels, n, lambda); },
                        [&](const OscillatorModes& o) { return oscillator_series(o.hbar_omega, n, lambda); },
                        [&](const LogPower& l) {
                          thread_local double cached_q = 0.0;
                          thread_local std::vector<double> table;
                          if (cached_q != l.q || table.size() != n) {
                            table = LogPowerTable::build(l.q, n);
                            cached_q = l.q;
                          }
                          return logpower_series(l.q, table, lambda);
                        },
                    },
                    model.kind());
}

}  // namespace

SeriesValue log_partition(const SpectrumModel& model, double lambda) {
  const Series s = evaluate(model, lambda);
  return {s.log_z, s.log_z_tail};
}

SeriesValue mean_energy(const SpectrumModel& model, double lambda) {
  const Series s = evaluate(model, lambda);
  return {s.mean, s.mean_tail};
}

const char* to_string(GibbsFlag f) {
  switch (f) {
    case GibbsFlag::none: return "none";
    case GibbsFlag::lambda_floor: return "lambda_floor";
    case GibbsFlag::lambda_cap: return "lambda_cap";
    case GibbsFlag::ground: return "ground";
    case GibbsFlag::saturated: return "saturated";
  }
  return "unknown";
}

namespace {

GibbsSolution make_solution(const SpectrumModel& model, double lambda, double energy, GibbsFlag flag) {
  const Series s = evaluate(model, lambda);
  GibbsSolution sol{lambda, energy, lambda * energy + s.log_z, s.log_z_tail, s.log_z, flag};
  if (sol.tail_bound > kTailRelTol * std::abs(sol.F_value)) {
    std::ostringstream os;
    os.precision(6);
    os << "truncation insufficient: tail " << sol.tail_bound << " exceeds " << kTailRelTol
       << " of F = " << sol.F_value << " for " << model.describe() << " at E = " << energy;
    throw NumericalError(os.str());
  }
  return sol;
}

}  // namespace

GibbsSolution solve_lambda(const SpectrumModel& model, double energy) {
  if (!std::isfinite(energy)) throw ValidationError("solve_lambda: energy is not finite");
  const double e0 = model.ground_energy();
  if (energy <= e0) {
    throw ValidationError("below ground energy: E = " + std::to_string(energy) + " <= E0 = " + std::to_string(e0));
  }
  const double tol = 1e-9 * std::max(1.0, std::abs(energy));
  auto mean_at = [&](double l) { return evaluate(model, l).mean; };

  const double ceiling = mean_at(kLambdaMin);
  if (energy > ceiling - tol) {
    if (model.is_finite() && energy <= model.flat_mean() + tol)
      return make_solution(model, kLambdaMin, energy, GibbsFlag::lambda_floor);
    std::ostringstream os;
    os.precision(17);
    if (model.is_finite()) {
      os << "energy " << energy << " exceeds the maximally mixed mean " << model.flat_mean()
         << "; no positive lambda exists";
      throw ValidationError(os.str());
    }
    os << "truncation insufficient: E = " << energy << " above the truncation ceiling " << ceiling << " of "
       << model.describe();
    throw NumericalError(os.str());
  }

  double lo = kLambdaMin, hi = 1.0;
  while (mean_at(hi) > energy) {
    lo = hi;
    hi *= 2.0;
    if (hi >= kLambdaMax) {
      hi = kLambdaMax;
      if (mean_at(hi) > energy) return make_solution(model, kLambdaMax, energy, GibbsFlag::lambda_cap);
      break;
    }
  }

  double best = hi, best_err = std::abs(mean_at(hi) - energy);
  for (int it = 0; it < 400; ++it) {
    const double mid = std::sqrt(lo * hi);
    const double m = mean_at(mid);
    const double err = std::abs(m - energy);
    if (err < best_err) {
      best = mid;
      best_err = err;
    }
    if (err <= tol) break;
    (m > energy ? lo : hi) = mid;
    if (hi / lo - 1.0 < 1e-15) break;
  }
  if (best_err > 1e3 * tol) {
    throw NumericalError("solve_lambda: bisection stalled with mean-energy residual " + std::to_string(best_err));
  }
  return make_solution(model, best, energy, GibbsFlag::none);
}

GibbsSolution F_H_solution(const SpectrumModel& model, double energy) {
  const double e0 = model.ground_energy();
  const double gtol = 1e-12 * std::max(1.0, std::abs(e0));
  if (!(energy >= e0 - gtol)) {
    throw ValidationError("below ground energy: E = " + std::to_string(energy) + " < E0 = " + std::to_string(e0));
  }
  if (energy <= e0 + gtol) {
    const double f = std::log(static_cast<double>(model.ground_multiplicity()));
    return {kLambdaMax, energy, f, 0.0, f - kLambdaMax * energy, GibbsFlag::ground};
  }
  if (model.is_finite() && energy >= model.flat_mean()) {
    const double f = std::log(static_cast<double>(model.truncation()));
    return {0.0, energy, f, 0.0, f, GibbsFlag::saturated};
  }
  return solve_lambda(model, energy);
}

double F_H(const SpectrumModel& model, double energy) { return F_H_solution(model, energy).F_value; }

double F_hat(const std::vector<double>& hbar_omega, double energy) {
  if (hbar_omega.empty()) throw ValidationError("F_hat: no modes");
  double e0 = 0.0, log_prod = 0.0;
  for (double w : hbar_omega) {
    if (!(w > 0.0)) throw ValidationError("F_hat: hbar_omega must be positive");
    e0 += 0.5 * w;
    log_prod += std::log(w);
  }
  if (!(energy > e0)) throw DomainError("F_hat: E must exceed E0 = " + std::to_string(e0));
  const double ell = static_cast<double>(hbar_omega.size());
  const double log_estar = log_prod / ell;
  return ell * (std::log(energy + e0) - std::log(ell) - log_estar) + ell;
}

DensityMatrix gibbs_state(const HermitianOperator& h, GibbsParameter param) {
  const EigenDecomposition e = eig_hermitian(h);
  const Index d = h.dim();
  double lambda = 0.0;
  if (param.kind == GibbsParameter::Kind::lambda) {
    if (!(param.value >= 0.0) || !std::isfinite(param.value))
      throw ValidationError("gibbs_state: lambda must be nonnegative and finite");
    lambda = param.value;
  } else {
    const SpectrumModel model = SpectrumModel::from_operator(h);
    const double energy = param.value;
    const double e0 = model.ground_energy();
    const double top = model.flat_mean();
    const double tol = 1e-12 * std::max(1.0, std::abs(energy));
    if (!(energy > e0)) throw ValidationError("gibbs_state: E must exceed the ground energy " + std::to_string(e0));
    if (energy > top + tol)
      throw ValidationError("gibbs_state: E above the maximally mixed mean " + std::to_string(top));
    lambda = energy >= top - tol ? 0.0 : solve_lambda(model, energy).lambda;
    if (lambda == kLambdaMin && energy >= top - 1e-9 * std::max(1.0, std::abs(energy))) lambda = 0.0;
  }
  const double emin = e.values.minCoeff();
  RealVector w(d);
  for (Index i = 0; i < d; ++i) w[i] = std::exp(-lambda * (e.values[i] - emin));
  w /= w.sum();
  return DensityMatrix::from_positive(e.vectors * w.cast<Complex>().asDiagonal() * e.vectors.adjoint());
}

namespace {

void require_consistent(const HermitianOperator& h, const SpectrumModel& model) {
  const auto* ex = std::get_if<ExplicitLevels>(&model.kind());
  if (!ex || !model.is_finite() || static_cast<Index>(ex->levels.size()) != h.dim())
    throw ValidationError("gibbs_red: model must list exactly the eigenvalues of H");
  RealVector ev = eigenvalues(h).reverse();
  for (Index i = 0; i < h.dim(); ++i) {
    if (std::abs(ev[i] - ex->levels[static_cast<std::size_t>(i)]) > 1e-8 * std::max(1.0, std::abs(ev[i])))
      throw ValidationError("gibbs_red: model level " + std::to_string(i) + " does not match H");
  }
}

}  // namespace

ExtendedReal gibbs_red(const DensityMatrix& rho, const HermitianOperator& h, const SpectrumModel& model) {
  require_consistent(h, model);
  const double energy = rho.expectation(h);
  const GibbsSolution sol = F_H_solution(model, energy);
  // The Gibbs state is diagonal in the eigenbasis of H with exactly known
  // log-weights, so tiny but nonzero weights are not cut off.
  const EigenDecomposition e = eig_hermitian(h);
  const Index d = h.dim();
  const double emin = e.values.minCoeff();
  RealVector logs(d);
  if (sol.flag == GibbsFlag::ground) {
    const double tol = 1e-12 * std::max(1.0, std::abs(emin));
    const double share = -std::log(static_cast<double>(model.ground_multiplicity()));
    for (Index i = 0; i < d; ++i)
      logs[i] = e.values[i] - emin <= tol ? share : -std::numeric_limits<double>::infinity();
  } else {
    const double lambda = sol.flag == GibbsFlag::saturated ? 0.0 : sol.lambda;
    double m = 0.0;
    for (Index i = 0; i < d; ++i) m += std::exp(-lambda * (e.values[i] - emin));
    const double log_z = std::log(m);
    for (Index i = 0; i < d; ++i) logs[i] = -lambda * (e.values[i] - emin) - log_z;
  }
  return relative_entropy_spectral(rho, e.vectors, logs);
}

double gibbs_red_entropic(const DensityMatrix& rho, const HermitianOperator& h, const SpectrumModel& model) {
  require_consistent(h, model);
  return F_H(model, rho.expectation(h)) - von_neumann_entropy(rho);
}

// ---------------------------------------------------------------------------

const char* to_string(HcondVerdict v) {
  switch (v) {
    case HcondVerdict::consistent: return "consistent";
    case HcondVerdict::inconsistent: return "inconsistent";
    case HcondVerdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

double logpower_integral(double q, double lambda) {
  if (!(q > 1.0)) throw DomainError("logpower_integral: q must exceed 1");
  require_lambda(lambda);
  return std::exp(log_tail_integral(q, lambda, 0.0));
}

HcondReport hcond_diagnostic(const SpectrumModel& model, const std::vector<double>& grid) {
  if (grid.size() < 4) throw ValidationError("hcond_diagnostic: grid needs at least 4 points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require_lambda(grid[i]);
    if (i > 0 && !(grid[i] < grid[i - 1])) throw ValidationError("hcond_diagnostic: grid must be strictly decreasing");
  }
  const double e0 = model.ground_energy();
  const auto* lp = std::get_if<LogPower>(&model.kind());

  HcondReport r;
  r.lambdas = grid;
  for (double l : grid) {
    const Series s = evaluate(model, l);
    const double g_shift = s.log_z + l * e0;  // ln sum exp(-l (E_k - E0)) >= 0
    r.lambda_g.push_back(l * g_shift);
    r.lambda_g_tail.push_back(l * s.log_z_tail);
    double lower = l * g_shift;
    if (lp && lp->q <= 2.0) {
      // Full sum >= integral over [1, inf) = int_0^inf exp(u - l u^q) du, and
      // u^q <= u^2 + [q < 2] for u >= 0, then complete the square.
      const double shift = lp->q < 2.0 ? l : 0.0;
      const double g_lo = 0.25 / l - shift + std::log(std::sqrt(std::numbers::pi) / 2.0) - 0.5 * std::log(l);
      lower = std::max(lower, l * g_lo);
    }
    r.lambda_g_lower.push_back(lower);
    r.energies.push_back(s.mean);
    const double f = l * s.mean + s.log_z;
    r.F_over_sqrtE.push_back(s.mean > 0.0 ? f / std::sqrt(s.mean) : std::numeric_limits<double>::quiet_NaN());
  }

  std::ostringstream why;
  why.precision(6);
  const double last_lower = r.lambda_g_lower.back();
  const double ratio = r.lambda_g.back() / r.lambda_g.front();
  bool trailing_decreasing = true;
  for (std::size_t i = grid.size() / 2; i + 1 < grid.size(); ++i)
    if (!(r.lambda_g[i + 1] < r.lambda_g[i])) trailing_decreasing = false;

  if (last_lower > 0.1) {
    r.verdict = HcondVerdict::inconsistent;
    why << "certified lower bound " << last_lower << " of lambda*g at lambda = " << grid.back() << " exceeds 0.1";
  } else if (ratio < 0.5 && trailing_decreasing) {
    r.verdict = HcondVerdict::consistent;
    why << "lambda*g falls to " << ratio << " of its first value and decreases over the trailing half of the grid";
  } else {
    r.verdict = HcondVerdict::inconclusive;
    why << "last/first ratio " << ratio << (trailing_decreasing ? "" : ", trailing half not decreasing");
  }
  r.reason = why.str();
  return r;
}

}  // namespace entrobound
