#include "entrobound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace entrobound {

namespace {

void require_epsilon(double epsilon, double upper) {
  if (!(epsilon >= 0.0 && epsilon <= upper))
    throw ValidationError("epsilon = " + std::to_string(epsilon) + " outside [0, " + std::to_string(upper) + "]");
}

const std::map<std::string, BoundDescriptor>& table() {
  static const std::map<std::string, BoundDescriptor> t = {
      {"entropy", {"entropy", 0.0, 1.0, 0.0, 1.0, 1.0, false, "A"}},
      {"cond-entropy", {"cond-entropy", 1.0, 1.0, 0.0, 1.0, 1.0, false, "A"}},
      {"mutual-info", {"mutual-info", 0.0, 2.0, 1.0, 1.0, 2.0, false, "BC"}},
      {"ree", {"ree", 0.0, 1.0, 1.0, 0.0, 1.0, false, "A"}},
      {"channel-mi", {"channel-mi", 0.0, 2.0, 1.0, 1.0, 2.0, false, "A"}},
      {"holevo", {"holevo", 0.0, 2.0, 1.0, 1.0, 2.0, false, "A"}},
  };
  return t;
}

}  // namespace

BoundDescriptor preset(const std::string& id) {
  const auto it = table().find(id);
  if (it == table().end()) throw ValidationError("unknown quantity '" + id + "'");
  return it->second;
}

const std::vector<std::string>& preset_ids() {
  static const std::vector<std::string> ids = {"entropy", "cond-entropy", "mutual-info", "ree", "channel-mi", "holevo"};
  return ids;
}

double effective_epsilon(double epsilon, bool pure_state) { return pure_state ? 0.5 * epsilon * epsilon : epsilon; }

BoundResult eval_theorem1(const Theorem1Inputs& in, double epsilon, double energy) {
  require_epsilon(epsilon, 0.5);
  BoundResult r;
  r.epsilon = epsilon;
  r.energy = energy;
  r.epsilon_effective = effective_epsilon(epsilon, in.pure_state);
  r.formula = "2 sqrt(2e) B(E/e) + (1 + sqrt(2e)) (a + b)(sqrt(2e)/(1 + sqrt(2e)))";
  if (r.epsilon_effective == 0.0) return r;
  const double s = std::sqrt(2.0 * r.epsilon_effective);
  const double scaled = energy / r.epsilon_effective;
  double b_sum;
  if (in.B_plus && in.B_minus) {
    b_sum = in.B_plus(scaled) + in.B_minus(scaled);
  } else {
    if (!in.B) throw ValidationError("eval_theorem1: no B function supplied");
    b_sum = 2.0 * in.B(scaled);
  }
  const double t = s / (1.0 + s);
  r.main_term = s * b_sum;
  r.g_term = (1.0 + s) * (in.a(t) + in.b(t));
  r.value = r.main_term + r.g_term;
  return r;
}

BoundResult eval_prop1(const BoundDescriptor& desc, const SpectrumModel& model, double epsilon, double energy) {
  require_epsilon(epsilon, 0.5);
  BoundResult r;
  r.epsilon = epsilon;
  r.energy = energy;
  r.epsilon_effective = effective_epsilon(epsilon, desc.pure_state);
  r.formula = "(c- + c+) sqrt(2e) F(E/e) + g_mult g(sqrt(2e))";
  if (r.epsilon_effective == 0.0) return r;
  if (!(energy > model.ground_energy()))
    throw ValidationError("energy " + std::to_string(energy) + " must exceed the ground energy " +
                          std::to_string(model.ground_energy()));
  const double s = std::sqrt(2.0 * r.epsilon_effective);
  const GibbsSolution sol = F_H_solution(model, energy / r.epsilon_effective);
  r.F_value = sol.F_value;
  r.tail_bound = (desc.c_minus + desc.c_plus) * s * sol.tail_bound;
  r.main_term = (desc.c_minus + desc.c_plus) * s * sol.F_value;
  r.g_term = desc.g_multiplier * g_func(s);
  r.value = r.main_term + r.g_term;
  return r;
}

BoundResult eval_oscillator(const BoundDescriptor& desc, const std::vector<double>& hbar_omega, double epsilon,
                            double energy) {
  require_epsilon(epsilon, 0.5);
  double e0 = 0.0;
  for (double w : hbar_omega) e0 += 0.5 * w;
  if (!(energy > e0)) throw DomainError("energy must exceed E0 = " + std::to_string(e0));
  BoundResult r;
  r.epsilon = epsilon;
  r.energy = energy;
  r.epsilon_effective = effective_epsilon(epsilon, desc.pure_state);
  r.formula = "(c- + c+) sqrt(2e) l (ln((E/e + E0)/(l E*)) + 1) + g_mult g(sqrt(2e))";
  if (r.epsilon_effective == 0.0) return r;
  const double s = std::sqrt(2.0 * r.epsilon_effective);
  r.F_value = F_hat(hbar_omega, energy / r.epsilon_effective);
  r.main_term = (desc.c_minus + desc.c_plus) * s * r.F_value;
  r.g_term = desc.g_multiplier * g_func(s);
  r.value = r.main_term + r.g_term;
  return r;
}

BoundResult eval_finite_dim(const BoundDescriptor& desc, Index dim_b, double epsilon) {
  require_epsilon(epsilon, 1.0);
  if (dim_b < 1) throw ValidationError("dimension must be positive");
  BoundResult r;
  r.epsilon = epsilon;
  r.epsilon_effective = epsilon;
  r.formula = "(c- + c+) e ln d + (a + b) g(e)";
  r.main_term = (desc.c_minus + desc.c_plus) * epsilon * std::log(static_cast<double>(dim_b));
  r.g_term = (desc.a + desc.b) * g_func(epsilon);
  r.value = r.main_term + r.g_term;
  return r;
}

std::vector<double> monotone_envelope(const std::vector<double>& values) {
  std::vector<double> out(values.size());
  double run = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = run = std::max(run, values[i]);
  return out;
}

}  // namespace entrobound
