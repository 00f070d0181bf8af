#include "entrobound/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>

namespace entrobound {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "expected a finite number");
  return v;
}

std::uint64_t unsigned_int(const Json& j, const std::string& where) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
  fail(where, "expected a nonnegative integer");
}

std::vector<double> numbers(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::string text(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

Eigen::MatrixXd real_block(const Json& j, Index d, const std::string& where) {
  if (!j.is_array() || static_cast<Index>(j.size()) != d) fail(where, "expected " + std::to_string(d) + " rows");
  Eigen::MatrixXd m(d, d);
  for (Index r = 0; r < d; ++r) {
    const std::string row_where = where + "[" + std::to_string(r) + "]";
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != d)
      fail(row_where, "expected " + std::to_string(d) + " entries");
    for (Index c = 0; c < d; ++c)
      m(r, c) = number(row[static_cast<std::size_t>(c)], row_where + "[" + std::to_string(c) + "]");
  }
  return m;
}

Json real_rows(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class F>
auto rethrow_at(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const NumericalError&) {
    throw;
  } catch (const ValidationError& e) {
    fail(where, e.what());
  }
}

}  // namespace

Json load_json(const std::string& source) {
  const auto first = source.find_first_not_of(" \t\r\n");
  const bool inline_text = first != std::string::npos && (source[first] == '{' || source[first] == '[');
  std::string body = source, where = "inline JSON";
  if (!inline_text) {
    std::ifstream in(source, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + source + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    body = ss.str();
    where = "'" + source + "'";
  }
  try {
    return Json::parse(body);
  } catch (const Json::parse_error& e) {
    throw ValidationError("malformed JSON in " + where + ": " + e.what());
  }
}

Json matrix_to_json(const Matrix& m) {
  return Json{{"dim", m.rows()}, {"re", real_rows(m.real())}, {"im", real_rows(m.imag())}};
}

Matrix matrix_from_json(const Json& j, const std::string& where) {
  const std::uint64_t d64 = unsigned_int(field(j, "dim", where), where + ".dim");
  if (d64 == 0) fail(where + ".dim", "must be positive");
  const Index d = static_cast<Index>(d64);
  Matrix m(d, d);
  m.real() = real_block(field(j, "re", where), d, where + ".re");
  if (j.contains("im"))
    m.imag() = real_block(j["im"], d, where + ".im");
  else
    m.imag().setZero();
  return m;
}

DensityMatrix density_from_json(const Json& j, const std::string& where) {
  const Matrix m = matrix_from_json(j, where);
  return rethrow_at(where, [&] { return DensityMatrix(m); });
}

Json ensemble_to_json(const Ensemble& mu) {
  Json states = Json::array();
  for (const auto& s : mu.states()) states.push_back(matrix_to_json(s.matrix()));
  return Json{{"weights", mu.weights()}, {"states", std::move(states)}};
}

Ensemble ensemble_from_json(const Json& j, const std::string& where) {
  std::vector<double> w = numbers(field(j, "weights", where), where + ".weights");
  const Json& s = field(j, "states", where);
  if (!s.is_array()) fail(where + ".states", "expected an array of matrices");
  if (s.size() != w.size()) fail(where, "weights and states differ in length");
  std::vector<DensityMatrix> states;
  for (std::size_t i = 0; i < s.size(); ++i)
    states.push_back(density_from_json(s[i], where + ".states[" + std::to_string(i) + "]"));
  return rethrow_at(where, [&] { return Ensemble(std::move(w), std::move(states)); });
}

Json spectrum_to_json(const SpectrumModel& model) {
  return std::visit(
      [&](const auto& k) -> Json {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ExplicitLevels>)
          return {{"kind", "explicit"}, {"levels", k.levels}, {"truncation", model.truncation()}};
        else if constexpr (std::is_same_v<T, OscillatorModes>)
          return {{"kind", "oscillator"}, {"hbar_omega", k.hbar_omega}, {"truncation", model.truncation()}};
        else
          return {{"kind", "log_power"}, {"q", k.q}, {"truncation", model.truncation()}};
      },
      model.kind());
}

SpectrumModel spectrum_from_json(const Json& j, const std::string& where) {
  const std::string kind = text(field(j, "kind", where), where + ".kind");
  std::size_t trunc = 0;
  if (j.contains("truncation")) {
    trunc = static_cast<std::size_t>(unsigned_int(j["truncation"], where + ".truncation"));
    if (trunc == 0) fail(where + ".truncation", "must be positive");
  }
  if (kind == "explicit") {
    std::vector<double> levels = numbers(field(j, "levels", where), where + ".levels");
    return rethrow_at(where, [&] { return SpectrumModel::explicit_levels(std::move(levels), trunc); });
  }
  if (kind == "oscillator") {
    std::vector<double> w = numbers(field(j, "hbar_omega", where), where + ".hbar_omega");
    return rethrow_at(where,
                      [&] { return SpectrumModel::oscillator(std::move(w), trunc ? trunc : kDefaultTruncation); });
  }
  if (kind == "log_power") {
    const double q = number(field(j, "q", where), where + ".q");
    return rethrow_at(where, [&] { return SpectrumModel::log_power(q, trunc ? trunc : kDefaultTruncation); });
  }
  fail(where + ".kind", "unknown kind '" + kind + "' (expected explicit, oscillator or log_power)");
}

Channel channel_from_json(const Json& j, const std::string& where) {
  if (j.is_object() && j.contains("zoo")) {
    const std::string name = text(j["zoo"], where + ".zoo");
    const Index d = static_cast<Index>(unsigned_int(field(j, "dim", where), where + ".dim"));
    const double p = j.contains("param") ? number(j["param"], where + ".param") : 0.0;
    return rethrow_at(where, [&] {
      if (name == "identity") return Channel::identity(d);
      if (name == "dephasing") return Channel::dephasing(d, p);
      if (name == "depolarizing") return Channel::depolarizing(d, p);
      if (name == "amplitude_damping") return Channel::amplitude_damping(d, p);
      if (name == "attenuator") return Channel::attenuator(d, p);
      throw ValidationError("unknown zoo channel '" + name + "'");
    });
  }
  const Json& k = field(j, "kraus", where);
  if (!k.is_array() || k.empty()) fail(where + ".kraus", "expected a nonempty array of matrices");
  std::vector<Matrix> ops;
  for (std::size_t i = 0; i < k.size(); ++i) ops.push_back(matrix_from_json(k[i], where + ".kraus[" + std::to_string(i) + "]"));
  const std::string name = j.contains("name") ? text(j["name"], where + ".name") : "custom";
  return rethrow_at(where, [&] { return Channel(std::move(ops), name); });
}

Json to_json(const GibbsSolution& s) {
  return {{"lambda", s.lambda},         {"energy", s.energy},
          {"F", s.F_value},             {"tail_bound", s.tail_bound},
          {"log_partition", s.log_partition}, {"flag", to_string(s.flag)}};
}

Json to_json(const BoundResult& b) {
  return {{"value", b.value},
          {"main_term", b.main_term},
          {"g_term", b.g_term},
          {"epsilon", b.epsilon},
          {"epsilon_effective", b.epsilon_effective},
          {"energy", b.energy},
          {"F", b.F_value},
          {"tail_bound", b.tail_bound},
          {"formula", b.formula}};
}

Json to_json(const AfwCertificate& c) {
  return {{"overlap", c.overlap},
          {"delta", c.delta},
          {"epsilon", c.epsilon_used},
          {"energy_cap", c.energy_cap},
          {"energy_tau_plus", c.energy_tau_plus},
          {"energy_tau_minus", c.energy_tau_minus},
          {"bound_exact", c.bound_exact},
          {"bound_2E", c.bound_2E},
          {"mixing_residual", c.mixing_residual},
          {"tau_plus", matrix_to_json(c.tau_plus.matrix())},
          {"tau_minus", matrix_to_json(c.tau_minus.matrix())}};
}

Json to_json(const HcondReport& r) {
  return {{"lambda", r.lambdas},
          {"lambda_g", r.lambda_g},
          {"lambda_g_tail", r.lambda_g_tail},
          {"lambda_g_lower", r.lambda_g_lower},
          {"energy", r.energies},
          {"F_over_sqrtE", r.F_over_sqrtE},
          {"verdict", to_string(r.verdict)},
          {"reason", r.reason}};
}

Json to_json(const LaaReport& r) {
  Json j{{"quantity", r.quantity},
         {"dim", r.dim},
         {"trials", r.trials},
         {"violations", r.violations},
         {"min_slack", std::isfinite(r.min_slack) ? Json(r.min_slack) : Json(nullptr)},
         {"infinite_cases", r.infinite_cases}};
  if (r.quantity == "gibbs-red") {
    j["convexity_exceedances"] = r.upper_exceedances;
    j["max_convexity_excess"] = r.max_upper_excess;
  }
  return j;
}

Json to_json(const Lemma2Report& r) {
  Json j = to_json(r.diagnostic);
  j["q"] = r.q;
  if (!r.appendix_lower.empty()) j["appendix_lower"] = r.appendix_lower;
  if (!r.appendix_upper.empty()) j["appendix_upper"] = r.appendix_upper;
  return j;
}

Json to_json(const SweepSummary& s) {
  Json j{{"rows", s.rows},
         {"violations", s.violations},
         {"min_margin", s.min_margin},
         {"mean_margin", s.mean_margin},
         {"runtime_seconds", s.runtime_seconds}};
  if (!s.rows_by_channel.empty()) {
    Json ch = Json::object();
    for (const auto& [name, n] : s.rows_by_channel)
      ch[name] = {{"rows", n}, {"violations", s.violations_by_channel.at(name)}};
    j["channels"] = std::move(ch);
  }
  return j;
}

Json to_json(const TransportPlan& p) {
  return {{"cost", p.cost}, {"plan", real_rows(p.weights)}};
}

Json config_to_json(const SweepConfig& c) {
  return {{"quantity", c.quantity},
          {"spectrum", spectrum_to_json(c.spectrum)},
          {"shape", c.shape},
          {"constrained", c.constrained},
          {"energy", c.energy},
          {"epsilons", c.epsilons},
          {"trials", c.trials},
          {"sampler", to_string(c.sampler)},
          {"seed", c.seed},
          {"ensemble_size", c.ensemble_size},
          {"bound_scale", c.bound_scale}};
}

SweepConfig config_from_json(const Json& j) {
  const std::string where = "config";
  if (!j.is_object()) fail(where, "expected an object");
  static const std::vector<std::string> known = {"quantity", "spectrum", "shape",         "dim",        "constrained",
                                                 "energy",   "epsilons", "trials",        "sampler",    "seed",
                                                 "ensemble_size", "bound_scale"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(known.begin(), known.end(), key) == known.end()) fail(where, "unknown field '" + key + "'");
  }
  SweepConfig c;
  c.quantity = text(field(j, "quantity", where), "config.quantity");
  rethrow_at("config.quantity", [&] { return preset(c.quantity); });
  c.spectrum = spectrum_from_json(field(j, "spectrum", where), "config.spectrum");
  if (j.contains("shape") && j.contains("dim")) fail(where, "give either 'shape' or 'dim', not both");
  if (j.contains("shape")) {
    const Json& s = j["shape"];
    if (!s.is_array() || s.empty()) fail("config.shape", "expected a nonempty array of dimensions");
    c.shape.clear();
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto d = unsigned_int(s[i], "config.shape[" + std::to_string(i) + "]");
      if (d == 0) fail("config.shape[" + std::to_string(i) + "]", "must be positive");
      c.shape.push_back(static_cast<Index>(d));
    }
  } else if (j.contains("dim")) {
    c.shape = {static_cast<Index>(unsigned_int(j["dim"], "config.dim"))};
  }
  if (j.contains("constrained")) {
    const Json& s = j["constrained"];
    if (!s.is_array()) fail("config.constrained", "expected an array of factor indices");
    c.constrained.clear();
    for (std::size_t i = 0; i < s.size(); ++i)
      c.constrained.push_back(
          static_cast<std::size_t>(unsigned_int(s[i], "config.constrained[" + std::to_string(i) + "]")));
  }
  c.energy = number(field(j, "energy", where), "config.energy");
  c.epsilons = numbers(field(j, "epsilons", where), "config.epsilons");
  if (j.contains("trials")) c.trials = static_cast<std::size_t>(unsigned_int(j["trials"], "config.trials"));
  if (j.contains("sampler"))
    c.sampler = rethrow_at("config.sampler", [&] { return parse_sampler(text(j["sampler"], "config.sampler")); });
  if (j.contains("seed")) c.seed = unsigned_int(j["seed"], "config.seed");
  if (j.contains("ensemble_size"))
    c.ensemble_size = static_cast<std::size_t>(unsigned_int(j["ensemble_size"], "config.ensemble_size"));
  if (j.contains("bound_scale")) c.bound_scale = number(j["bound_scale"], "config.bound_scale");
  c.validate();
  return c;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const SweepConfig& c) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(config_to_json(c).dump())));
  return buf;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_sweep_csv(std::ostream& os, const SweepReport& report, const std::string& hash) {
  os << "# manifest=" << hash << '\n';
  os << "trial,epsilon,E,f_rho,f_sigma,abs_diff,bound,margin,tail_bound\n";
  for (const SweepRow& r : report.rows) {
    os << r.trial << ',' << format_double(r.epsilon) << ',' << format_double(r.energy) << ','
       << format_double(r.f_rho) << ',' << format_double(r.f_sigma) << ',' << format_double(r.abs_diff) << ','
       << format_double(r.bound) << ',' << format_double(r.margin) << ',' << format_double(r.tail_bound) << '\n';
  }
}

Json to_json(const RunManifest& m) {
  return {{"version", m.version},   {"config_hash", m.config_hash}, {"seed", m.seed},
          {"started", m.started},   {"finished", m.finished},       {"outputs", m.outputs}};
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace entrobound
