#pragma once

// JSON and CSV formats shared by the command-line tool.
//
// Matrices: {"dim": d, "re": [[...], ...], "im": [[...], ...]} with "im"
// optional. Spectra: {"kind": "explicit", "levels": [...]},
// {"kind": "oscillator", "hbar_omega": [...]} or {"kind": "log_power", "q": x},
// each with an optional "truncation".

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "json.hpp"

#include "entrobound/afw.hpp"
#include "entrobound/bounds.hpp"
#include "entrobound/channels.hpp"
#include "entrobound/ensembles.hpp"
#include "entrobound/gibbs.hpp"
#include "entrobound/harness.hpp"

namespace entrobound {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "1.0.0";

/// Parses `source` as JSON text when it starts with '{' or '[', otherwise
/// reads it as a file path. Errors name the source.
Json load_json(const std::string& source);

Json matrix_to_json(const Matrix& m);
/// `where` prefixes error messages (e.g. "mu.states[2]").
Matrix matrix_from_json(const Json& j, const std::string& where);
DensityMatrix density_from_json(const Json& j, const std::string& where);

Json ensemble_to_json(const Ensemble& mu);
/// {"weights": [...], "states": [matrix, ...]}
Ensemble ensemble_from_json(const Json& j, const std::string& where);

Json spectrum_to_json(const SpectrumModel& model);
SpectrumModel spectrum_from_json(const Json& j, const std::string& where = "spectrum");

/// {"kraus": [matrix, ...], "name": "..."} or a zoo entry
/// {"zoo": "dephasing", "dim": d, "param": p}.
Channel channel_from_json(const Json& j, const std::string& where = "channel");

Json to_json(const GibbsSolution& s);
Json to_json(const BoundResult& b);
Json to_json(const AfwCertificate& c);
Json to_json(const HcondReport& r);
Json to_json(const LaaReport& r);
Json to_json(const Lemma2Report& r);
Json to_json(const SweepSummary& s);
Json to_json(const TransportPlan& p);

Json config_to_json(const SweepConfig& c);
SweepConfig config_from_json(const Json& j);

std::uint64_t fnv1a64(std::string_view bytes);
/// 16 hex digits of fnv1a64 over the canonical config dump.
std::string config_hash(const SweepConfig& c);

/// Header comment with the manifest hash, the fixed column row, then one row
/// per trial with 17 significant digits.
void write_sweep_csv(std::ostream& os, const SweepReport& report, const std::string& hash);

struct RunManifest {
  std::string version = kToolVersion;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string started;
  std::string finished;
  std::vector<std::string> outputs;
};
Json to_json(const RunManifest& m);
/// UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

/// Shortest representation that round-trips a double.
std::string format_double(double x);

}  // namespace entrobound
