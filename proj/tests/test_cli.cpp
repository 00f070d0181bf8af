#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "entrobound/cli.hpp"
#include "entrobound/io.hpp"
#include "test_util.hpp"

using namespace entrobound;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(ENTROBOUND_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

fs::path scratch_dir() {
  const fs::path d = fs::temp_directory_path() / ("entrobound_cli_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

const std::string kOsc = R"({"kind":"oscillator","hbar_omega":[1.0]})";

std::string small_config(double scale) {
  Json j = {{"quantity", "entropy"},
            {"spectrum", Json::parse(kOsc)},
            {"shape", {8}},
            {"constrained", {0}},
            {"energy", 2.0},
            {"epsilons", {0.05, 0.2}},
            {"trials", 10},
            {"sampler", "mixed"},
            {"seed", 3},
            {"bound_scale", scale}};
  return j.dump();
}

}  // namespace

TEST_CASE("gibbs subcommand") {
  const Outcome r = run({"gibbs", "--spectrum", kOsc, "--energy", "1.5"});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["F"].get<double>() == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-9));
  CHECK(j["lambda"].get<double>() == doctest::Approx(std::log(2.0)).epsilon(1e-9));

  const Outcome l = run({"gibbs", "--spectrum", kOsc, "--lambda", "0.6931471805599453"});
  REQUIRE(l.code == kExitOk);
  CHECK(Json::parse(l.out)["energy"].get<double>() == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(run({"gibbs", "--spectrum", kOsc}).code == kExitValidation);
}

TEST_CASE("bound subcommand") {
  const Outcome zero = run({"bound", "--quantity", "entropy", "--epsilon", "0", "--energy", "2", "--spectrum", kOsc});
  REQUIRE(zero.code == kExitOk);
  CHECK(Json::parse(zero.out)["value"].get<double>() == 0.0);

  const Outcome r = run({"bound", "--quantity", "entropy", "--epsilon", "0.08", "--energy", "1.5", "--spectrum", kOsc,
                         "--hat"});
  REQUIRE(r.code == kExitOk);
  CHECK(Json::parse(r.out)["value"].get<double>() ==
        doctest::Approx(0.4 * (std::log(19.25) + 1.0) + g_func(0.4)).epsilon(1e-12));

  const Outcome fd = run({"bound", "--quantity", "entropy", "--epsilon", "1", "--finite-dim", "2", "--bits"});
  REQUIRE(fd.code == kExitOk);
  CHECK(Json::parse(fd.out)["value"].get<double>() == doctest::Approx(3.0));
  CHECK(Json::parse(fd.out)["units"] == "bits");

  CHECK(run({"bound", "--quantity", "nope", "--epsilon", "0.1"}).code == kExitValidation);
}

TEST_CASE("field-level messages for malformed input") {
  const Outcome bad = run({"gibbs", "--spectrum", R"({"kind":"oscillator","hbar_omega":"x"})", "--energy", "1"});
  CHECK(bad.code == kExitValidation);
  CHECK(bad.err.find("spectrum.hbar_omega") != std::string::npos);

  const Outcome broken = run({"gibbs", "--spectrum", R"({"kind":)", "--energy", "1"});
  CHECK(broken.code == kExitValidation);
  CHECK(broken.err.find("malformed JSON") != std::string::npos);

  const Outcome unknown = run({"verify", "--config", R"({"quantity":"entropy","colour":1})", "--out", "/dev/null"});
  CHECK(unknown.code == kExitValidation);
  CHECK(unknown.err.find("colour") != std::string::npos);
}

TEST_CASE("truncation failures map to the numerical exit code") {
  const std::string tiny = R"({"kind":"oscillator","hbar_omega":[1.0],"truncation":8})";
  CHECK(run({"gibbs", "--spectrum", tiny, "--energy", "100"}).code == kExitNumerical);
}

TEST_CASE("verify writes a CSV with manifest and flags injected faults") {
  const fs::path dir = scratch_dir();
  const fs::path csv = dir / "ok.csv";
  const Outcome ok = run({"verify", "--config", small_config(1.0), "--out", csv.string()});
  REQUIRE(ok.code == kExitOk);
  const Json summary = Json::parse(ok.out);
  CHECK(summary["violations"].get<std::size_t>() == 0);

  const std::string text = slurp(csv);
  const std::string hash = summary["config_hash"].get<std::string>();
  CHECK(text.rfind("# manifest=" + hash + "\n", 0) == 0);
  CHECK(text.find("trial,epsilon,E,f_rho,f_sigma,abs_diff,bound,margin,tail_bound\n") != std::string::npos);
  const Json manifest = Json::parse(slurp(dir / "ok.csv.manifest.json"));
  CHECK(manifest["config_hash"] == hash);
  CHECK(manifest["seed"].get<std::uint64_t>() == 3);

  const Outcome bad = run({"verify", "--config", small_config(1e-3), "--out", (dir / "bad.csv").string()});
  CHECK(bad.code == kExitViolation);
  fs::remove_all(dir);
}

TEST_CASE("repeated verify runs give identical CSV bytes") {
  const fs::path dir = scratch_dir();
  REQUIRE(run({"verify", "--config", small_config(1.0), "--out", (dir / "a.csv").string()}).code == kExitOk);
  REQUIRE(run({"verify", "--config", small_config(1.0), "--out", (dir / "b.csv").string()}).code == kExitOk);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  fs::remove_all(dir);
}

TEST_CASE("other subcommands") {
  const Outcome laa = run({"laa-check", "--quantity", "entropy", "--dim", "3", "--trials", "50"});
  CHECK(laa.code == kExitOk);
  CHECK(Json::parse(laa.out)["violations"].get<std::size_t>() == 0);

  const Outcome l2 = run({"lemma2", "--q", "3", "--lambda-min", "0.01", "--points", "6"});
  CHECK(l2.code == kExitOk);

  const std::string mu = R"({"weights":[0.5,0.5],"states":[{"dim":2,"re":[[1,0],[0,0]]},{"dim":2,"re":[[0,0],[0,1]]}]})";
  const std::string nu = R"({"weights":[0.5,0.5],"states":[{"dim":2,"re":[[0,0],[0,1]]},{"dim":2,"re":[[1,0],[0,0]]}]})";
  const Outcome d0 = run({"ensemble-dist", "--mu", mu, "--nu", nu});
  REQUIRE(d0.code == kExitOk);
  CHECK(Json::parse(d0.out)["value"].get<double>() == doctest::Approx(1.0));
  const Outcome ds = run({"ensemble-dist", "--mu", mu, "--nu", nu, "--metric", "dstar"});
  REQUIRE(ds.code == kExitOk);
  CHECK(Json::parse(ds.out)["value"].get<double>() == doctest::Approx(0.0));

  const Outcome afw = run({"afw", "--rho", R"({"dim":2,"re":[[0.9,0],[0,0.1]]})", "--sigma",
                           R"({"dim":2,"re":[[0.8,0],[0,0.2]]})", "--hamiltonian", R"({"dim":2,"re":[[0,0],[0,1]]})",
                           "--energy", "0.2", "--epsilon", "0.1"});
  REQUIRE(afw.code == kExitOk);
  CHECK(Json::parse(afw.out)["mixing_residual"].get<double>() <= 1e-9);
}

TEST_CASE("JSON round trips are bit-exact") {
  Rng rng(12);
  const Matrix m = random_density(3, rng).matrix();
  const Json j = Json::parse(matrix_to_json(m).dump());
  const Matrix back = matrix_from_json(j, "m");
  CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);

  for (double x : {0.1, 1.0 / 3.0, std::exp(1.0), 1e-300, 6.02214076e23}) CHECK(std::stod(format_double(x)) == x);

  SweepConfig c = config_from_json(Json::parse(small_config(1.0)));
  const SweepConfig again = config_from_json(config_to_json(c));
  CHECK(config_hash(c) == config_hash(again));
  CHECK(config_to_json(again).dump() == config_to_json(c).dump());

  const SpectrumModel s = spectrum_from_json(Json::parse(R"({"kind":"explicit","levels":[0.1,0.30000000000000004]})"));
  CHECK(spectrum_to_json(s)["levels"][1].get<double>() == 0.30000000000000004);
}

TEST_CASE("unknown subcommand") {
  const Outcome r = run({"frobnicate"});
  CHECK(r.code == kExitValidation);
  CHECK(r.err.find("unknown subcommand 'frobnicate'") != std::string::npos);
  CHECK(r.err.find("Usage") != std::string::npos);
}

TEST_CASE("binary exit codes") {
  CHECK(run_binary("frobnicate") == kExitValidation);
  CHECK(run_binary("--version") == kExitOk);
  CHECK(run_binary("bound --quantity entropy --epsilon 0 --energy 2 --spectrum '" + kOsc + "'") == kExitOk);
  CHECK(run_binary("gibbs --spectrum '{\"kind\":\"oscillator\"}' --energy 1") == kExitValidation);
}
