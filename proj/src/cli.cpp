#include "entrobound/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "entrobound/io.hpp"

namespace entrobound {

namespace {

struct GibbsArgs {
  std::string spectrum;
  double energy = 0.0;
  double lambda = 0.0;
};

struct BoundArgs {
  std::string quantity, spectrum;
  double epsilon = 0.0, energy = 0.0;
  bool pure = false, bits = false, hat = false;
  Index finite_dim = 0;
};

struct VerifyArgs {
  std::string config, out;
};

struct LaaArgs {
  std::string quantity;
  Index dim = 4;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
};

struct Lemma2Args {
  double q = 3.0, lambda_min = 1e-3, lambda_max = 1.0;
  std::size_t points = 20;
};

struct DistArgs {
  std::string mu, nu, metric = "d0";
};

struct AfwArgs {
  std::string rho, sigma, hamiltonian, mode = "sqrt-two-eps";
  double energy = 0.0, epsilon = 0.0;
};

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

SpectrumModel load_spectrum(const std::string& source) { return spectrum_from_json(load_json(source), "spectrum"); }

int run_gibbs(const GibbsArgs& a, bool by_lambda, std::ostream& out) {
  const SpectrumModel model = load_spectrum(a.spectrum);
  if (!by_lambda) {
    emit(out, to_json(F_H_solution(model, a.energy)));
    return kExitOk;
  }
  if (!(a.lambda > 0.0)) throw ValidationError("--lambda must be positive");
  const SeriesValue z = log_partition(model, a.lambda);
  const SeriesValue e = mean_energy(model, a.lambda);
  GibbsSolution s{a.lambda, e.value, a.lambda * e.value + z.value, z.tail + a.lambda * e.tail, z.value,
                  GibbsFlag::none};
  emit(out, to_json(s));
  return kExitOk;
}

int run_bound(const BoundArgs& a, std::ostream& out) {
  BoundDescriptor desc = preset(a.quantity);
  desc.pure_state = a.pure;
  BoundResult r;
  if (a.finite_dim > 0) {
    r = eval_finite_dim(desc, a.finite_dim, a.epsilon);
  } else {
    if (a.spectrum.empty()) throw ValidationError("--spectrum is required unless --finite-dim is given");
    const SpectrumModel model = load_spectrum(a.spectrum);
    if (a.hat) {
      const auto* osc = std::get_if<OscillatorModes>(&model.kind());
      if (!osc) throw ValidationError("--hat needs an oscillator spectrum");
      r = eval_oscillator(desc, osc->hbar_omega, a.epsilon, a.energy);
    } else {
      r = eval_prop1(desc, model, a.epsilon, a.energy);
    }
  }
  Json j = to_json(r);
  j["quantity"] = desc.name;
  j["pure_state"] = desc.pure_state;
  if (a.bits) {
    for (const char* k : {"value", "main_term", "g_term", "tail_bound"}) j[k] = j[k].get<double>() / std::numbers::ln2;
    j["units"] = "bits";
  } else {
    j["units"] = "nats";
  }
  emit(out, j);
  return kExitOk;
}

int run_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const SweepConfig cfg = config_from_json(load_json(a.config));
  RunManifest manifest;
  manifest.config_hash = config_hash(cfg);
  manifest.seed = cfg.seed;
  manifest.started = utc_timestamp();
  const SweepReport report = run_sweep(cfg);
  manifest.finished = utc_timestamp();

  std::ofstream csv(a.out, std::ios::binary | std::ios::trunc);
  if (!csv) throw ValidationError("cannot write '" + a.out + "'");
  write_sweep_csv(csv, report, manifest.config_hash);
  csv.close();
  const std::string sidecar = a.out + ".manifest.json";
  manifest.outputs = {a.out, sidecar};
  std::ofstream side(sidecar, std::ios::binary | std::ios::trunc);
  if (!side) throw ValidationError("cannot write '" + sidecar + "'");
  side << to_json(manifest).dump(2) << '\n';

  Json j = to_json(report.summary);
  j["config_hash"] = manifest.config_hash;
  j["quantity"] = cfg.quantity;
  emit(out, j);
  if (report.summary.violations > 0) {
    err << "bound violated in " << report.summary.violations << " of " << report.summary.rows
        << " rows (min margin " << format_double(report.summary.min_margin) << ")\n";
    return kExitViolation;
  }
  return kExitOk;
}

int run_laa(const LaaArgs& a, std::ostream& out, std::ostream& err) {
  const LaaReport r = laa_check(a.quantity, a.dim, a.trials, a.seed);
  emit(out, to_json(r));
  if (r.violations > 0) {
    err << "inequality violated in " << r.violations << " trials\n";
    return kExitViolation;
  }
  return kExitOk;
}

int run_lemma2(const Lemma2Args& a, std::ostream& out) {
  emit(out, to_json(lemma2_diagnostic(a.q, log_grid(a.lambda_min, a.lambda_max, a.points))));
  return kExitOk;
}

int run_dist(const DistArgs& a, std::ostream& out) {
  const Ensemble mu = ensemble_from_json(load_json(a.mu), "mu");
  const Ensemble nu = ensemble_from_json(load_json(a.nu), "nu");
  Json j{{"metric", a.metric}};
  if (a.metric == "d0") {
    j["value"] = d0(mu, nu);
  } else {
    const TransportPlan p = dstar_plan(mu, nu);
    j["value"] = p.cost;
    j["plan"] = to_json(p)["plan"];
  }
  emit(out, j);
  return kExitOk;
}

int run_afw(const AfwArgs& a, std::ostream& out) {
  const DensityMatrix rho = density_from_json(load_json(a.rho), "rho");
  const DensityMatrix sigma = density_from_json(load_json(a.sigma), "sigma");
  const Matrix hm = matrix_from_json(load_json(a.hamiltonian), "hamiltonian");
  const HermitianOperator h(hm);
  const PurificationMode mode = a.mode == "uhlmann" ? PurificationMode::uhlmann : PurificationMode::sqrt_two_eps;
  emit(out, to_json(afw_decompose(rho, sigma, h, a.energy, a.epsilon, mode)));
  return kExitOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Energy-constrained continuity bounds for quantum entropic quantities", "entrobound"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  GibbsArgs ga;
  auto* gibbs = app.add_subcommand("gibbs", "Maximum entropy F_H(E) and the Gibbs multiplier");
  gibbs->add_option("--spectrum", ga.spectrum, "Spectrum JSON (inline or file)")->required();
  auto* g_energy = gibbs->add_option("--energy", ga.energy, "Energy bound E");
  auto* g_lambda = gibbs->add_option("--lambda", ga.lambda, "Evaluate at this inverse temperature instead");
  g_energy->excludes(g_lambda);
  g_lambda->excludes(g_energy);

  BoundArgs ba;
  auto* bound = app.add_subcommand("bound", "Evaluate a continuity bound preset");
  bound->add_option("--quantity", ba.quantity, "Preset id")
      ->required()
      ->check(CLI::IsMember(preset_ids()));
  bound->add_option("--epsilon", ba.epsilon, "Trace-distance radius")->required();
  bound->add_option("--energy", ba.energy, "Energy bound E");
  bound->add_option("--spectrum", ba.spectrum, "Spectrum JSON (inline or file)");
  bound->add_flag("--pure", ba.pure, "Pure-state variant (eps^2/2)");
  bound->add_option("--finite-dim", ba.finite_dim, "Unconstrained bound for dimension d");
  bound->add_flag("--bits", ba.bits, "Report in bits instead of nats");
  bound->add_flag("--hat", ba.hat, "Use the oscillator upper estimate of F");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a randomized bound sweep");
  verify->add_option("--config", va.config, "Sweep config JSON (inline or file)")->required();
  verify->add_option("--out", va.out, "CSV report path")->required();

  LaaArgs la;
  auto* laa = app.add_subcommand("laa-check", "Check local almost-affinity inequalities");
  laa->add_option("--quantity", la.quantity, "Quantity id")->required()->check(CLI::IsMember(laa_quantities()));
  laa->add_option("--dim", la.dim, "Dimension");
  laa->add_option("--trials", la.trials, "Random triples");
  laa->add_option("--seed", la.seed, "Seed");

  Lemma2Args l2;
  auto* lemma2 = app.add_subcommand("lemma2", "Growth diagnostic for log-power spectra");
  lemma2->add_option("--q", l2.q, "Exponent q > 1")->required();
  lemma2->add_option("--lambda-min", l2.lambda_min, "Smallest lambda");
  lemma2->add_option("--lambda-max", l2.lambda_max, "Largest lambda (<= 1)");
  lemma2->add_option("--points", l2.points, "Grid points");

  DistArgs da;
  auto* dist = app.add_subcommand("ensemble-dist", "Distance between two ensembles");
  dist->add_option("--mu", da.mu, "Ensemble JSON")->required();
  dist->add_option("--nu", da.nu, "Ensemble JSON")->required();
  dist->add_option("--metric", da.metric, "d0 or dstar")->check(CLI::IsMember({"d0", "dstar"}));

  AfwArgs aa;
  auto* afw = app.add_subcommand("afw", "Decompose two close states and certify auxiliary energies");
  afw->add_option("--rho", aa.rho, "Matrix JSON")->required();
  afw->add_option("--sigma", aa.sigma, "Matrix JSON")->required();
  afw->add_option("--hamiltonian", aa.hamiltonian, "Matrix JSON")->required();
  afw->add_option("--energy", aa.energy, "Energy bound E")->required();
  afw->add_option("--epsilon", aa.epsilon, "Trace-distance radius")->required();
  afw->add_option("--mode", aa.mode, "sqrt-two-eps or uhlmann")->check(CLI::IsMember({"sqrt-two-eps", "uhlmann"}));

  if (!args.empty() && !args.front().empty() && args.front()[0] != '-') {
    const auto subs = app.get_subcommands([](CLI::App*) { return true; });
    const bool known = std::any_of(subs.begin(), subs.end(), [&](CLI::App* s) { return s->get_name() == args.front(); });
    if (!known) {
      err << "error: unknown subcommand '" << args.front() << "'\n\n" << app.help();
      return kExitValidation;
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  try {
    if (gibbs->parsed()) {
      if (g_energy->count() == 0 && g_lambda->count() == 0)
        throw ValidationError("gibbs: give --energy or --lambda");
      return run_gibbs(ga, g_lambda->count() > 0, out);
    }
    if (bound->parsed()) return run_bound(ba, out);
    if (verify->parsed()) return run_verify(va, out, err);
    if (laa->parsed()) return run_laa(la, out, err);
    if (lemma2->parsed()) return run_lemma2(l2, out);
    if (dist->parsed()) return run_dist(da, out);
    if (afw->parsed()) return run_afw(aa, out);
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "internal failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  err << app.help();
  return kExitValidation;
}

}  // namespace entrobound
