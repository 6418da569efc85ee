#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <ctime>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

#include "covexp/catalog.hpp"
#include "covexp/error.hpp"
#include "covexp/factor_rep.hpp"
#include "covexp/schrodinger.hpp"

#ifndef COVEXP_VERSION
#define COVEXP_VERSION "dev"
#endif

namespace covexp::cli {

namespace {

const std::set<std::string> kCommands = {"classify", "reduce", "bargmann", "schrodinger", "verify-rep"};

bool exact_command(const std::string& c) { return c == "classify" || c == "reduce" || c == "bargmann"; }

struct Resolved {
  LieAlgebra algebra;
  ActionRealization act;
};

Resolved resolve_algebra(const RunConfig& cfg) {
  if (!cfg.config.empty()) {
    LoadedAlgebra loaded = load_algebra_config(cfg.config);
    const std::size_t n = loaded.algebra.dim();
    ActionRealization act = (cfg.trivial_action || !loaded.realization)
                                ? ActionRealization::trivial(n, loaded.coordinates)
                                : *loaded.realization;
    return {std::move(loaded.algebra), std::move(act)};
  }
  if (!is_catalog_name(cfg.algebra)) throw ConfigError("unknown algebra '" + cfg.algebra + "'");
  CatalogEntry entry = [&] {
    try {
      return catalog(cfg.algebra);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }();
  if (cfg.trivial_action) {
    entry.realization = ActionRealization::trivial(entry.algebra.dim(), entry.realization.coordinates());
  }
  return {std::move(entry.algebra), std::move(entry.realization)};
}

Outcome run_classify(const RunConfig& cfg) {
  const Resolved r = resolve_algebra(cfg);
  const ClassificationReport report = classify(r.algebra, r.act, cfg.degree);
  return {0, report_to_json(report), report_to_text(report)};
}

json certificate_to_json(const ReductionCertificate& cert) {
  json weights = json::array();
  std::size_t label = 0;
  for (std::size_t i = 0; i < cert.row_weights.size(); ++i) {
    if (sgn(cert.row_weights[i]) == 0) continue;
    weights.push_back({{"row", i},
                       {"label", label < cert.rows.size() ? cert.rows[label] : std::string()},
                       {"weight", to_string(cert.row_weights[i])}});
    ++label;
  }
  return {{"weights", weights}, {"residual", to_string(cert.residual)}};
}

Outcome run_reduce(const RunConfig& cfg) {
  const Resolved r = resolve_algebra(cfg);
  const auto& coords = r.act.coordinates();
  std::vector<bool> keep(coords.size(), false);
  for (const auto& name : cfg.keep) {
    const auto it = std::find(coords.begin(), coords.end(), name);
    if (it == coords.end()) throw ConfigError("--keep: unknown coordinate '" + name + "'");
    keep[static_cast<std::size_t>(it - coords.begin())] = true;
  }

  std::vector<InfExponent> inputs;
  if (!cfg.exponent.empty()) {
    std::ifstream in(cfg.exponent);
    if (!in) throw ConfigError("cannot open exponent file '" + cfg.exponent + "'");
    try {
      inputs.push_back(exponent_from_json(json::parse(in), r.algebra.dim(), coords.size(), cfg.degree));
    } catch (const json::exception& e) {
      throw ConfigError("exponent file '" + cfg.exponent + "': " + e.what());
    } catch (const DegreeOverflow& e) {
      throw ConfigError("exponent file '" + cfg.exponent + "': " + e.what());
    }
    if (!is_cocycle(r.algebra, r.act, inputs.front())) throw NotACocycle("input exponent is not a cocycle");
  } else {
    inputs = cocycle_space(r.algebra, r.act, cfg.degree);
  }

  const auto& names = r.algebra.basis_names();
  json elements = json::array();
  std::ostringstream text;
  bool all_reduced = true;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    const InfExponent& xi = inputs[k];
    json e = {{"index", k}, {"input", exponent_to_json(xi, names, coords)}};
    text << "element " << k + 1 << ": ";
    const ReductionResult result = reduce_to_coordinates(r.algebra, r.act, xi, keep);
    if (const auto* red = std::get_if<Reduction>(&result)) {
      const bool substitution = xi + coboundary(r.algebra, r.act, red->lambda) == red->reduced;
      const bool admissible = is_admissible(r.act, red->lambda);
      const bool cocycle = is_cocycle(r.algebra, r.act, red->reduced);
      const bool support = red->reduced.uses_only(keep);
      const bool ok = substitution && admissible && cocycle && support;
      all_reduced = all_reduced && ok;
      e["status"] = ok ? "reduced" : "check-failed";
      e["lambda"] = lambda_to_json(red->lambda, names, coords);
      e["reduced"] = exponent_to_json(red->reduced, names, coords);
      e["checks"] = {{"substitution", substitution},
                     {"admissible", admissible},
                     {"cocycle", cocycle},
                     {"supported_on_keep", support}};
      text << (ok ? "reduced" : "CHECK FAILED") << "\n";
      std::istringstream lines(render(red->reduced, names, coords));
      for (std::string line; std::getline(lines, line);) text << "  " << line << "\n";
    } else {
      all_reduced = false;
      const auto& cert = std::get<ReductionCertificate>(result);
      e["status"] = "infeasible";
      e["certificate"] = certificate_to_json(cert);
      // Would an unrestricted Lambda do? Tells admissibility obstructions apart.
      const ReductionResult relaxed = reduce_to_coordinates(r.algebra, r.act, xi, keep, false);
      e["reducible_without_admissibility"] = std::holds_alternative<Reduction>(relaxed);
      text << "infeasible, certificate residual " << to_string(cert.residual) << " over " << cert.rows.size()
           << " rows" << (e["reducible_without_admissibility"].get<bool>() ? " (reducible without admissibility)" : "")
           << "\n";
      for (const auto& row : cert.rows) text << "  " << row << "\n";
    }
    elements.push_back(std::move(e));
  }

  json payload = {{"algebra", r.algebra.name()},
                  {"basis", names},
                  {"chart", coords},
                  {"degree_cap", cfg.degree},
                  {"keep", cfg.keep},
                  {"source", cfg.exponent.empty() ? "cocycle-basis" : "exponent-file"},
                  {"elements", elements},
                  {"all_reduced", all_reduced}};
  std::ostringstream head;
  head << "algebra " << r.algebra.name() << ", degree cap " << cfg.degree << ", " << inputs.size()
       << " element(s), " << (all_reduced ? "all reduced" : "NOT all reduced") << "\n";
  return {all_reduced ? 0 : 2, std::move(payload), head.str() + text.str()};
}

Outcome run_schrodinger(const RunConfig& cfg) {
  constexpr double kNormTol = 1e-8;
  constexpr double kAlpha = 0.7, kBeta = 0.3;
  const GridPair grids = commensurate_grids(cfg.modes, -cfg.box / 2, cfg.box / 2);
  const KSpec phi = KSpec::gaussian(grids.k, 1.0, 0.5);
  const Evolver evolver(grids.k, grids.x);
  std::ostringstream text;
  text << std::setprecision(12);

  json norms = json::array();
  bool norms_ok = true;
  const double k_norm = phi.norm2();
  for (double t : {0.0, 1.0, 5.0}) {
    const WaveSample psi = evolver.evolve(phi, t);
    const double err = std::abs(inner(psi, psi).real() - k_norm);
    norms_ok = norms_ok && err <= kNormTol;
    norms.push_back({{"t", t}, {"x_norm2", inner(psi, psi).real()}, {"k_norm2", k_norm}, {"error", err}});
  }

  std::vector<WaveSample> w1, w2;
  std::vector<std::vector<WaveSample>> probes;
  std::vector<double> injected;
  for (int i = 0; i < 16; ++i) {
    const double t = 0.5 * i;
    injected.push_back(kAlpha * t + kBeta);
    w1.push_back(evolver.evolve(phi, t));
    w2.push_back(gauge_apply(w1.back(), injected.back()));
    probes.push_back({w1.back(), w2.back()});
  }
  const RayResult ray = ray_equiv_waves(w1, w2, probes, cfg.tol);
  json samples = json::array();
  bool phases_ok = ray.verdict == RayVerdict::equivalent;
  text << "t  lambda  injected  error\n";
  for (std::size_t i = 0; i < ray.times.size(); ++i) {
    const double err = phase_distance(ray.lambda[i] - injected[i]);
    phases_ok = phases_ok && err <= cfg.tol;
    samples.push_back({{"t", ray.times[i]},
                       {"lambda", ray.lambda[i]},
                       {"injected", wrap_phase(injected[i])},
                       {"error", err},
                       {"residual", ray.residuals[i]}});
    text << ray.times[i] << "  " << ray.lambda[i] << "  " << wrap_phase(injected[i]) << "  " << err << "\n";
  }

  // Perturb by a unit vector orthogonal to phi: the overlap with phi drops
  // from 1 to 1/sqrt 2.
  const KSpec other = KSpec::gaussian(grids.k, -2.0, 0.5);
  const KSpec chi = (other + phi * (-phi.inner(other) / phi.norm2())).normalized();
  const KSpec phi2 = (phi + chi) * Complex(1 / std::numbers::sqrt2);
  const std::vector<double> times = {0.0, 1.0, 5.0};
  const std::vector<KSpec> probe_states = {phi, phi2};
  const RayResult distinct = ray_equiv_test(phi, phi2, times, probe_states, grids.x, cfg.tol);
  const double analytic = 1 - 1 / std::numbers::sqrt2;
  json witness = nullptr;
  bool distinct_ok = distinct.verdict == RayVerdict::distinct && distinct.witness &&
                     distinct.witness->probe_index == 0 && std::abs(distinct.witness->gap - analytic) <= 1e-6;
  if (distinct.witness) {
    witness = {{"time_index", distinct.witness->time_index},
               {"probe", distinct.witness->probe_index == RayWitness::kResidual ? "residual" : "phi1"},
               {"gap", distinct.witness->gap}};
  }
  text << "norms " << (norms_ok ? "ok" : "FAILED") << ", phases " << (phases_ok ? "ok" : "FAILED")
       << ", orthogonal perturbation " << (distinct.verdict == RayVerdict::distinct ? "DISTINCT" : "EQUIVALENT")
       << " gap " << (distinct.witness ? distinct.witness->gap : 0.0) << " (expected " << analytic << ")\n";

  const bool ok = norms_ok && phases_ok && distinct_ok;
  json payload = {
      {"grid", {{"modes", cfg.modes}, {"x_start", grids.x.start}, {"dx", grids.x.step}, {"k_start", grids.k.start},
                {"dk", grids.k.step}}},
      {"packet", {{"k0", 1.0}, {"sigma", 0.5}, {"mass", 1.0}}},
      {"norms", norms},
      {"injected_phase", {{"alpha", kAlpha}, {"beta", kBeta}, {"verdict", ray.verdict == RayVerdict::equivalent
                                                                              ? "EQUIVALENT" : "DISTINCT"},
                          {"samples", samples}}},
      {"orthogonal_perturbation",
       {{"verdict", distinct.verdict == RayVerdict::equivalent ? "EQUIVALENT" : "DISTINCT"},
        {"witness", witness},
        {"expected_gap", analytic}}},
      {"ok", ok},
  };
  return {ok ? 0 : 2, std::move(payload), text.str()};
}

json weyl_summary(std::size_t n, double tol, bool& ok) {
  const FactorRepresentation rep = weyl_pair_demo(n);
  const PhaseTable xi = extract_exponent(rep);
  double max_err = 0;
  const std::size_t order = rep.group.order();
  for (std::size_t r = 0; r < order; ++r) {
    for (std::size_t s = 0; s < order; ++s) {
      const double expected = 2 * std::numbers::pi * static_cast<double>((r % n) * (s / n)) / static_cast<double>(n);
      max_err = std::max(max_err, phase_distance(xi[r][s][0] - expected));
    }
  }
  const AssociativityResult assoc = associativity_check(xi, rep.group);

  // A gauge change theta_g shifts the exponent by theta_r + theta_s - theta_rs.
  std::vector<std::vector<double>> theta(order, std::vector<double>(1));
  for (std::size_t g = 0; g < order; ++g) theta[g][0] = wrap_phase(0.37 * static_cast<double>(g * g + 1));
  const PhaseTable gauged = extract_exponent(gauge(rep, theta));
  double gauge_err = 0;
  for (std::size_t r = 0; r < order; ++r) {
    for (std::size_t s = 0; s < order; ++s) {
      const double shift = theta[r][0] + theta[s][0] - theta[rep.group.multiply(r, s)][0];
      gauge_err = std::max(gauge_err, phase_distance(gauged[r][s][0] - xi[r][s][0] - shift));
    }
  }
  const AssociativityResult gauged_assoc = associativity_check(gauged, rep.group);
  const bool pass = max_err <= tol && assoc.max_residual <= tol && gauge_err <= tol && gauged_assoc.max_residual <= tol;
  ok = ok && pass;
  return {{"n", n},
          {"group_order", order},
          {"max_phase_error", max_err},
          {"associativity", {{"max_residual", assoc.max_residual}, {"checked", assoc.checked}}},
          {"gauge", {{"max_shift_error", gauge_err}, {"associativity_residual", gauged_assoc.max_residual}}},
          {"pass", pass}};
}

Outcome run_verify_rep(const RunConfig& cfg) {
  const std::vector<std::size_t> orders =
      cfg.modes == 0 ? std::vector<std::size_t>{2, 3, 4, 8} : std::vector<std::size_t>{cfg.modes};
  bool ok = true;
  json results = json::array();
  std::ostringstream text;
  text << "N  phase error  associativity  gauge\n";
  for (std::size_t n : orders) {
    results.push_back(weyl_summary(n, cfg.tol, ok));
    const json& s = results.back();
    text << n << "  " << s["max_phase_error"].get<double>() << "  "
         << s["associativity"]["max_residual"].get<double>() << "  "
         << s["gauge"]["max_shift_error"].get<double>() << (s["pass"].get<bool>() ? "" : "  FAILED") << "\n";
  }
  return {ok ? 0 : 2, {{"weyl", results}, {"exponent", "2 pi b a' / N"}, {"ok", ok}}, text.str()};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void emit(const RunConfig& cfg, const std::string& contents, std::ostream& out) {
  if (cfg.out.empty()) {
    out << contents;
  } else {
    write_atomically(cfg.out, contents);
  }
}

}  // namespace

json RunConfig::to_json() const {
  return {{"command", command}, {"algebra", algebra},   {"config", config},   {"degree", degree},
          {"trivial_action", trivial_action},           {"keep", keep},       {"exponent", exponent},
          {"modes", modes},     {"box", box},           {"tol", tol},         {"out", out},
          {"format", format}};
}

RunConfig RunConfig::from_json(const json& j) {
  static const std::set<std::string> known = {"command", "algebra", "config", "degree", "trivial_action", "keep",
                                              "exponent", "modes",  "box",    "tol",    "out",            "format"};
  if (!j.is_object()) throw ConfigError("run config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw ConfigError("run config: unknown field '" + key + "'");
  }
  RunConfig c;
  try {
    c.command = j.at("command").get<std::string>();
    c.algebra = j.value("algebra", c.algebra);
    c.config = j.value("config", c.config);
    c.degree = j.value("degree", c.degree);
    c.trivial_action = j.value("trivial_action", c.trivial_action);
    c.keep = j.value("keep", c.keep);
    c.exponent = j.value("exponent", c.exponent);
    c.modes = j.value("modes", c.modes);
    c.box = j.value("box", c.box);
    c.tol = j.value("tol", c.tol);
    c.out = j.value("out", c.out);
    c.format = j.value("format", c.format);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("run config: ") + e.what());
  }
  c.validate();
  return c;
}

void RunConfig::validate() const {
  if (!kCommands.contains(command)) throw ConfigError("unknown command '" + command + "'");
  if (format != "json" && format != "text") throw ConfigError("--format must be json or text");
  if (!(tol > 0) || !std::isfinite(tol)) throw ConfigError("--tol must be positive");
  if (exact_command(command)) {
    if (algebra.empty() == config.empty()) throw ConfigError("give exactly one of --algebra and --config");
    if (degree > 6) throw ConfigError("--degree above 6 is not supported");
  }
  if (command == "bargmann" && (degree != 0 || !trivial_action)) {
    throw ConfigError("bargmann fixes degree 0 and the trivial action");
  }
  if (command != "reduce" && (!keep.empty() || !exponent.empty())) {
    throw ConfigError("--keep and --exponent only apply to reduce");
  }
  if (command == "schrodinger") {
    if (modes < 8 || modes % 2 != 0 || modes > (1u << 16)) throw ConfigError("--modes must be even, 8..65536");
    if (!(box > 0) || !std::isfinite(box)) throw ConfigError("--box must be positive");
  }
  if (command == "verify-rep" && modes != 0 && (modes < 2 || modes > 16)) {
    throw ConfigError("verify-rep: --modes (the Weyl order N) must be in 2..16");
  }
}

Outcome execute(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.command == "classify" || cfg.command == "bargmann") return run_classify(cfg);
  if (cfg.command == "reduce") return run_reduce(cfg);
  if (cfg.command == "schrodinger") return run_schrodinger(cfg);
  return run_verify_rep(cfg);
}

json make_envelope(const RunConfig& cfg, const json& payload) {
  return {{"schema", kSchemaVersion},
          {"tool", "covexp"},
          {"version", COVEXP_VERSION},
          {"timestamp", utc_timestamp()},
          {"config", cfg.to_json()},
          {"payload", payload},
          {"checksum", payload_checksum(payload)}};
}

bool validate_envelope(const json& envelope, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (!envelope.is_object()) return fail("not an object");
  for (const char* key : {"schema", "tool", "version", "timestamp", "config", "payload", "checksum"}) {
    if (!envelope.contains(key)) return fail(std::string("missing '") + key + "'");
  }
  if (envelope.size() != 7) return fail("unexpected extra fields");
  if (envelope.at("schema") != kSchemaVersion) return fail("unsupported schema version");
  try {
    RunConfig::from_json(envelope.at("config"));
  } catch (const Error& e) {
    return fail(e.what());
  }
  if (envelope.at("checksum") != payload_checksum(envelope.at("payload"))) return fail("checksum mismatch");
  return true;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Infinitesimal exponents of Lie algebra actions, factor representations and Schrodinger gauge checks",
               "covexp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", COVEXP_VERSION);

  RunConfig cfg;
  std::optional<unsigned> degree;
  std::optional<std::size_t> modes;
  std::optional<double> tol;

  auto common = [&](CLI::App* sub, bool exact) {
    if (exact) {
      sub->add_option("--algebra", cfg.algebra, "catalog algebra, e.g. galilei3 or heisenberg(2)");
      sub->add_option("--config", cfg.config, "algebra config file (JSON)");
    }
    sub->add_option("--out", cfg.out, "write the report here instead of stdout");
    sub->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  };
  CLI::App* classify_cmd = app.add_subcommand("classify", "classify exponents up to a degree cap");
  common(classify_cmd, true);
  classify_cmd->add_option("--degree", degree, "maximum polynomial degree (default 2)");
  classify_cmd->add_flag("--trivial-action", cfg.trivial_action, "replace the base action by the zero action");

  CLI::App* reduce_cmd = app.add_subcommand("reduce", "remove coordinate dependence by admissible coboundaries");
  common(reduce_cmd, true);
  reduce_cmd->add_option("--degree", degree, "maximum polynomial degree (default 2)");
  reduce_cmd->add_flag("--trivial-action", cfg.trivial_action, "replace the base action by the zero action");
  reduce_cmd->add_option("--keep", cfg.keep, "coordinates allowed in the result")->delimiter(',');
  reduce_cmd->add_option("--exponent", cfg.exponent, "exponent file to reduce instead of the cocycle basis");

  CLI::App* bargmann_cmd = app.add_subcommand("bargmann", "classify --degree 0 --trivial-action");
  common(bargmann_cmd, true);
  bargmann_cmd->add_option("--degree", degree, "must be 0 if given");

  CLI::App* schrod_cmd = app.add_subcommand("schrodinger", "free-particle gauge and ray-equivalence checks");
  common(schrod_cmd, false);
  schrod_cmd->add_option("--modes", modes, "grid size (default 1024)");
  schrod_cmd->add_option("--box", cfg.box, "box width, x in [-box/2, box/2) (default 80)");
  schrod_cmd->add_option("--tol", tol, "ray test tolerance (default 1e-9)");

  CLI::App* verify_cmd = app.add_subcommand("verify-rep", "Weyl pair factor representation checks");
  common(verify_cmd, false);
  verify_cmd->add_option("--modes", modes, "Weyl order N (default: 2, 3, 4 and 8)");
  verify_cmd->add_option("--tol", tol, "phase tolerance (default 1e-10)");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << COVEXP_VERSION << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "covexp: " << e.what() << "\n";
    return 1;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.command == "bargmann") {
    cfg.trivial_action = true;
    cfg.degree = degree.value_or(0);
  } else {
    cfg.degree = degree.value_or(2);
  }
  if (cfg.command == "verify-rep") {
    cfg.modes = modes.value_or(0);
    cfg.tol = tol.value_or(1e-10);
  } else {
    cfg.modes = modes.value_or(1024);
    cfg.tol = tol.value_or(1e-9);
  }

  try {
    cfg.validate();
    const Outcome outcome = execute(cfg);
    if (cfg.format == "json") {
      emit(cfg, make_envelope(cfg, outcome.payload).dump(2) + "\n", out);
    } else {
      emit(cfg, outcome.text, out);
    }
    if (outcome.exit_code != 0) err << "covexp: " << cfg.command << " did not pass its checks\n";
    return outcome.exit_code;
  } catch (const NotACocycle& e) {
    err << "covexp: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    err << "covexp: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    // Config, parse, algebra and realization problems.
    err << "covexp: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "covexp: internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace covexp::cli
