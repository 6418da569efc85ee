// Acceptance run: one line per criterion, PASS or FAIL, with the measured
// numbers. Criterion 3 tests a claim about the physics rather than the code;
// when it fails the line says so and the evidence is printed, but the exit
// status only reflects the other criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <unistd.h>

#include "certificate_check.hpp"
#include "cli.hpp"
#include "covexp/catalog.hpp"
#include "covexp/exponent_space.hpp"
#include "covexp/factor_rep.hpp"
#include "covexp/schrodinger.hpp"
#include "oracle/bareiss.hpp"
#include "support.hpp"

using namespace covexp;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  bool finding;  // a failure is a reported result about the claim, not a defect
  std::function<Verdict()> body;
};

CatalogEntry trivial(const char* name) {
  CatalogEntry e = catalog(name);
  e.realization = ActionRealization::trivial(e.algebra.dim(), e.realization.coordinates());
  return e;
}

oracle::Structure structure_of(const LieAlgebra& l) {
  const std::size_t n = l.dim();
  oracle::Structure c(n, std::vector<std::vector<mpq_class>>(n, std::vector<mpq_class>(n)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) c[i][j][k] = l.structure(i, j, k);
  return c;
}

Verdict bargmann_dims() {
  struct Case {
    const char* name;
    std::size_t quotient;
    long hand_z, hand_b;  // -1: no hand expansion recorded
  };
  const Case cases[] = {{"abelian(2)", 1, 1, 0}, {"so3", 0, 3, 3}, {"galilei1", 2, 3, 1}, {"galilei3", 1, -1, -1},
                        {"poincare4", 0, -1, -1}};
  Verdict v{true, ""};
  std::ostringstream os;
  for (const Case& c : cases) {
    const auto start = std::chrono::steady_clock::now();
    const CatalogEntry e = trivial(c.name);
    const ClassificationReport r = classify(e.algebra, e.realization, 0);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const oracle::ConstantDims o = oracle::constant_case_dims(structure_of(e.algebra));
    bool ok = r.dim_quotient_admissible == c.quotient && o.quotient() == c.quotient &&
              r.dim_cocycles == o.cocycles && r.dim_coboundaries_admissible == o.coboundaries && secs < 10;
    if (c.hand_z >= 0) {
      ok = ok && r.dim_cocycles == static_cast<std::size_t>(c.hand_z) &&
           r.dim_coboundaries_admissible == static_cast<std::size_t>(c.hand_b);
    }
    if (std::string(c.name) == "galilei3") {
      // the representative may only pair a boost K_i with a translation P_j
      for (const auto& xi : r.representatives) {
        for (const auto& [i, j] : basis_pairs(10)) {
          if (xi.value(i, j).is_zero()) continue;
          const char a = e.algebra.basis_names()[i][0], b = e.algebra.basis_names()[j][0];
          ok = ok && ((a == 'P' && b == 'K') || (a == 'K' && b == 'P'));
        }
      }
    }
    v.pass = v.pass && ok;
    os << c.name << "=" << r.dim_quotient_admissible << (ok ? "" : "(!)") << " ";
  }
  v.detail = os.str() + "(solver = Bareiss oracle = hand values)";
  return v;
}

Verdict delta_squared() {
  auto g = testing::rng(100);
  std::size_t checked = 0, failures = 0;
  for (const char* name : {"abelian(2)", "heisenberg(1)", "so3", "galilei1", "galilei3", "poincare4"}) {
    const CatalogEntry e = catalog(name);
    for (unsigned cap : {0u, 1u, 2u}) {
      for (int trial = 0; trial < 100; ++trial) {
        const LambdaForm l = testing::random_lambda(g, e.algebra.dim(), e.realization.chart_dim(), cap);
        const InfExponent d = coboundary(e.algebra, e.realization, l);
        for (const auto& [t, p] : cocycle_residual(e.algebra, e.realization, d)) failures += p.is_zero() ? 0 : 1;
        ++checked;
      }
    }
  }
  return {failures == 0, std::to_string(checked) + " random Lambda, " + std::to_string(failures) +
                             " nonzero residuals (seed " + std::to_string(testing::seed()) + ")"};
}

Verdict galilei_reduction() {
  cli::RunConfig cfg;
  cfg.command = "reduce";
  cfg.algebra = "galilei3";
  cfg.degree = 1;
  cfg.keep = {"t"};
  const cli::Outcome out = cli::execute(cfg);
  const auto& elements = out.payload["elements"];

  // Re-check each certificate against independently rebuilt constraints.
  const CatalogEntry g = catalog("galilei3");
  const auto basis = cocycle_space(g.algebra, g.realization, 1);
  const std::vector<bool> keep{true, false, false, false};
  std::size_t reduced = 0, certified = 0, relaxed = 0, bad_checks = 0;
  for (std::size_t k = 0; k < elements.size(); ++k) {
    const auto& e = elements[k];
    if (e["status"] == "reduced") {
      ++reduced;
      for (const auto& [name, value] : e["checks"].items()) bad_checks += value.get<bool>() ? 0 : 1;
      continue;
    }
    const auto r = reduce_to_coordinates(g.algebra, g.realization, basis[k], keep);
    if (const auto* c = std::get_if<ReductionCertificate>(&r)) {
      certified += testing::certificate_is_valid(g.algebra, g.realization, basis[k], keep, *c) ? 1 : 0;
    }
    relaxed += e.value("reducible_without_admissibility", false) ? 1 : 0;
  }
  std::ostringstream os;
  os << reduced << "/" << elements.size() << " cocycle basis elements reduce to t";
  if (reduced != elements.size()) {
    const std::size_t failed = elements.size() - reduced;
    os << "; " << failed << " blocked by admissibility (" << certified << " certificates re-verified, " << relaxed
       << " reducible with unrestricted Lambda)";
    for (const auto& e : elements) {
      if (e["status"] != "infeasible") continue;
      os << "; e.g. element " << e["index"].get<std::size_t>() + 1 << ":";
      for (const auto& w : e["certificate"]["weights"]) os << " [" << w["label"].get<std::string>() << "]";
      break;
    }
  }
  return {out.exit_code == 0 && reduced == elements.size() && bad_checks == 0, os.str()};
}

Verdict weyl() {
  double worst_phase = 0, worst_assoc = 0;
  for (std::size_t n : {2u, 3u, 4u, 8u}) {
    const FactorRepresentation w = weyl_pair_demo(n);
    const PhaseTable xi = extract_exponent(w);
    for (std::size_t r = 0; r < n * n; ++r) {
      for (std::size_t s = 0; s < n * n; ++s) {
        // r = (a, b) = a N + b, s = (a', b')
        const double expected = 2 * std::numbers::pi * static_cast<double>((r % n) * (s / n)) / static_cast<double>(n);
        worst_phase = std::max(worst_phase, phase_distance(xi[r][s][0] - expected));
      }
    }
    worst_assoc = std::max(worst_assoc, associativity_check(xi, w.group).max_residual);
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "N in {2,3,4,8}: max phase error %.2e (<= 1e-10), max associativity residual %.2e (<= 1e-12)",
                worst_phase, worst_assoc);
  return {worst_phase <= 1e-10 && worst_assoc <= 1e-12, buf};
}

Verdict schrodinger() {
  const GridPair grids = commensurate_grids(1024, -40, 40);
  const KSpec phi = KSpec::gaussian(grids.k, 1.0, 0.5);
  const Evolver ev(grids.k, grids.x);
  double norm_err = 0;
  for (double t : {0.0, 1.0, 5.0}) {
    const WaveSample psi = ev.evolve(phi, t);
    norm_err = std::max(norm_err, std::abs(inner(psi, psi).real() - phi.norm2()));
  }

  const double alpha = 0.7, beta = 0.3;
  std::vector<WaveSample> w1, w2;
  std::vector<std::vector<WaveSample>> probes;
  for (int i = 0; i < 16; ++i) {
    const double t = 0.5 * i;
    w1.push_back(ev.evolve(phi, t));
    w2.push_back(gauge_apply(w1.back(), alpha * t + beta));
    probes.push_back({w1.back(), w2.back()});
  }
  const RayResult ray = ray_equiv_waves(w1, w2, probes, 1e-9);
  double phase_err = 0;
  for (std::size_t i = 0; i < ray.lambda.size(); ++i) {
    phase_err = std::max(phase_err, phase_distance(ray.lambda[i] - (alpha * ray.times[i] + beta)));
  }

  const KSpec other = KSpec::gaussian(grids.k, -2.0, 0.5);
  const KSpec chi = (other + phi * (-phi.inner(other))).normalized();
  const KSpec phi2 = (phi + chi) * Complex(1 / std::numbers::sqrt2);
  const std::vector<double> times{0.0, 1.0, 5.0};
  const std::vector<KSpec> pr{phi, phi2};
  const RayResult d = ray_equiv_test(phi, phi2, times, pr, grids.x, 1e-9);
  const double analytic = 1 - 1 / std::numbers::sqrt2;
  const double gap = d.witness ? d.witness->gap : 0.0;
  const bool distinct = d.verdict == RayVerdict::distinct && d.witness && d.witness->probe_index == 0;

  char buf[240];
  std::snprintf(buf, sizeof buf,
                "norm error %.2e (<= 1e-8), phase error %.2e over %zu times (<= 1e-9), perturbation %s gap %.9f vs %.9f",
                norm_err, phase_err, ray.lambda.size(), distinct ? "DISTINCT" : "not distinct", gap, analytic);
  return {norm_err <= 1e-8 && ray.verdict == RayVerdict::equivalent && ray.lambda.size() == 16 && phase_err <= 1e-9 &&
              distinct && std::abs(gap - analytic) <= 1e-6,
          buf};
}

Verdict reproducible() {
  const fs::path dir = fs::temp_directory_path() / ("covexp-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::string payload[2];
  bool ran = true;
  for (int i = 0; i < 2; ++i) {
    const fs::path out = dir / ("run" + std::to_string(i) + ".json");
    const std::string cmd = std::string("\"") + COVEXP_BINARY + "\" classify --algebra galilei3 --degree 2 --out \"" +
                            out.string() + "\"";
    ran = ran && std::system(cmd.c_str()) == 0;
    std::ifstream in(out);
    if (in) payload[i] = cli::json::parse(in).at("payload").dump();
  }
  fs::remove_all(dir);
  const bool same = ran && !payload[0].empty() && payload[0] == payload[1];
  return {same, same ? "two runs, identical payloads (" + std::to_string(payload[0].size()) + " bytes, " +
                           cli::payload_checksum(cli::json::parse(payload[0])) + ")"
                     : "payloads differ or a run failed"};
}

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "constant-case classification dims", 50, false, bargmann_dims},
      {2, "delta of delta vanishes", 60, false, delta_squared},
      {3, "galilei3 degree-1 reduction to t", 300, true, galilei_reduction},
      {4, "Weyl pair composition law", 10, false, weyl},
      {5, "Schrodinger gauge suite", 30, false, schrodinger},
      {6, "reproducible exact payloads", 120, false, reproducible},
  };
  int defects = 0, passed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.body();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) {
      v.pass = false;
      v.detail += " [over time limit]";
    }
    passed += v.pass ? 1 : 0;
    if (!v.pass && !c.finding) ++defects;
    std::printf("[%s] %d %s (%.2fs): %s\n", v.pass ? "PASS" : (c.finding ? "FAIL finding" : "FAIL"), c.id, c.title,
                secs, v.detail.c_str());
  }
  std::printf("%d/6 criteria pass\n", passed);
  return defects == 0 ? 0 : 1;
}
