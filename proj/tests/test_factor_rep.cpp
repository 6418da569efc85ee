#include <doctest.h>

#include <cmath>
#include <numbers>

#include "covexp/error.hpp"
#include "covexp/exponent_space.hpp"
#include "covexp/catalog.hpp"
#include "covexp/factor_rep.hpp"
#include "support.hpp"

using namespace covexp;

namespace {

constexpr double kPi = std::numbers::pi;

BundleMap fiber_only(ComplexMatrix u) { return BundleMap{{0}, {std::move(u)}}; }

// Weyl matrices again, but over a cyclic base of N points that (a, b) rotates by a.
FactorRepresentation weyl_over_cycle(std::size_t n) {
  const FactorRepresentation w = weyl_pair_demo(n);
  const std::size_t order = n * n;
  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> mult(order, std::vector<std::size_t>(order));
  std::vector<std::vector<std::size_t>> action(order, std::vector<std::size_t>(n));
  std::vector<std::string> base;
  for (std::size_t p = 0; p < n; ++p) base.push_back("p" + std::to_string(p));
  FactorRepresentation rep{FiniteBundle{base, n}, GroupTable({"e"}, {{0}}, {{0}}), {}};
  for (std::size_t g = 0; g < order; ++g) {
    labels.push_back(w.group.label(g));
    for (std::size_t h = 0; h < order; ++h) mult[g][h] = w.group.multiply(g, h);
    BundleMap m;
    for (std::size_t p = 0; p < n; ++p) {
      action[g][p] = (p + n - g / n) % n;
      m.base_map.push_back(action[g][p]);
      m.fiber_maps.push_back(w.maps[g].fiber_maps[0]);
    }
    rep.maps.push_back(std::move(m));
  }
  rep.group = GroupTable(labels, mult, action);
  return rep;
}

std::vector<std::vector<double>> random_theta(std::mt19937_64& g, std::size_t order, std::size_t base) {
  std::uniform_real_distribution<double> u(-kPi, kPi);
  std::vector<std::vector<double>> theta(order, std::vector<double>(base));
  for (auto& row : theta)
    for (auto& v : row) v = u(g);
  return theta;
}

}  // namespace

TEST_CASE("phase wrapping") {
  CHECK(wrap_phase(kPi) == doctest::Approx(kPi));
  CHECK(wrap_phase(-kPi) == doctest::Approx(kPi));
  CHECK(wrap_phase(3 * kPi / 2) == doctest::Approx(-kPi / 2));
  CHECK(phase_distance(2 * kPi - 1e-13) < 1e-12);
  CHECK(phase_distance(kPi) == doctest::Approx(kPi));
}

TEST_CASE("identity factor gives zero phase") {
  const FactorRepresentation w = weyl_pair_demo(3);
  const BundleMap id = w.maps[w.group.identity()];
  for (const auto& m : w.maps) {
    for (double xi : compose_and_extract(m, id, m)) CHECK(std::abs(xi) < 1e-14);
  }
}

TEST_CASE("Weyl pair phases") {
  for (std::size_t n : {2u, 3u, 4u, 5u, 8u}) {
    CAPTURE(n);
    const FactorRepresentation w = weyl_pair_demo(n);
    const PhaseTable xi = extract_exponent(w);
    for (std::size_t r = 0; r < n * n; ++r) {
      for (std::size_t s = 0; s < n * n; ++s) {
        const double expected = 2 * kPi * static_cast<double>((r % n) * (s / n)) / static_cast<double>(n);
        CHECK(phase_distance(xi[r][s][0] - expected) < 1e-10);
      }
    }
    CHECK(associativity_check(xi, w.group).max_residual < 1e-12);
  }
  // N = 2: (0,1)(1,0) picks up pi
  const PhaseTable two = extract_exponent(weyl_pair_demo(2));
  CHECK(two[1][2][0] == doctest::Approx(kPi));
  CHECK(std::abs(two[2][1][0]) < 1e-14);
  CHECK(std::abs(extract_exponent(weyl_pair_demo(4))[0][0][0]) < 1e-14);
  CHECK_THROWS_AS(weyl_pair_demo(1), NumericError);
}

TEST_CASE("associativity residual detects a perturbed entry") {
  const FactorRepresentation w = weyl_pair_demo(3);
  PhaseTable xi = extract_exponent(w);
  CHECK(associativity_check(xi, w.group).checked == 729);
  xi[4][5][0] += 0.1;
  CHECK(associativity_check(xi, w.group).max_residual >= 0.1 - 1e-9);
  PhaseTable zero(9, std::vector<std::vector<double>>(9, std::vector<double>(1, 0.0)));
  CHECK(associativity_check(zero, w.group).max_residual == 0.0);
}

TEST_CASE("point-dependent gauge shifts the exponent by its coboundary") {
  auto g = testing::rng(8);
  const FactorRepresentation rep = weyl_over_cycle(3);
  const PhaseTable xi = extract_exponent(rep);
  CHECK(associativity_check(xi, rep.group).max_residual < 1e-12);
  for (int trial = 0; trial < 5; ++trial) {
    const auto theta = random_theta(g, rep.group.order(), rep.bundle.base_size());
    const PhaseTable gauged = extract_exponent(gauge(rep, theta));
    for (std::size_t r = 0; r < rep.group.order(); ++r) {
      for (std::size_t s = 0; s < rep.group.order(); ++s) {
        for (std::size_t p = 0; p < rep.bundle.base_size(); ++p) {
          const double shift = theta[r][p] + theta[s][rep.group.act(r, p)] - theta[rep.group.multiply(r, s)][p];
          CHECK(phase_distance(gauged[r][s][p] - xi[r][s][p] - shift) < 1e-10);
        }
      }
    }
    CHECK(associativity_check(gauged, rep.group).max_residual < 1e-9);
  }
}

TEST_CASE("composition keeps fibers unitary") {
  auto g = testing::rng(9);
  const FactorRepresentation rep = gauge(weyl_over_cycle(4), random_theta(g, 16, 4));
  for (const auto& a : rep.maps) {
    for (const auto& b : rep.maps) CHECK_NOTHROW(validate(rep.bundle, compose(a, b), 1e-12));
  }
}

TEST_CASE("failures are reported, not absorbed") {
  ComplexMatrix flip = ComplexMatrix::Identity(2, 2);
  flip(1, 1) = -1;
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  CHECK_THROWS_AS(compose_and_extract(fiber_only(flip), fiber_only(id), fiber_only(id)), NumericError);
  const FiniteBundle b{{"p0"}, 2};
  CHECK_THROWS_AS(validate(b, fiber_only(2.0 * id)), NumericError);
  CHECK_THROWS_AS(validate(FiniteBundle{{"p", "q"}, 1}, BundleMap{{0, 0}, {id.topLeftCorner(1, 1), id.topLeftCorner(1, 1)}}),
                  NumericError);
  // Z_2 table with a broken product
  CHECK_THROWS_AS(GroupTable({"e", "a"}, {{0, 1}, {1, 1}}, {{0}, {0}}), NumericError);
  // a shifts a 3-cycle, so a*a = e cannot act trivially
  CHECK_THROWS_AS(GroupTable({"e", "a"}, {{0, 1}, {1, 0}}, {{0, 1, 2}, {1, 2, 0}}), NumericError);
}

TEST_CASE("infinitesimal probe") {
  const std::vector<double> a{1, 0}, b{0, 1}, p{};
  const PhaseFunction zero = [](auto, auto, auto) { return 0.0; };
  CHECK(infinitesimal_probe(zero, a, b, p, 1e-3) == 0.0);

  const double c = 0.75;
  const PhaseFunction bilinear = [c](std::span<const double> r, std::span<const double> s, auto) {
    return c * r[0] * s[1];
  };
  // xi(tau a, sigma b) - xi(sigma b, tau a) = c tau sigma - 0
  CHECK(infinitesimal_probe(bilinear, a, b, p, 1e-2) == doctest::Approx(c).epsilon(1e-12));
  const PhaseFunction symmetric = [c](std::span<const double> r, std::span<const double> s, auto) {
    return c * (r[0] * s[1] + r[1] * s[0]);
  };
  CHECK(std::abs(infinitesimal_probe(symmetric, a, b, p, 1e-2)) < 1e-12);

  // Second order: error of sinh(h)/h - 1 ~ h^2 / 6 drops by 4 when h halves.
  const PhaseFunction curved = [](std::span<const double> r, std::span<const double> s, auto) {
    return std::exp(r[0]) * s[1];
  };
  const double e1 = std::abs(infinitesimal_probe(curved, a, b, p, 0.1) - 1);
  const double e2 = std::abs(infinitesimal_probe(curved, a, b, p, 0.05) - 1);
  CHECK(e1 / e2 == doctest::Approx(4).epsilon(0.05));

  CHECK_THROWS_AS(infinitesimal_probe(bilinear, a, b, p, 0), NumericError);
  const PhaseFunction broken = [](auto, auto, auto) { return std::nan(""); };
  CHECK_THROWS_AS(infinitesimal_probe(broken, a, b, p, 1e-3), NumericError);
}

TEST_CASE("Weyl-type smooth phase matches the abelian(2) class") {
  // Continuum version of 2 pi b a' / N: xi(r, s) = r_1 s_0.
  const PhaseFunction weyl = [](std::span<const double> r, std::span<const double> s, auto) { return r[1] * s[0]; };
  const std::vector<double> e0{1, 0}, e1{0, 1}, p{};
  const double probe = infinitesimal_probe(weyl, e0, e1, p, 1e-3);

  CatalogEntry a = catalog("abelian(2)");
  const ClassificationReport r = classify(a.algebra, a.realization, 0);
  REQUIRE(r.representatives.size() == 1);
  const Rational rep = r.representatives[0].value(0, 1).coeff({});
  REQUIRE(rep != 0);
  // one-dimensional quotient: the probe is a nonzero multiple of the representative
  CHECK(std::abs(probe) > 0.5);
  CHECK(probe / rep.get_d() == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(std::abs(infinitesimal_probe(weyl, e0, e0, p, 1e-3)) < 1e-12);
}
