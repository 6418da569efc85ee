#include <doctest.h>

#include "covexp/base_action.hpp"
#include "covexp/catalog.hpp"
#include "covexp/error.hpp"
#include "support.hpp"

using namespace covexp;

namespace {

// chart (t, x, y)
constexpr std::size_t T = 0, X = 1, Y = 2;

AffineVectorField d(std::size_t mu) { return AffineVectorField::translation(3, mu); }

// coeff * coord d_target
AffineVectorField lin(std::size_t target, std::size_t coord, const Rational& coeff = 1) {
  AffineVectorField f(3);
  f.set_linear(target, coord, coeff);
  return f;
}

TruncPoly mono(Monomial m, const Rational& c = 1, unsigned cap = 2) { return TruncPoly::monomial(3, cap, std::move(m), c); }

}  // namespace

TEST_CASE("lie_derivative hand examples") {
  CHECK(lie_derivative(d(T), mono({2, 0, 0})) == mono({1, 0, 0}, 2));
  CHECK(lie_derivative(lin(X, T), mono({0, 1, 0})) == mono({1, 0, 0}));
  CHECK(lie_derivative(lin(X, T), mono({1, 1, 0})) == mono({2, 0, 0}));
  CHECK_THROWS_AS(lie_derivative(AffineVectorField(2), mono({1, 0, 0})), DimensionError);
}

TEST_CASE("field_commutator hand examples") {
  // [t d_x, d_t] = -d_x
  CHECK(field_commutator(lin(X, T), d(T)) == Rational(-1) * d(X));
  CHECK(field_commutator(d(T), d(X)).is_zero());
  // [x d_y - y d_x, d_x] = -d_y
  CHECK(field_commutator(lin(Y, X) - lin(X, Y), d(X)) == Rational(-1) * d(Y));
  CHECK_THROWS_AS(field_commutator(d(T), AffineVectorField::translation(2, 0)), DimensionError);
}

TEST_CASE("lie_derivative is a linear derivation") {
  auto g = testing::rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    AffineVectorField v(3), w(3);
    for (std::size_t mu = 0; mu < 3; ++mu) {
      v.set_offset(mu, testing::random_rational(g));
      w.set_offset(mu, testing::random_rational(g));
      for (std::size_t nu = 0; nu < 3; ++nu) {
        v.set_linear(mu, nu, testing::random_rational(g));
        w.set_linear(mu, nu, testing::random_rational(g));
      }
    }
    const TruncPoly f = testing::random_poly(g, 3, 1);
    const TruncPoly h = testing::random_poly(g, 3, 1);
    // lift to cap 2 so the product fits
    TruncPoly f2(3, 2), h2(3, 2);
    for (const auto& [m, c] : f.terms()) f2.add_term(m, c);
    for (const auto& [m, c] : h.terms()) h2.add_term(m, c);
    const Rational a = testing::random_rational(g);
    CHECK(lie_derivative(v, poly_multiply(f2, h2)) ==
          poly_multiply(lie_derivative(v, f2), h2) + poly_multiply(f2, lie_derivative(v, h2)));
    CHECK(lie_derivative(a * v + w, f2) == a * lie_derivative(v, f2) + lie_derivative(w, f2));
    CHECK(lie_derivative(v, a * f2 + h2) == a * lie_derivative(v, f2) + lie_derivative(v, h2));
  }
}

TEST_CASE("catalog realizations are homomorphisms") {
  for (const char* name : {"abelian(3)", "heisenberg(2)", "so3", "galilei1", "galilei3", "poincare4"}) {
    CAPTURE(name);
    const CatalogEntry entry = catalog(name);
    CHECK(check_homomorphism(entry.algebra, entry.realization).empty());
  }
  const LieAlgebra a = catalog("abelian(4)").algebra;
  CHECK(check_homomorphism(a, ActionRealization::trivial(4, {"t"})).empty());
}

TEST_CASE("galilei1 with the boost sign flipped fails at (H, K)") {
  const CatalogEntry g = catalog("galilei1");
  std::vector<AffineVectorField> fields = g.realization.fields();
  const std::size_t k = g.algebra.index_of("K");
  fields[k] = Rational(-1) * fields[k];
  const ActionRealization flipped(g.realization.coordinates(), fields);
  const auto violations = check_homomorphism(g.algebra, flipped);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].pair == IndexPair{g.algebra.index_of("H"), k});
  // [X_H, X_K'] = [-d_t, t d_x] = -d_x while X_[H,K] = X_{-P} = d_x
  CHECK(violations[0].residual == Rational(-2) * AffineVectorField::translation(2, 1));
  CHECK_THROWS_WITH_AS(require_valid_realization(g.algebra, flipped),
                       doctest::Contains("pair (H,K)"), InvalidRealization);
}

TEST_CASE("realization size must match the algebra") {
  const LieAlgebra l = catalog("so3").algebra;
  CHECK_THROWS_AS(check_homomorphism(l, ActionRealization::trivial(2)), DimensionError);
  CHECK_THROWS_AS(ActionRealization({"t"}, {AffineVectorField(2)}), DimensionError);
}
