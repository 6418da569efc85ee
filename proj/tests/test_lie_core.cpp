#include <doctest.h>

#include "covexp/catalog.hpp"
#include "covexp/error.hpp"
#include "covexp/lie_algebra.hpp"
#include "support.hpp"

using namespace covexp;

namespace {

AlgebraElement e(const LieAlgebra& l, const std::string& name) { return AlgebraElement::basis(l.dim(), l.index_of(name)); }

StructureConstants so3_constants() {
  StructureConstants c(3);
  c.set_bracket(0, 1, 2, 1);
  c.set_bracket(1, 2, 0, 1);
  c.set_bracket(2, 0, 1, 1);
  return c;
}

const char* const kCatalog[] = {"abelian(1)", "abelian(2)", "abelian(5)", "heisenberg(1)", "heisenberg(3)",
                                "so3",        "galilei1",   "galilei3",   "poincare4"};

}  // namespace

TEST_CASE("galilei3 brackets in the fixed basis order") {
  const LieAlgebra l = catalog("galilei3").algebra;
  CHECK(l.dim() == 10);
  CHECK(l.basis_names() == std::vector<std::string>{"H", "P1", "P2", "P3", "K1", "K2", "K3", "J1", "J2", "J3"});
  CHECK(bracket(l, e(l, "K1"), e(l, "H")) == e(l, "P1"));
  CHECK(bracket(l, e(l, "H"), e(l, "K2")) == -1 * e(l, "P2"));
  CHECK(bracket(l, e(l, "J1"), e(l, "J2")) == e(l, "J3"));
  CHECK(bracket(l, e(l, "J3"), e(l, "P1")) == e(l, "P2"));
  CHECK(bracket(l, e(l, "J2"), e(l, "K1")) == -1 * e(l, "K3"));
  CHECK(bracket(l, e(l, "K1"), e(l, "P1")) == AlgebraElement::zero(10));
  CHECK(bracket(l, e(l, "K1"), e(l, "K2")) == AlgebraElement::zero(10));
}

TEST_CASE("poincare4 boosts close on rotations") {
  const LieAlgebra l = catalog("poincare4").algebra;
  CHECK(bracket(l, e(l, "K1"), e(l, "P0")) == e(l, "P1"));
  CHECK(bracket(l, e(l, "K2"), e(l, "P2")) == e(l, "P0"));
  CHECK(bracket(l, e(l, "K1"), e(l, "K2")) == -1 * e(l, "J3"));
}

TEST_CASE("small catalog entries") {
  const LieAlgebra a = catalog("abelian(2)").algebra;
  CHECK(a.dim() == 2);
  CHECK(bracket(a, e(a, "e0"), e(a, "e1")) == AlgebraElement::zero(2));
  const LieAlgebra s = catalog("so3").algebra;
  CHECK(bracket(s, e(s, "J1"), e(s, "J2")) == e(s, "J3"));
  CHECK(bracket(s, e(s, "J2"), e(s, "J3")) == e(s, "J1"));
  CHECK(bracket(s, e(s, "J3"), e(s, "J1")) == e(s, "J2"));
  const LieAlgebra h = catalog("heisenberg(2)").algebra;
  CHECK(h.dim() == 5);
  CHECK(bracket(h, e(h, "Q2"), e(h, "P2")) == e(h, "Z"));
  CHECK(bracket(h, e(h, "Q1"), e(h, "P2")) == AlgebraElement::zero(5));
  CHECK(catalog("galilei3").realization.chart_dim() == 4);
  CHECK(catalog("galilei1").realization.coordinates() == std::vector<std::string>{"t", "x"});
}

TEST_CASE("catalog rejects unknown names and bad parameters") {
  CHECK_THROWS_AS(catalog("nosuch"), Error);
  CHECK_THROWS_AS(catalog("abelian(0)"), Error);
  CHECK_THROWS_AS(catalog("abelian"), Error);
  CHECK_THROWS_AS(catalog("heisenberg(x)"), Error);
  CHECK_FALSE(is_catalog_name("nosuch"));
  CHECK(is_catalog_name("heisenberg(4)"));
}

TEST_CASE("every catalog algebra satisfies Jacobi exactly") {
  for (const char* name : kCatalog) {
    CAPTURE(name);
    CHECK(check_jacobi(catalog(name).algebra).ok());
  }
}

TEST_CASE("[x, x] = 0 and bilinearity on random rational inputs") {
  auto g = testing::rng(3);
  for (const char* name : kCatalog) {
    const LieAlgebra l = catalog(name).algebra;
    for (int trial = 0; trial < 20; ++trial) {
      Vector xs(l.dim()), ys(l.dim()), zs(l.dim());
      for (std::size_t i = 0; i < l.dim(); ++i) {
        xs[i] = testing::random_rational(g);
        ys[i] = testing::random_rational(g);
        zs[i] = testing::random_rational(g);
      }
      const AlgebraElement x(xs), y(ys), z(zs);
      const Rational alpha = testing::random_rational(g);
      CHECK(bracket(l, x, x) == AlgebraElement::zero(l.dim()));
      CHECK(bracket(l, alpha * x + y, z) == alpha * bracket(l, x, z) + bracket(l, y, z));
      CHECK(bracket(l, x, y) == Rational(-1) * bracket(l, y, x));
    }
  }
}

TEST_CASE("corrupting a single so3 entry is caught") {
  StructureConstants c = so3_constants();
  CHECK(check_jacobi(c).ok());
  c.at(0, 1, 2) = -1;  // partner c[1][0][2] stays -1
  const JacobiReport report = check_jacobi(c);
  CHECK_FALSE(report.ok());
  REQUIRE(report.antisymmetry_violations.size() == 1);
  CHECK(report.antisymmetry_violations.front() == IndexPair{0, 1});
  // On the raw tensor the Jacobi sums that see the broken entry are the ones
  // with a repeated index; the distinct triple (0,1,2) cancels.
  CHECK(report.jacobi_violations == std::vector<IndexTriple>{{0, 0, 1}, {0, 1, 1}});
  CHECK_THROWS_AS(LieAlgebra("bad", {"J1", "J2", "J3"}, c), InvalidAlgebra);
  try {
    LieAlgebra("bad", {"J1", "J2", "J3"}, c);
  } catch (const InvalidAlgebra& err) {
    CHECK(std::string(err.what()).find("(0,1)") != std::string::npos);
  }
}

TEST_CASE("a genuinely non-Jacobi bracket is reported by triple") {
  // [e0,e1] = e0, [e1,e2] = e1, [e0,e2] = e2 is antisymmetric but not Lie.
  StructureConstants c(3);
  c.set_bracket(0, 1, 0, 1);
  c.set_bracket(1, 2, 1, 1);
  c.set_bracket(0, 2, 2, 1);
  const JacobiReport report = check_jacobi(c);
  CHECK(report.antisymmetry_violations.empty());
  CHECK(std::find(report.jacobi_violations.begin(), report.jacobi_violations.end(), IndexTriple{0, 1, 2}) !=
        report.jacobi_violations.end());
}

TEST_CASE("dimension mismatches are rejected") {
  const LieAlgebra l = catalog("so3").algebra;
  CHECK_THROWS_AS(bracket(l, AlgebraElement::zero(2), AlgebraElement::zero(3)), DimensionError);
  CHECK_THROWS_AS(LieAlgebra("x", {"a"}, StructureConstants(2)), DimensionError);
}
