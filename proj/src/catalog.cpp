#include "covexp/catalog.hpp"

#include <charconv>

#include "covexp/error.hpp"

namespace covexp {

namespace {

// Levi-Civita symbol on {0,1,2}.
int eps(std::size_t i, std::size_t j, std::size_t k) {
  if (i == j || j == k || i == k) return 0;
  return ((i + 1) % 3 == j) ? 1 : -1;
}

const std::vector<std::string> kSpacetime = {"t", "x", "y", "z"};

CatalogEntry abelian(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
  LieAlgebra l("abelian(" + std::to_string(n) + ")", names, StructureConstants(n));
  return {std::move(l), ActionRealization::trivial(n)};
}

CatalogEntry heisenberg(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("Q" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) names.push_back("P" + std::to_string(i));
  names.push_back("Z");
  const std::size_t dim = 2 * n + 1;
  StructureConstants c(dim);
  for (std::size_t i = 0; i < n; ++i) c.set_bracket(i, n + i, 2 * n, 1);
  LieAlgebra l("heisenberg(" + std::to_string(n) + ")", names, std::move(c));
  return {std::move(l), ActionRealization::trivial(dim)};
}

CatalogEntry so3() {
  StructureConstants c(3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t k = 0; k < 3; ++k) c.at(i, j, k) = eps(i, j, k);
    }
  }
  LieAlgebra l("so3", {"J1", "J2", "J3"}, std::move(c));
  return {std::move(l), ActionRealization::trivial(3)};
}

CatalogEntry galilei1() {
  enum { H, P, K };
  StructureConstants c(3);
  c.set_bracket(K, H, P, 1);
  LieAlgebra l("galilei1", {"H", "P", "K"}, std::move(c));

  const std::size_t t = 0, x = 1;
  std::vector<AffineVectorField> f(3, AffineVectorField(2));
  f[H].set_offset(t, -1);
  f[P].set_offset(x, -1);
  f[K].set_linear(x, t, -1);
  return {std::move(l), ActionRealization({"t", "x"}, std::move(f))};
}

// Rotation generator -eps_ijk x_j d_k on the spatial block (coordinates 1..3).
AffineVectorField rotation(std::size_t i) {
  AffineVectorField f(4);
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t k = 0; k < 3; ++k) {
      if (const int e = eps(i, j, k); e != 0) f.set_linear(1 + k, 1 + j, -e);
    }
  }
  return f;
}

void add_rotation_brackets(StructureConstants& c, std::size_t j0, std::size_t p0, std::size_t k0) {
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t k = 0; k < 3; ++k) {
        const int e = eps(i, j, k);
        if (e == 0) continue;
        if (i < j) c.set_bracket(j0 + i, j0 + j, j0 + k, e);
        c.set_bracket(j0 + i, p0 + j, p0 + k, e);
        c.set_bracket(j0 + i, k0 + j, k0 + k, e);
      }
    }
  }
}

CatalogEntry galilei3() {
  constexpr std::size_t H = 0, P = 1, K = 4, J = 7;
  StructureConstants c(10);
  for (std::size_t i = 0; i < 3; ++i) c.set_bracket(K + i, H, P + i, 1);
  add_rotation_brackets(c, J, P, K);
  LieAlgebra l("galilei3", {"H", "P1", "P2", "P3", "K1", "K2", "K3", "J1", "J2", "J3"}, std::move(c));

  std::vector<AffineVectorField> f(10, AffineVectorField(4));
  f[H].set_offset(0, -1);
  for (std::size_t i = 0; i < 3; ++i) {
    f[P + i].set_offset(1 + i, -1);
    f[K + i].set_linear(1 + i, 0, -1);
    f[J + i] = rotation(i);
  }
  return {std::move(l), ActionRealization(kSpacetime, std::move(f))};
}

CatalogEntry poincare4() {
  constexpr std::size_t P0 = 0, P = 1, K = 4, J = 7;
  StructureConstants c(10);
  for (std::size_t i = 0; i < 3; ++i) {
    c.set_bracket(K + i, P0, P + i, 1);
    c.set_bracket(K + i, P + i, P0, 1);
    for (std::size_t j = i + 1; j < 3; ++j) {
      for (std::size_t k = 0; k < 3; ++k) {
        if (const int e = eps(i, j, k); e != 0) c.set_bracket(K + i, K + j, J + k, -e);
      }
    }
  }
  add_rotation_brackets(c, J, P, K);
  LieAlgebra l("poincare4", {"P0", "P1", "P2", "P3", "K1", "K2", "K3", "J1", "J2", "J3"}, std::move(c));

  std::vector<AffineVectorField> f(10, AffineVectorField(4));
  f[P0].set_offset(0, -1);
  for (std::size_t i = 0; i < 3; ++i) {
    f[P + i].set_offset(1 + i, -1);
    // -(t d_i + x_i d_t)
    f[K + i].set_linear(1 + i, 0, -1);
    f[K + i].set_linear(0, 1 + i, -1);
    f[J + i] = rotation(i);
  }
  return {std::move(l), ActionRealization(kSpacetime, std::move(f))};
}

std::size_t parse_parameter(std::string_view selector, std::string_view prefix) {
  std::string_view arg = selector.substr(prefix.size());
  if (arg.size() < 3 || arg.front() != '(' || arg.back() != ')') {
    throw Error("catalog: expected " + std::string(prefix) + "(n), got '" + std::string(selector) + "'");
  }
  arg = arg.substr(1, arg.size() - 2);
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), n);
  if (ec != std::errc{} || ptr != arg.data() + arg.size() || n < 1 || n > 64) {
    throw Error("catalog: invalid parameter in '" + std::string(selector) + "'");
  }
  return n;
}

}  // namespace

bool is_catalog_name(std::string_view s) {
  return s == "so3" || s == "galilei1" || s == "galilei3" || s == "poincare4" || s.starts_with("abelian(") ||
         s.starts_with("heisenberg(");
}

CatalogEntry catalog(std::string_view selector) {
  if (selector == "so3") return so3();
  if (selector == "galilei1") return galilei1();
  if (selector == "galilei3") return galilei3();
  if (selector == "poincare4") return poincare4();
  if (selector.starts_with("abelian")) return abelian(parse_parameter(selector, "abelian"));
  if (selector.starts_with("heisenberg")) return heisenberg(parse_parameter(selector, "heisenberg"));
  throw Error("unknown algebra '" + std::string(selector) + "'");
}

}  // namespace covexp
