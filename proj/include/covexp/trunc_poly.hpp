#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "covexp/rational.hpp"

namespace covexp {

// Exponent multi-index, one entry per base coordinate.
using Monomial = std::vector<std::uint16_t>;

unsigned total_degree(const Monomial& m);

// Graded order: lower total degree first, then the earlier coordinate wins
// (1 < t < x < t^2 < t x < x^2 for coordinates (t, x)).
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// All monomials in num_vars variables of total degree <= cap, in MonomialOrder.
std::vector<Monomial> monomials_up_to(std::size_t num_vars, unsigned cap);

// Polynomial with exact rational coefficients whose total degree never exceeds
// a fixed cap. Zero coefficients are never stored, so equality is structural.
class TruncPoly {
 public:
  using Terms = std::map<Monomial, Rational, MonomialOrder>;

  TruncPoly() = default;
  TruncPoly(std::size_t num_vars, unsigned degree_cap);

  static TruncPoly constant(std::size_t num_vars, unsigned degree_cap, const Rational& value);
  static TruncPoly variable(std::size_t num_vars, unsigned degree_cap, std::size_t index);
  static TruncPoly monomial(std::size_t num_vars, unsigned degree_cap, Monomial exponents,
                            const Rational& coeff = 1);

  std::size_t num_vars() const { return num_vars_; }
  unsigned degree_cap() const { return degree_cap_; }
  const Terms& terms() const { return terms_; }

  Rational coeff(const Monomial& m) const;
  bool is_zero() const { return terms_.empty(); }
  // -1 for the zero polynomial.
  int degree() const;

  // Adds coeff * m in place; throws DegreeOverflow if m exceeds the cap.
  void add_term(const Monomial& m, const Rational& coeff);

  // True when every stored monomial only involves coordinates flagged in `allowed`.
  bool uses_only(const std::vector<bool>& allowed) const;

  TruncPoly& operator+=(const TruncPoly& other);
  TruncPoly& operator-=(const TruncPoly& other);
  TruncPoly& operator*=(const Rational& s);

  friend TruncPoly operator+(TruncPoly a, const TruncPoly& b) { return a += b; }
  friend TruncPoly operator-(TruncPoly a, const TruncPoly& b) { return a -= b; }
  friend TruncPoly operator*(TruncPoly a, const Rational& s) { return a *= s; }
  friend TruncPoly operator*(const Rational& s, TruncPoly a) { return a *= s; }
  TruncPoly operator-() const;

  friend bool operator==(const TruncPoly& a, const TruncPoly& b) {
    return a.num_vars_ == b.num_vars_ && a.degree_cap_ == b.degree_cap_ && a.terms_ == b.terms_;
  }

  // Human readable, e.g. "3/2 t^2 - x + 1". Uses x0, x1, ... when names are absent.
  std::string to_string(std::span<const std::string> var_names = {}) const;

 private:
  void require_compatible(const TruncPoly& other, const char* op) const;

  std::size_t num_vars_ = 0;
  unsigned degree_cap_ = 0;
  Terms terms_;
};

TruncPoly poly_add(const TruncPoly& f, const TruncPoly& g);

// Exact formal partial derivative; the cap is unchanged.
TruncPoly poly_partial(const TruncPoly& f, std::size_t var_index);

// Exact product under the shared cap. Never truncates: throws DegreeOverflow
// when a nonzero term of the product would exceed the cap.
TruncPoly poly_multiply(const TruncPoly& f, const TruncPoly& g);

}  // namespace covexp
