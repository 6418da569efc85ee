#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "covexp/base_action.hpp"
#include "covexp/exact_matrix.hpp"
#include "covexp/lie_algebra.hpp"
#include "covexp/trunc_poly.hpp"

namespace covexp {

// Position of the basis pair (i, j), i < j, in lexicographic pair order.
std::size_t pair_index(std::size_t algebra_dim, std::size_t i, std::size_t j);
std::vector<IndexPair> basis_pairs(std::size_t algebra_dim);
std::vector<IndexTriple> basis_triples(std::size_t algebra_dim);

// Antisymmetric bilinear form on the algebra with point-dependent polynomial
// values. Only Xi(e_i, e_j) for i < j is stored.
class InfExponent {
 public:
  InfExponent() = default;
  InfExponent(std::size_t algebra_dim, std::size_t chart_dim, unsigned degree_cap);

  std::size_t algebra_dim() const { return algebra_dim_; }
  std::size_t chart_dim() const { return chart_dim_; }
  unsigned degree_cap() const { return degree_cap_; }
  const std::vector<TruncPoly>& pair_values() const { return values_; }

  // Xi(e_i, e_j) with Xi_ji = -Xi_ij and Xi_ii = 0.
  TruncPoly value(std::size_t i, std::size_t j) const;
  // Stores Xi(e_i, e_j); i != j, the antisymmetric partner follows.
  void set(std::size_t i, std::size_t j, TruncPoly p);

  TruncPoly zero_poly() const { return TruncPoly(chart_dim_, degree_cap_); }
  bool is_zero() const;
  bool uses_only(const std::vector<bool>& allowed_coordinates) const;

  InfExponent& operator+=(const InfExponent& other);
  friend InfExponent operator+(InfExponent a, const InfExponent& b) { return a += b; }
  friend bool operator==(const InfExponent&, const InfExponent&) = default;

 private:
  std::size_t algebra_dim_ = 0;
  std::size_t chart_dim_ = 0;
  unsigned degree_cap_ = 0;
  std::vector<TruncPoly> values_;
};

// Linear form Lambda(a, p) = sum_i a_i Lambda_i(p).
class LambdaForm {
 public:
  LambdaForm() = default;
  LambdaForm(std::size_t algebra_dim, std::size_t chart_dim, unsigned degree_cap);

  std::size_t algebra_dim() const { return values_.size(); }
  std::size_t chart_dim() const { return chart_dim_; }
  unsigned degree_cap() const { return degree_cap_; }
  const TruncPoly& value(std::size_t i) const { return values_.at(i); }
  void set(std::size_t i, TruncPoly p);
  bool is_zero() const;

  friend bool operator==(const LambdaForm&, const LambdaForm&) = default;

 private:
  std::size_t chart_dim_ = 0;
  unsigned degree_cap_ = 0;
  std::vector<TruncPoly> values_;
};

// Polynomial-level operators. These work directly on TruncPolys and never go
// through the assembled matrices below, so they double as substitution checks.

// For each triple a < b < c of basis indices:
//   Xi([a,b],c) + Xi([b,c],a) + Xi([c,a],b) - X_a Xi(b,c) - X_b Xi(c,a) - X_c Xi(a,b).
std::map<IndexTriple, TruncPoly> cocycle_residual(const LieAlgebra& l, const ActionRealization& act,
                                                  const InfExponent& xi);
bool is_cocycle(const LieAlgebra& l, const ActionRealization& act, const InfExponent& xi);

// (delta Lambda)(a, b) = X_a Lambda(b) - X_b Lambda(a) - Lambda([a, b]).
InfExponent coboundary(const LieAlgebra& l, const ActionRealization& act, const LambdaForm& lambda);

// Polarized admissibility X_i Lambda_j + X_j Lambda_i = 0 for i <= j.
// Returns the violating pairs; empty means admissible.
std::vector<IndexPair> admissibility_violations(const ActionRealization& act, const LambdaForm& lambda);
inline bool is_admissible(const ActionRealization& act, const LambdaForm& lambda) {
  return admissibility_violations(act, lambda).empty();
}

// Finite coordinate model of the degree-capped cochain complex. Unknowns are
// one rational per (pair, monomial) for exponents and one per (generator,
// monomial) for Lambda forms; monomials follow monomials_up_to().
class ExponentSpace {
 public:
  // Throws DimensionError / InvalidRealization unless `act` realizes `l`.
  ExponentSpace(const LieAlgebra& l, const ActionRealization& act, unsigned degree_cap);

  const LieAlgebra& algebra() const { return algebra_; }
  const ActionRealization& realization() const { return act_; }
  unsigned degree_cap() const { return degree_cap_; }
  const std::vector<Monomial>& monomials() const { return monomials_; }

  std::size_t exponent_unknowns() const { return pair_count_ * monomials_.size(); }
  std::size_t lambda_unknowns() const { return algebra_.dim() * monomials_.size(); }

  Vector flatten(const InfExponent& xi) const;
  InfExponent exponent_from(const Vector& coords) const;
  Vector flatten(const LambdaForm& lambda) const;
  LambdaForm lambda_from(const Vector& coords) const;

  // Residual map: exponent coordinates -> (triple, monomial) rows.
  ExactMatrix cocycle_operator() const;
  // delta: Lambda coordinates -> exponent coordinates.
  ExactMatrix coboundary_operator() const;
  // Polarized admissibility rows, one per (i <= j, monomial).
  ExactMatrix admissibility_operator() const;

  std::string describe_exponent_row(std::size_t row) const;
  std::string describe_admissibility_row(std::size_t row) const;

 private:
  struct Term {
    std::size_t monomial;
    Rational coeff;
  };
  std::size_t monomial_index(const Monomial& m) const;

  LieAlgebra algebra_;
  ActionRealization act_;
  unsigned degree_cap_;
  std::size_t pair_count_;
  std::vector<Monomial> monomials_;
  // derivative_[a][nu] = X_a applied to monomial nu, expanded in monomials.
  std::vector<std::vector<std::vector<Term>>> derivative_;
};

std::vector<InfExponent> cocycle_space(const LieAlgebra& l, const ActionRealization& act, unsigned degree_cap);
std::vector<InfExponent> coboundary_space(const LieAlgebra& l, const ActionRealization& act, unsigned degree_cap,
                                          bool admissible_only);

struct ClassificationReport {
  std::string algebra;
  std::vector<std::string> basis_names;
  std::vector<std::string> coordinates;
  unsigned degree_cap = 0;
  bool trivial_action = false;
  std::size_t dim_cochains = 0;
  std::size_t dim_lambda_admissible = 0;
  std::size_t dim_cocycles = 0;
  std::size_t dim_coboundaries_admissible = 0;
  std::size_t dim_coboundaries_all = 0;
  std::size_t dim_quotient_admissible = 0;
  std::size_t dim_quotient_all = 0;
  // Complement of the admissible coboundaries inside the cocycles.
  std::vector<InfExponent> representatives;
  std::vector<InfExponent> cocycle_basis;
};

ClassificationReport classify(const LieAlgebra& l, const ActionRealization& act, unsigned degree_cap);

struct Reduction {
  LambdaForm lambda;     // admissible
  InfExponent reduced;   // xi + delta(lambda), supported on the kept coordinates
};

struct ReductionCertificate {
  // Combination of the constraint rows (admissibility rows first, then the
  // excluded-monomial rows) that annihilates every Lambda unknown but not the
  // right-hand side.
  Vector row_weights;
  Rational residual;
  std::vector<std::string> rows;  // labels of the rows with nonzero weight
};

using ReductionResult = std::variant<Reduction, ReductionCertificate>;

// Looks for an admissible Lambda with xi + delta(Lambda) free of every
// coordinate not flagged in `keep`. Throws NotACocycle if xi is not a cocycle.
// With admissible_only = false any Lambda is allowed (diagnostic: separates
// failures caused by the admissibility condition from genuine obstructions).
ReductionResult reduce_to_coordinates(const LieAlgebra& l, const ActionRealization& act, const InfExponent& xi,
                                      const std::vector<bool>& keep, bool admissible_only = true);

// One line per nonzero pair: "Ξ(K1, P1) = 1".
std::string render(const InfExponent& xi, const std::vector<std::string>& basis_names,
                   const std::vector<std::string>& coordinates);

}  // namespace covexp
