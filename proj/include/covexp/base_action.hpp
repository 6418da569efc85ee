#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "covexp/exact_matrix.hpp"
#include "covexp/lie_algebra.hpp"
#include "covexp/trunc_poly.hpp"

namespace covexp {

// X = sum_mu X^mu d_mu with X^mu(x) = offset[mu] + sum_nu linear(mu, nu) x_nu.
class AffineVectorField {
 public:
  AffineVectorField() = default;
  explicit AffineVectorField(std::size_t chart_dim);
  AffineVectorField(Vector offset, ExactMatrix linear);

  // d_mu
  static AffineVectorField translation(std::size_t chart_dim, std::size_t mu);

  std::size_t chart_dim() const { return offset_.size(); }
  const Vector& offset() const { return offset_; }
  const ExactMatrix& linear() const { return linear_; }

  void set_offset(std::size_t mu, const Rational& value) { offset_[mu] = value; }
  void set_linear(std::size_t mu, std::size_t nu, const Rational& value) { linear_(mu, nu) = value; }

  // Component X^mu as a polynomial with the given cap (cap >= 1 unless the component is constant).
  TruncPoly component(std::size_t mu, unsigned degree_cap) const;

  bool is_zero() const;

  AffineVectorField& operator+=(const AffineVectorField& other);
  AffineVectorField& operator*=(const Rational& s);
  friend AffineVectorField operator+(AffineVectorField a, const AffineVectorField& b) { return a += b; }
  friend AffineVectorField operator-(AffineVectorField a, const AffineVectorField& b) {
    AffineVectorField nb = b;
    nb *= -1;
    return a += nb;
  }
  friend AffineVectorField operator*(const Rational& s, AffineVectorField a) { return a *= s; }
  friend bool operator==(const AffineVectorField&, const AffineVectorField&) = default;

  std::string to_string(const std::vector<std::string>& coords) const;

 private:
  Vector offset_;
  ExactMatrix linear_;
};

// One affine field per basis element of an algebra, on a named coordinate chart.
// Constructing one does not validate closure; check_homomorphism does.
class ActionRealization {
 public:
  ActionRealization() = default;
  ActionRealization(std::vector<std::string> coordinates, std::vector<AffineVectorField> fields);

  // All fields zero.
  static ActionRealization trivial(std::size_t algebra_dim, std::vector<std::string> coordinates = {});

  std::size_t chart_dim() const { return coords_.size(); }
  std::size_t generator_count() const { return fields_.size(); }
  const std::vector<std::string>& coordinates() const { return coords_; }
  const std::vector<AffineVectorField>& fields() const { return fields_; }
  const AffineVectorField& field(std::size_t a) const { return fields_.at(a); }
  bool is_trivial() const;

  std::size_t coordinate_index(const std::string& name) const;

 private:
  std::vector<std::string> coords_;
  std::vector<AffineVectorField> fields_;
};

// sum_mu X^mu d_mu f, exact. Degree never grows because X is affine.
TruncPoly lie_derivative(const AffineVectorField& x, const TruncPoly& f);

// [X, Y]^mu = X(Y^mu) - Y(X^mu).
AffineVectorField field_commutator(const AffineVectorField& x, const AffineVectorField& y);

struct HomomorphismViolation {
  IndexPair pair;               // i < j
  AffineVectorField residual;   // [X_i, X_j] - X_[e_i, e_j]
};

// Verifies [X_i, X_j] = X_[e_i, e_j] for all i < j.
std::vector<HomomorphismViolation> check_homomorphism(const LieAlgebra& algebra, const ActionRealization& act);

// Throws InvalidRealization (with the first offending pair) unless the realization
// matches the algebra's dimension and passes check_homomorphism.
void require_valid_realization(const LieAlgebra& algebra, const ActionRealization& act);

}  // namespace covexp
