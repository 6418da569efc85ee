#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "covexp/rational.hpp"

namespace covexp {

struct IndexPair {
  std::size_t i = 0;
  std::size_t j = 0;
  friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

struct IndexTriple {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  friend auto operator<=>(const IndexTriple&, const IndexTriple&) = default;
};

// Raw tensor c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k. No invariants.
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(std::size_t dim) : dim_(dim), c_(dim * dim * dim) {}

  std::size_t dim() const { return dim_; }
  Rational& at(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * dim_ + j) * dim_ + k]; }
  const Rational& at(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * dim_ + j) * dim_ + k]; }

  // Sets [e_i, e_j] = value e_k and [e_j, e_i] = -value e_k.
  void set_bracket(std::size_t i, std::size_t j, std::size_t k, const Rational& value);

  friend bool operator==(const StructureConstants&, const StructureConstants&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Rational> c_;
};

struct JacobiReport {
  std::vector<IndexPair> antisymmetry_violations;  // i <= j with c[i][j] != -c[j][i]
  std::vector<IndexTriple> jacobi_violations;      // sorted index multisets i <= j <= k
  bool ok() const { return antisymmetry_violations.empty() && jacobi_violations.empty(); }
};

// Exact check over every basis pair and triple. The Jacobi sum is evaluated on
// the raw tensor, so entry-level corruption shows up even when it breaks
// antisymmetry.
JacobiReport check_jacobi(const StructureConstants& c);

class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(Vector coords) : coords_(std::move(coords)) {}
  static AlgebraElement zero(std::size_t dim) { return AlgebraElement(Vector(dim)); }
  static AlgebraElement basis(std::size_t dim, std::size_t i);

  std::size_t dim() const { return coords_.size(); }
  const Vector& coords() const { return coords_; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator*=(const Rational& s);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator*(const Rational& s, AlgebraElement a) { return a *= s; }
  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

 private:
  Vector coords_;
};

// Finite-dimensional Lie algebra over Q. Construction validates antisymmetry
// and the Jacobi identity exactly and throws InvalidAlgebra on failure.
class LieAlgebra {
 public:
  LieAlgebra(std::string name, std::vector<std::string> basis_names, StructureConstants structure);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return names_.size(); }
  const std::vector<std::string>& basis_names() const { return names_; }
  const StructureConstants& structure() const { return c_; }
  const Rational& structure(std::size_t i, std::size_t j, std::size_t k) const { return c_.at(i, j, k); }

  // Index of a basis label; throws Error for unknown names.
  std::size_t index_of(const std::string& basis_name) const;

  AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) const;

 private:
  std::string name_;
  std::vector<std::string> names_;
  StructureConstants c_;
};

inline AlgebraElement bracket(const LieAlgebra& l, const AlgebraElement& x, const AlgebraElement& y) {
  return l.bracket(x, y);
}

inline JacobiReport check_jacobi(const LieAlgebra& l) { return check_jacobi(l.structure()); }

std::string describe(const JacobiReport& report);

}  // namespace covexp
