#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "covexp/rational.hpp"

namespace covexp {

// Dense row-major matrix of exact rationals.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols);

  static ExactMatrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static ExactMatrix from_rows(const std::vector<Vector>& rows);
  static ExactMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Rational> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void append_row(std::span<const Rational> values);

  // M x
  Vector apply(const Vector& x) const;
  // y^T M
  Vector apply_transpose(const Vector& y) const;

  friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RowEchelon {
  ExactMatrix reduced;                  // reduced row echelon form, pivots equal to 1
  std::vector<std::size_t> pivot_cols;  // one per nonzero row, increasing
  std::size_t rank() const { return pivot_cols.size(); }
};

// Gauss-Jordan elimination. The pivot for each column is the first remaining
// row with a nonzero entry, so the output is a deterministic function of the input.
RowEchelon reduced_row_echelon(ExactMatrix m);

std::size_t rank(const ExactMatrix& m);

// Basis of ker(M): one vector per free column f, with x_f = 1 and zeros at the
// other free columns.
std::vector<Vector> nullspace(const ExactMatrix& m);

struct AffineSolution {
  Vector particular;            // free variables set to zero
  std::vector<Vector> kernel;   // nullspace(M)
};

// y with y^T M = 0 and y^T b != 0; the first nonzero entry of y is 1.
struct InfeasibilityCertificate {
  Vector row_weights;
  Rational residual;  // y^T b
};

using AffineResult = std::variant<AffineSolution, InfeasibilityCertificate>;

AffineResult solve_affine(const ExactMatrix& m, const Vector& b);

// Incrementally maintained reduced echelon basis of a subspace of Q^n.
// Basis vectors are kept fully reduced, so reduce() returns a canonical
// normal form of a vector modulo the span.
class SpanBuilder {
 public:
  explicit SpanBuilder(std::size_t ambient_dim) : ambient_dim_(ambient_dim) {}

  // Adds v to the span; returns false when v was already contained.
  bool insert(const Vector& v);
  Vector reduce(Vector v) const;
  bool contains(const Vector& v) const { return is_zero(reduce(v)); }

  std::size_t dim() const { return rows_.size(); }
  std::size_t ambient_dim() const { return ambient_dim_; }
  const std::vector<Vector>& basis() const { return rows_; }

 private:
  void reduce_in_place(Vector& v) const;

  std::size_t ambient_dim_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<std::size_t>> support_;
};

}  // namespace covexp
