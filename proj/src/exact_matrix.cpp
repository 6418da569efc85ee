#include "covexp/exact_matrix.hpp"

#include <algorithm>

#include "covexp/error.hpp"

namespace covexp {

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ExactMatrix ExactMatrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  ExactMatrix m(0, cols);
  m.data_.reserve(rows.size() * cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<Vector>& rows) {
  return from_rows(rows, rows.empty() ? 0 : rows.front().size());
}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

void ExactMatrix::append_row(std::span<const Rational> values) {
  if (values.size() != cols_) throw DimensionError("append_row: row length does not match column count");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

Vector ExactMatrix::apply(const Vector& x) const {
  if (x.size() != cols_) throw DimensionError("apply: vector length does not match column count");
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const Rational& a = (*this)(r, c);
      if (sgn(a) != 0 && sgn(x[c]) != 0) out[r] += a * x[c];
    }
  }
  return out;
}

Vector ExactMatrix::apply_transpose(const Vector& y) const {
  if (y.size() != rows_) throw DimensionError("apply_transpose: vector length does not match row count");
  Vector out(cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (sgn(y[r]) == 0) continue;
    for (std::size_t c = 0; c < cols_; ++c) {
      const Rational& a = (*this)(r, c);
      if (sgn(a) != 0) out[c] += y[r] * a;
    }
  }
  return out;
}

namespace {

// Gauss-Jordan on the leading `pivot_limit` columns; row operations act on the
// full row so trailing columns (right-hand sides, row-tracking identity) follow.
std::vector<std::size_t> eliminate(ExactMatrix& m, std::size_t pivot_limit) {
  std::vector<std::size_t> pivots;
  std::size_t next_row = 0;
  std::vector<std::size_t> support;
  Rational factor;
  for (std::size_t c = 0; c < pivot_limit && next_row < m.rows(); ++c) {
    std::size_t p = next_row;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != next_row) {
      auto a = m.row(p);
      auto b = m.row(next_row);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    auto prow = m.row(next_row);
    if (prow[c] != 1) {
      const Rational inv = 1 / prow[c];
      for (std::size_t k = c; k < m.cols(); ++k) {
        if (sgn(prow[k]) != 0) prow[k] *= inv;
      }
    }
    support.clear();
    for (std::size_t k = c; k < m.cols(); ++k) {
      if (sgn(prow[k]) != 0) support.push_back(k);
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == next_row || sgn(m(r, c)) == 0) continue;
      factor = m(r, c);
      auto row = m.row(r);
      for (std::size_t k : support) row[k] -= factor * prow[k];
    }
    pivots.push_back(c);
    ++next_row;
  }
  return pivots;
}

std::vector<Vector> kernel_from_rref(const ExactMatrix& reduced, const std::vector<std::size_t>& pivots,
                                     std::size_t cols) {
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vector v(cols);
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      const Rational& a = reduced(r, f);
      if (sgn(a) != 0) v[pivots[r]] = -a;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

RowEchelon reduced_row_echelon(ExactMatrix m) {
  auto pivots = eliminate(m, m.cols());
  return RowEchelon{std::move(m), std::move(pivots)};
}

std::size_t rank(const ExactMatrix& m) { return reduced_row_echelon(m).rank(); }

std::vector<Vector> nullspace(const ExactMatrix& m) {
  const RowEchelon e = reduced_row_echelon(m);
  return kernel_from_rref(e.reduced, e.pivot_cols, m.cols());
}

AffineResult solve_affine(const ExactMatrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw DimensionError("solve_affine: rhs length does not match row count");
  const std::size_t n = m.cols();
  const std::size_t rows = m.rows();
  // [M | b | I]: the identity block records which row combination produced each row.
  ExactMatrix aug(rows, n + 1 + rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n) = b[r];
    aug(r, n + 1 + r) = 1;
  }
  const auto pivots = eliminate(aug, n);
  for (std::size_t r = pivots.size(); r < rows; ++r) {
    if (sgn(aug(r, n)) == 0) continue;
    Vector y(aug.row(r).begin() + static_cast<std::ptrdiff_t>(n + 1), aug.row(r).end());
    auto lead = std::find_if(y.begin(), y.end(), [](const Rational& q) { return sgn(q) != 0; });
    Rational scale = 1 / *lead;
    for (auto& q : y) q *= scale;
    Rational residual = aug(r, n) * scale;
    return InfeasibilityCertificate{std::move(y), std::move(residual)};
  }
  AffineSolution sol;
  sol.particular.assign(n, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) sol.particular[pivots[r]] = aug(r, n);
  sol.kernel = kernel_from_rref(aug, pivots, n);
  return sol;
}

void SpanBuilder::reduce_in_place(Vector& v) const {
  if (v.size() != ambient_dim_) throw DimensionError("SpanBuilder: vector has wrong length");
  Rational factor;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::size_t p = pivots_[i];
    if (sgn(v[p]) == 0) continue;
    factor = v[p];
    for (std::size_t k : support_[i]) v[k] -= factor * rows_[i][k];
  }
}

Vector SpanBuilder::reduce(Vector v) const {
  reduce_in_place(v);
  return v;
}

bool SpanBuilder::insert(const Vector& input) {
  Vector v = input;
  reduce_in_place(v);
  auto lead = std::find_if(v.begin(), v.end(), [](const Rational& q) { return sgn(q) != 0; });
  if (lead == v.end()) return false;
  const std::size_t p = static_cast<std::size_t>(lead - v.begin());
  const Rational inv = 1 / v[p];
  std::vector<std::size_t> support;
  for (std::size_t k = p; k < v.size(); ++k) {
    if (sgn(v[k]) == 0) continue;
    v[k] *= inv;
    support.push_back(k);
  }
  // Keep existing rows fully reduced against the new pivot.
  Rational factor;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (sgn(rows_[i][p]) == 0) continue;
    factor = rows_[i][p];
    for (std::size_t k : support) rows_[i][k] -= factor * v[k];
    auto& s = support_[i];
    s.clear();
    for (std::size_t k = 0; k < ambient_dim_; ++k) {
      if (sgn(rows_[i][k]) != 0) s.push_back(k);
    }
  }
  const auto pos = static_cast<std::size_t>(std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin());
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
  pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), p);
  support_.insert(support_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(support));
  return true;
}

}  // namespace covexp
