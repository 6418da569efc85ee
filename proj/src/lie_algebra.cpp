#include "covexp/lie_algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "covexp/error.hpp"

namespace covexp {

void StructureConstants::set_bracket(std::size_t i, std::size_t j, std::size_t k, const Rational& value) {
  if (i >= dim_ || j >= dim_ || k >= dim_) throw DimensionError("structure constant index out of range");
  at(i, j, k) = value;
  at(j, i, k) = -value;
}

JacobiReport check_jacobi(const StructureConstants& c) {
  const std::size_t n = c.dim();
  JacobiReport report;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (c.at(i, j, k) != -c.at(j, i, k)) {
          report.antisymmetry_violations.push_back({i, j});
          break;
        }
      }
    }
  }
  // [[e_a, e_b], e_c] + [[e_b, e_c], e_a] + [[e_c, e_a], e_b] for every ordered triple.
  std::set<IndexTriple> bad;
  Rational sum;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t d = 0; d < n; ++d) {
        for (std::size_t l = 0; l < n; ++l) {
          sum = 0;
          for (std::size_t m = 0; m < n; ++m) {
            sum += c.at(a, b, m) * c.at(m, d, l) + c.at(b, d, m) * c.at(m, a, l) + c.at(d, a, m) * c.at(m, b, l);
          }
          if (sgn(sum) != 0) {
            std::size_t s[3] = {a, b, d};
            std::sort(s, s + 3);
            bad.insert({s[0], s[1], s[2]});
            break;
          }
        }
      }
    }
  }
  report.jacobi_violations.assign(bad.begin(), bad.end());
  return report;
}

std::string describe(const JacobiReport& report) {
  std::ostringstream os;
  for (const auto& p : report.antisymmetry_violations) os << "antisymmetry fails at pair (" << p.i << "," << p.j << "); ";
  for (const auto& t : report.jacobi_violations) os << "Jacobi fails at triple (" << t.i << "," << t.j << "," << t.k << "); ";
  return os.str();
}

AlgebraElement AlgebraElement::basis(std::size_t dim, std::size_t i) {
  if (i >= dim) throw DimensionError("basis index out of range");
  Vector v(dim);
  v[i] = 1;
  return AlgebraElement(std::move(v));
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  if (other.dim() != dim()) throw DimensionError("algebra elements of different dimension");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(const Rational& s) {
  for (auto& q : coords_) q *= s;
  return *this;
}

LieAlgebra::LieAlgebra(std::string name, std::vector<std::string> basis_names, StructureConstants structure)
    : name_(std::move(name)), names_(std::move(basis_names)), c_(std::move(structure)) {
  if (c_.dim() != names_.size()) {
    throw DimensionError("algebra '" + name_ + "': " + std::to_string(names_.size()) + " names for dimension " +
                         std::to_string(c_.dim()));
  }
  std::set<std::string> unique(names_.begin(), names_.end());
  if (unique.size() != names_.size()) throw InvalidAlgebra("algebra '" + name_ + "': duplicate basis names");
  const JacobiReport report = check_jacobi(c_);
  if (!report.ok()) throw InvalidAlgebra("algebra '" + name_ + "': " + describe(report));
}

std::size_t LieAlgebra::index_of(const std::string& basis_name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == basis_name) return i;
  }
  throw Error("algebra '" + name_ + "' has no basis element '" + basis_name + "'");
}

AlgebraElement LieAlgebra::bracket(const AlgebraElement& x, const AlgebraElement& y) const {
  const std::size_t n = dim();
  if (x.dim() != n || y.dim() != n) throw DimensionError("bracket: element dimension does not match algebra");
  Vector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(y[j]) == 0) continue;
      const Rational w = x[i] * y[j];
      for (std::size_t k = 0; k < n; ++k) {
        const Rational& cijk = c_.at(i, j, k);
        if (sgn(cijk) != 0) out[k] += w * cijk;
      }
    }
  }
  return AlgebraElement(std::move(out));
}

}  // namespace covexp
