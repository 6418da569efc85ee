#include "covexp/base_action.hpp"

#include <sstream>

#include "covexp/error.hpp"

namespace covexp {

AffineVectorField::AffineVectorField(std::size_t chart_dim)
    : offset_(chart_dim), linear_(chart_dim, chart_dim) {}

AffineVectorField::AffineVectorField(Vector offset, ExactMatrix linear)
    : offset_(std::move(offset)), linear_(std::move(linear)) {
  if (linear_.rows() != offset_.size() || linear_.cols() != offset_.size()) {
    throw DimensionError("affine field: linear part must be chart_dim x chart_dim");
  }
}

AffineVectorField AffineVectorField::translation(std::size_t chart_dim, std::size_t mu) {
  AffineVectorField x(chart_dim);
  x.offset_.at(mu) = 1;
  return x;
}

TruncPoly AffineVectorField::component(std::size_t mu, unsigned degree_cap) const {
  const std::size_t d = chart_dim();
  TruncPoly p = TruncPoly::constant(d, degree_cap, offset_.at(mu));
  for (std::size_t nu = 0; nu < d; ++nu) {
    if (sgn(linear_(mu, nu)) == 0) continue;
    Monomial m(d, 0);
    m[nu] = 1;
    p.add_term(m, linear_(mu, nu));
  }
  return p;
}

bool AffineVectorField::is_zero() const {
  if (!covexp::is_zero(offset_)) return false;
  for (std::size_t r = 0; r < linear_.rows(); ++r) {
    for (const auto& q : linear_.row(r)) {
      if (sgn(q) != 0) return false;
    }
  }
  return true;
}

AffineVectorField& AffineVectorField::operator+=(const AffineVectorField& other) {
  if (other.chart_dim() != chart_dim()) throw DimensionError("vector fields on different charts");
  for (std::size_t mu = 0; mu < chart_dim(); ++mu) {
    offset_[mu] += other.offset_[mu];
    for (std::size_t nu = 0; nu < chart_dim(); ++nu) linear_(mu, nu) += other.linear_(mu, nu);
  }
  return *this;
}

AffineVectorField& AffineVectorField::operator*=(const Rational& s) {
  for (std::size_t mu = 0; mu < chart_dim(); ++mu) {
    offset_[mu] *= s;
    for (std::size_t nu = 0; nu < chart_dim(); ++nu) linear_(mu, nu) *= s;
  }
  return *this;
}

std::string AffineVectorField::to_string(const std::vector<std::string>& coords) const {
  std::ostringstream os;
  bool any = false;
  for (std::size_t mu = 0; mu < chart_dim(); ++mu) {
    TruncPoly c = component(mu, 1);
    if (c.is_zero()) continue;
    if (any) os << " + ";
    any = true;
    os << "(" << c.to_string(coords) << ") d_" << (mu < coords.size() ? coords[mu] : "x" + std::to_string(mu));
  }
  return any ? os.str() : "0";
}

ActionRealization::ActionRealization(std::vector<std::string> coordinates, std::vector<AffineVectorField> fields)
    : coords_(std::move(coordinates)), fields_(std::move(fields)) {
  for (const auto& f : fields_) {
    if (f.chart_dim() != coords_.size()) throw DimensionError("realization field does not live on the chart");
  }
}

ActionRealization ActionRealization::trivial(std::size_t algebra_dim, std::vector<std::string> coordinates) {
  const std::size_t d = coordinates.size();
  return ActionRealization(std::move(coordinates), std::vector<AffineVectorField>(algebra_dim, AffineVectorField(d)));
}

bool ActionRealization::is_trivial() const {
  for (const auto& f : fields_) {
    if (!f.is_zero()) return false;
  }
  return true;
}

std::size_t ActionRealization::coordinate_index(const std::string& name) const {
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == name) return i;
  }
  throw Error("chart has no coordinate '" + name + "'");
}

TruncPoly lie_derivative(const AffineVectorField& x, const TruncPoly& f) {
  const std::size_t d = f.num_vars();
  if (x.chart_dim() != d) throw DimensionError("lie_derivative: field and polynomial live on different charts");
  TruncPoly out(d, f.degree_cap());
  Monomial target(d);
  for (const auto& [m, c] : f.terms()) {
    for (std::size_t mu = 0; mu < d; ++mu) {
      if (m[mu] == 0) continue;
      const Rational base = c * m[mu];
      Monomial lowered = m;
      --lowered[mu];
      // Constant part of X^mu.
      if (sgn(x.offset()[mu]) != 0) out.add_term(lowered, base * x.offset()[mu]);
      // Linear part: multiply by x_nu, which restores the original degree.
      for (std::size_t nu = 0; nu < d; ++nu) {
        const Rational& a = x.linear()(mu, nu);
        if (sgn(a) == 0) continue;
        target = lowered;
        ++target[nu];
        out.add_term(target, base * a);
      }
    }
  }
  return out;
}

AffineVectorField field_commutator(const AffineVectorField& x, const AffineVectorField& y) {
  const std::size_t d = x.chart_dim();
  if (y.chart_dim() != d) throw DimensionError("field_commutator: fields live on different charts");
  // X = a + A x, Y = b + B x  =>  [X, Y] = (B a - A b) + (B A - A B) x.
  const ExactMatrix& a_lin = x.linear();
  const ExactMatrix& b_lin = y.linear();
  AffineVectorField out(d);
  for (std::size_t mu = 0; mu < d; ++mu) {
    Rational off;
    for (std::size_t nu = 0; nu < d; ++nu) off += b_lin(mu, nu) * x.offset()[nu] - a_lin(mu, nu) * y.offset()[nu];
    out.set_offset(mu, off);
    for (std::size_t nu = 0; nu < d; ++nu) {
      Rational v;
      for (std::size_t k = 0; k < d; ++k) v += b_lin(mu, k) * a_lin(k, nu) - a_lin(mu, k) * b_lin(k, nu);
      out.set_linear(mu, nu, v);
    }
  }
  return out;
}

std::vector<HomomorphismViolation> check_homomorphism(const LieAlgebra& algebra, const ActionRealization& act) {
  const std::size_t n = algebra.dim();
  if (act.generator_count() != n) {
    throw DimensionError("realization has " + std::to_string(act.generator_count()) + " fields for an algebra of dimension " +
                         std::to_string(n));
  }
  std::vector<HomomorphismViolation> violations;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      AffineVectorField residual = field_commutator(act.field(i), act.field(j));
      for (std::size_t k = 0; k < n; ++k) {
        const Rational& c = algebra.structure(i, j, k);
        if (sgn(c) != 0) residual = residual - c * act.field(k);
      }
      if (!residual.is_zero()) violations.push_back({{i, j}, std::move(residual)});
    }
  }
  return violations;
}

void require_valid_realization(const LieAlgebra& algebra, const ActionRealization& act) {
  const auto violations = check_homomorphism(algebra, act);
  if (violations.empty()) return;
  const auto& v = violations.front();
  const auto& names = algebra.basis_names();
  throw InvalidRealization("realization is not a homomorphism at pair (" + names[v.pair.i] + "," + names[v.pair.j] +
                           "): residual " + v.residual.to_string(act.coordinates()));
}

}  // namespace covexp
