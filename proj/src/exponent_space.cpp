#include "covexp/exponent_space.hpp"

#include <algorithm>
#include <sstream>

#include "covexp/error.hpp"

namespace covexp {

std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
  if (!(i < j && j < n)) throw DimensionError("pair_index: need i < j < dim");
  // Pairs (0,1), (0,2), ..., (0,n-1), (1,2), ...
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

std::vector<IndexPair> basis_pairs(std::size_t n) {
  std::vector<IndexPair> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) out.push_back({i, j});
  }
  return out;
}

std::vector<IndexTriple> basis_triples(std::size_t n) {
  std::vector<IndexTriple> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) out.push_back({i, j, k});
    }
  }
  return out;
}

// ---------------------------------------------------------------- InfExponent

InfExponent::InfExponent(std::size_t algebra_dim, std::size_t chart_dim, unsigned degree_cap)
    : algebra_dim_(algebra_dim),
      chart_dim_(chart_dim),
      degree_cap_(degree_cap),
      values_(algebra_dim * (algebra_dim > 0 ? algebra_dim - 1 : 0) / 2, TruncPoly(chart_dim, degree_cap)) {}

TruncPoly InfExponent::value(std::size_t i, std::size_t j) const {
  if (i >= algebra_dim_ || j >= algebra_dim_) throw DimensionError("exponent index out of range");
  if (i == j) return zero_poly();
  if (i < j) return values_[pair_index(algebra_dim_, i, j)];
  return -values_[pair_index(algebra_dim_, j, i)];
}

void InfExponent::set(std::size_t i, std::size_t j, TruncPoly p) {
  if (i == j) throw DimensionError("exponent: diagonal entries are identically zero");
  if (p.num_vars() != chart_dim_ || p.degree_cap() != degree_cap_) {
    throw DimensionError("exponent: value has wrong chart dimension or degree cap");
  }
  if (i < j) {
    values_.at(pair_index(algebra_dim_, i, j)) = std::move(p);
  } else {
    values_.at(pair_index(algebra_dim_, j, i)) = -p;
  }
}

bool InfExponent::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const TruncPoly& p) { return p.is_zero(); });
}

bool InfExponent::uses_only(const std::vector<bool>& allowed) const {
  return std::all_of(values_.begin(), values_.end(), [&](const TruncPoly& p) { return p.uses_only(allowed); });
}

InfExponent& InfExponent::operator+=(const InfExponent& other) {
  if (other.algebra_dim_ != algebra_dim_ || other.chart_dim_ != chart_dim_ || other.degree_cap_ != degree_cap_) {
    throw DimensionError("exponents of different shape");
  }
  for (std::size_t p = 0; p < values_.size(); ++p) values_[p] += other.values_[p];
  return *this;
}

LambdaForm::LambdaForm(std::size_t algebra_dim, std::size_t chart_dim, unsigned degree_cap)
    : chart_dim_(chart_dim), degree_cap_(degree_cap), values_(algebra_dim, TruncPoly(chart_dim, degree_cap)) {}

void LambdaForm::set(std::size_t i, TruncPoly p) {
  if (p.num_vars() != chart_dim_ || p.degree_cap() != degree_cap_) {
    throw DimensionError("lambda: value has wrong chart dimension or degree cap");
  }
  values_.at(i) = std::move(p);
}

bool LambdaForm::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const TruncPoly& p) { return p.is_zero(); });
}

// ---------------------------------------------------------- polynomial route

namespace {

void require_shape(const LieAlgebra& l, const ActionRealization& act, std::size_t algebra_dim, std::size_t chart_dim) {
  if (algebra_dim != l.dim() || act.generator_count() != l.dim()) {
    throw DimensionError("algebra dimension mismatch between algebra, realization and cochain");
  }
  if (chart_dim != act.chart_dim()) throw DimensionError("chart dimension mismatch between realization and cochain");
}

// Xi([e_a, e_b], e_c) = sum_m c_ab^m Xi(e_m, e_c)
TruncPoly bracket_term(const LieAlgebra& l, const InfExponent& xi, std::size_t a, std::size_t b, std::size_t c) {
  TruncPoly out = xi.zero_poly();
  for (std::size_t m = 0; m < l.dim(); ++m) {
    const Rational& s = l.structure(a, b, m);
    if (sgn(s) != 0 && m != c) out += s * xi.value(m, c);
  }
  return out;
}

}  // namespace

std::map<IndexTriple, TruncPoly> cocycle_residual(const LieAlgebra& l, const ActionRealization& act,
                                                  const InfExponent& xi) {
  require_shape(l, act, xi.algebra_dim(), xi.chart_dim());
  std::map<IndexTriple, TruncPoly> out;
  for (const auto& t : basis_triples(l.dim())) {
    const std::size_t a = t.i, b = t.j, c = t.k;
    TruncPoly r = bracket_term(l, xi, a, b, c) + bracket_term(l, xi, b, c, a) + bracket_term(l, xi, c, a, b);
    r -= lie_derivative(act.field(a), xi.value(b, c));
    r -= lie_derivative(act.field(b), xi.value(c, a));
    r -= lie_derivative(act.field(c), xi.value(a, b));
    out.emplace(t, std::move(r));
  }
  return out;
}

bool is_cocycle(const LieAlgebra& l, const ActionRealization& act, const InfExponent& xi) {
  const auto residual = cocycle_residual(l, act, xi);
  return std::all_of(residual.begin(), residual.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

InfExponent coboundary(const LieAlgebra& l, const ActionRealization& act, const LambdaForm& lambda) {
  require_shape(l, act, lambda.algebra_dim(), lambda.chart_dim());
  InfExponent out(l.dim(), lambda.chart_dim(), lambda.degree_cap());
  for (const auto& [a, b] : basis_pairs(l.dim())) {
    TruncPoly v = lie_derivative(act.field(a), lambda.value(b)) - lie_derivative(act.field(b), lambda.value(a));
    for (std::size_t m = 0; m < l.dim(); ++m) {
      const Rational& s = l.structure(a, b, m);
      if (sgn(s) != 0) v -= s * lambda.value(m);
    }
    out.set(a, b, std::move(v));
  }
  return out;
}

std::vector<IndexPair> admissibility_violations(const ActionRealization& act, const LambdaForm& lambda) {
  if (lambda.algebra_dim() != act.generator_count() || lambda.chart_dim() != act.chart_dim()) {
    throw DimensionError("admissibility: lambda does not match the realization");
  }
  std::vector<IndexPair> out;
  for (std::size_t i = 0; i < act.generator_count(); ++i) {
    for (std::size_t j = i; j < act.generator_count(); ++j) {
      TruncPoly v = lie_derivative(act.field(i), lambda.value(j)) + lie_derivative(act.field(j), lambda.value(i));
      if (!v.is_zero()) out.push_back({i, j});
    }
  }
  return out;
}

// ------------------------------------------------------------- matrix route

ExponentSpace::ExponentSpace(const LieAlgebra& l, const ActionRealization& act, unsigned degree_cap)
    : algebra_(l),
      act_(act),
      degree_cap_(degree_cap),
      pair_count_(l.dim() * (l.dim() > 0 ? l.dim() - 1 : 0) / 2),
      monomials_(monomials_up_to(act.chart_dim(), degree_cap)) {
  if (act.generator_count() != l.dim()) throw DimensionError("realization does not match algebra dimension");
  require_valid_realization(l, act);
  const std::size_t d = act.chart_dim();
  derivative_.resize(l.dim());
  for (std::size_t a = 0; a < l.dim(); ++a) {
    derivative_[a].resize(monomials_.size());
    for (std::size_t nu = 0; nu < monomials_.size(); ++nu) {
      const TruncPoly image = lie_derivative(act.field(a), TruncPoly::monomial(d, degree_cap, monomials_[nu]));
      for (const auto& [m, c] : image.terms()) derivative_[a][nu].push_back({monomial_index(m), c});
    }
  }
}

std::size_t ExponentSpace::monomial_index(const Monomial& m) const {
  auto it = std::lower_bound(monomials_.begin(), monomials_.end(), m, MonomialOrder{});
  if (it == monomials_.end() || *it != m) throw DimensionError("monomial outside the truncated space");
  return static_cast<std::size_t>(it - monomials_.begin());
}

Vector ExponentSpace::flatten(const InfExponent& xi) const {
  require_shape(algebra_, act_, xi.algebra_dim(), xi.chart_dim());
  if (xi.degree_cap() != degree_cap_) throw DimensionError("exponent has a different degree cap");
  const std::size_t nm = monomials_.size();
  Vector v(exponent_unknowns());
  for (std::size_t p = 0; p < pair_count_; ++p) {
    for (const auto& [m, c] : xi.pair_values()[p].terms()) v[p * nm + monomial_index(m)] = c;
  }
  return v;
}

InfExponent ExponentSpace::exponent_from(const Vector& coords) const {
  if (coords.size() != exponent_unknowns()) throw DimensionError("exponent coordinate vector has wrong length");
  const std::size_t nm = monomials_.size();
  InfExponent xi(algebra_.dim(), act_.chart_dim(), degree_cap_);
  const auto pairs = basis_pairs(algebra_.dim());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    TruncPoly poly = xi.zero_poly();
    for (std::size_t mu = 0; mu < nm; ++mu) poly.add_term(monomials_[mu], coords[p * nm + mu]);
    xi.set(pairs[p].i, pairs[p].j, std::move(poly));
  }
  return xi;
}

Vector ExponentSpace::flatten(const LambdaForm& lambda) const {
  require_shape(algebra_, act_, lambda.algebra_dim(), lambda.chart_dim());
  if (lambda.degree_cap() != degree_cap_) throw DimensionError("lambda has a different degree cap");
  const std::size_t nm = monomials_.size();
  Vector v(lambda_unknowns());
  for (std::size_t a = 0; a < algebra_.dim(); ++a) {
    for (const auto& [m, c] : lambda.value(a).terms()) v[a * nm + monomial_index(m)] = c;
  }
  return v;
}

LambdaForm ExponentSpace::lambda_from(const Vector& coords) const {
  if (coords.size() != lambda_unknowns()) throw DimensionError("lambda coordinate vector has wrong length");
  const std::size_t nm = monomials_.size();
  LambdaForm lambda(algebra_.dim(), act_.chart_dim(), degree_cap_);
  for (std::size_t a = 0; a < algebra_.dim(); ++a) {
    TruncPoly poly(act_.chart_dim(), degree_cap_);
    for (std::size_t mu = 0; mu < nm; ++mu) poly.add_term(monomials_[mu], coords[a * nm + mu]);
    lambda.set(a, std::move(poly));
  }
  return lambda;
}

ExactMatrix ExponentSpace::cocycle_operator() const {
  const std::size_t n = algebra_.dim();
  const std::size_t nm = monomials_.size();
  const auto triples = basis_triples(n);
  ExactMatrix m(triples.size() * nm, exponent_unknowns());

  // Coefficient of Xi(e_x, e_y) in terms of the stored unknown for the sorted pair.
  auto signed_pair = [n](std::size_t x, std::size_t y) -> std::pair<std::size_t, int> {
    if (x == y) return {0, 0};
    return x < y ? std::pair{pair_index(n, x, y), 1} : std::pair{pair_index(n, y, x), -1};
  };

  for (std::size_t t = 0; t < triples.size(); ++t) {
    const std::size_t a = triples[t].i, b = triples[t].j, c = triples[t].k;
    const std::size_t cyc[3][3] = {{a, b, c}, {b, c, a}, {c, a, b}};
    for (const auto& [x, y, z] : cyc) {
      // + Xi([x, y], z)
      for (std::size_t s = 0; s < n; ++s) {
        const Rational& cs = algebra_.structure(x, y, s);
        if (sgn(cs) == 0) continue;
        const auto [p, sign] = signed_pair(s, z);
        if (sign == 0) continue;
        for (std::size_t mu = 0; mu < nm; ++mu) m(t * nm + mu, p * nm + mu) += sign * cs;
      }
      // - X_x Xi(y, z)
      const auto [p, sign] = signed_pair(y, z);
      for (std::size_t nu = 0; nu < nm; ++nu) {
        for (const auto& term : derivative_[x][nu]) m(t * nm + term.monomial, p * nm + nu) -= sign * term.coeff;
      }
    }
  }
  return m;
}

ExactMatrix ExponentSpace::coboundary_operator() const {
  const std::size_t n = algebra_.dim();
  const std::size_t nm = monomials_.size();
  ExactMatrix m(exponent_unknowns(), lambda_unknowns());
  for (const auto& [a, b] : basis_pairs(n)) {
    const std::size_t row0 = pair_index(n, a, b) * nm;
    for (std::size_t nu = 0; nu < nm; ++nu) {
      for (const auto& term : derivative_[a][nu]) m(row0 + term.monomial, b * nm + nu) += term.coeff;
      for (const auto& term : derivative_[b][nu]) m(row0 + term.monomial, a * nm + nu) -= term.coeff;
    }
    for (std::size_t s = 0; s < n; ++s) {
      const Rational& cs = algebra_.structure(a, b, s);
      if (sgn(cs) == 0) continue;
      for (std::size_t mu = 0; mu < nm; ++mu) m(row0 + mu, s * nm + mu) -= cs;
    }
  }
  return m;
}

ExactMatrix ExponentSpace::admissibility_operator() const {
  const std::size_t n = algebra_.dim();
  const std::size_t nm = monomials_.size();
  ExactMatrix m(n * (n + 1) / 2 * nm, lambda_unknowns());
  std::size_t block = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j, ++block) {
      for (std::size_t nu = 0; nu < nm; ++nu) {
        for (const auto& term : derivative_[i][nu]) m(block * nm + term.monomial, j * nm + nu) += term.coeff;
        for (const auto& term : derivative_[j][nu]) m(block * nm + term.monomial, i * nm + nu) += term.coeff;
      }
    }
  }
  return m;
}

std::string ExponentSpace::describe_exponent_row(std::size_t row) const {
  const std::size_t nm = monomials_.size();
  const auto pair = basis_pairs(algebra_.dim()).at(row / nm);
  const auto& names = algebra_.basis_names();
  const TruncPoly mono = TruncPoly::monomial(act_.chart_dim(), degree_cap_, monomials_[row % nm]);
  return "coefficient of " + mono.to_string(act_.coordinates()) + " in Xi(" + names[pair.i] + ", " + names[pair.j] + ")";
}

std::string ExponentSpace::describe_admissibility_row(std::size_t row) const {
  const std::size_t nm = monomials_.size();
  std::size_t block = row / nm;
  const std::size_t n = algebra_.dim();
  std::size_t i = 0;
  while (block >= n - i) {
    block -= n - i;
    ++i;
  }
  const std::size_t j = i + block;
  const auto& names = algebra_.basis_names();
  const TruncPoly mono = TruncPoly::monomial(act_.chart_dim(), degree_cap_, monomials_[row % nm]);
  return "coefficient of " + mono.to_string(act_.coordinates()) + " in X_" + names[i] + " Lambda_" + names[j] + " + X_" +
         names[j] + " Lambda_" + names[i];
}

// ------------------------------------------------------------ classification

namespace {

std::vector<Vector> image_basis(const ExactMatrix& op, const std::vector<Vector>& domain_basis) {
  SpanBuilder span(op.rows());
  for (const auto& v : domain_basis) span.insert(op.apply(v));
  return span.basis();
}

std::vector<Vector> unit_vectors(std::size_t n) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < n; ++i) {
    Vector v(n);
    v[i] = 1;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<InfExponent> to_exponents(const ExponentSpace& space, const std::vector<Vector>& vs) {
  std::vector<InfExponent> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(space.exponent_from(v));
  return out;
}

}  // namespace

std::vector<InfExponent> cocycle_space(const LieAlgebra& l, const ActionRealization& act, unsigned degree_cap) {
  const ExponentSpace space(l, act, degree_cap);
  return to_exponents(space, nullspace(space.cocycle_operator()));
}

std::vector<InfExponent> coboundary_space(const LieAlgebra& l, const ActionRealization& act, unsigned degree_cap,
                                          bool admissible_only) {
  const ExponentSpace space(l, act, degree_cap);
  const auto domain = admissible_only ? nullspace(space.admissibility_operator()) : unit_vectors(space.lambda_unknowns());
  return to_exponents(space, image_basis(space.coboundary_operator(), domain));
}

ClassificationReport classify(const LieAlgebra& l, const ActionRealization& act, unsigned degree_cap) {
  const ExponentSpace space(l, act, degree_cap);
  const ExactMatrix delta = space.coboundary_operator();
  const auto cocycles = nullspace(space.cocycle_operator());
  const auto admissible_lambdas = nullspace(space.admissibility_operator());
  const auto b_admissible = image_basis(delta, admissible_lambdas);
  const auto b_all = image_basis(delta, unit_vectors(space.lambda_unknowns()));

  ClassificationReport report;
  report.algebra = l.name();
  report.basis_names = l.basis_names();
  report.coordinates = act.coordinates();
  report.degree_cap = degree_cap;
  report.trivial_action = act.is_trivial();
  report.dim_cochains = space.exponent_unknowns();
  report.dim_lambda_admissible = admissible_lambdas.size();
  report.dim_cocycles = cocycles.size();
  report.dim_coboundaries_admissible = b_admissible.size();
  report.dim_coboundaries_all = b_all.size();
  report.dim_quotient_admissible = cocycles.size() - b_admissible.size();
  report.dim_quotient_all = cocycles.size() - b_all.size();

  // Extend the admissible coboundary basis by cocycle basis vectors in echelon
  // order; each accepted vector, reduced modulo what came before, is a representative.
  SpanBuilder span(space.exponent_unknowns());
  for (const auto& b : b_admissible) span.insert(b);
  for (const auto& z : cocycles) {
    Vector r = span.reduce(z);
    if (is_zero(r)) continue;
    auto lead = std::find_if(r.begin(), r.end(), [](const Rational& q) { return sgn(q) != 0; });
    const Rational inv = 1 / *lead;
    for (auto& q : r) q *= inv;
    span.insert(r);
    report.representatives.push_back(space.exponent_from(r));
  }
  if (report.representatives.size() != report.dim_quotient_admissible) {
    throw Error("classify: representative count disagrees with the quotient dimension");
  }
  report.cocycle_basis = to_exponents(space, cocycles);
  return report;
}

ReductionResult reduce_to_coordinates(const LieAlgebra& l, const ActionRealization& act, const InfExponent& xi,
                                      const std::vector<bool>& keep, bool admissible_only) {
  if (keep.size() != act.chart_dim()) throw DimensionError("keep mask length differs from chart dimension");
  const ExponentSpace space(l, act, xi.degree_cap());
  if (!is_cocycle(l, act, xi)) throw NotACocycle("reduce_to_coordinates: input exponent is not a cocycle");

  const auto& monos = space.monomials();
  const std::size_t nm = monos.size();
  std::vector<std::size_t> excluded;
  for (std::size_t mu = 0; mu < nm; ++mu) {
    for (std::size_t v = 0; v < keep.size(); ++v) {
      if (monos[mu][v] != 0 && !keep[v]) {
        excluded.push_back(mu);
        break;
      }
    }
  }

  // Unknowns: Lambda coordinates. Rows: admissibility (= 0), then every
  // excluded coefficient of xi + delta Lambda (= 0).
  const ExactMatrix admissibility = space.admissibility_operator();
  const ExactMatrix delta = space.coboundary_operator();
  const Vector target = space.flatten(xi);
  const std::size_t pairs = target.size() / (nm == 0 ? 1 : nm);

  ExactMatrix system(0, space.lambda_unknowns());
  Vector rhs;
  std::vector<std::string> labels;
  for (std::size_t r = 0; admissible_only && r < admissibility.rows(); ++r) {
    system.append_row(admissibility.row(r));
    rhs.emplace_back(0);
    labels.push_back("admissibility: " + space.describe_admissibility_row(r));
  }
  for (std::size_t p = 0; p < pairs; ++p) {
    for (std::size_t mu : excluded) {
      const std::size_t r = p * nm + mu;
      system.append_row(delta.row(r));
      rhs.push_back(-target[r]);
      labels.push_back("excluded: " + space.describe_exponent_row(r));
    }
  }

  AffineResult solved = solve_affine(system, rhs);
  if (auto* cert = std::get_if<InfeasibilityCertificate>(&solved)) {
    ReductionCertificate out{cert->row_weights, cert->residual, {}};
    for (std::size_t r = 0; r < out.row_weights.size(); ++r) {
      if (sgn(out.row_weights[r]) != 0) out.rows.push_back(labels[r]);
    }
    return out;
  }
  const auto& sol = std::get<AffineSolution>(solved);
  Reduction out{space.lambda_from(sol.particular), {}};
  out.reduced = xi + coboundary(l, act, out.lambda);

  // Re-verify by direct substitution on the polynomial route.
  if ((admissible_only && !is_admissible(act, out.lambda)) || !out.reduced.uses_only(keep) || !is_cocycle(l, act, out.reduced)) {
    throw Error("reduce_to_coordinates: witness failed verification by substitution");
  }
  return out;
}

std::string render(const InfExponent& xi, const std::vector<std::string>& basis_names,
                   const std::vector<std::string>& coordinates) {
  std::ostringstream os;
  for (const auto& [i, j] : basis_pairs(xi.algebra_dim())) {
    const TruncPoly v = xi.value(i, j);
    if (v.is_zero()) continue;
    os << "Ξ(" << basis_names.at(i) << ", " << basis_names.at(j) << ") = " << v.to_string(coordinates) << "\n";
  }
  return os.str();
}

}  // namespace covexp
