#include "covexp/trunc_poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "covexp/error.hpp"

namespace covexp {

unsigned total_degree(const Monomial& m) {
  return std::accumulate(m.begin(), m.end(), 0u);
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  const unsigned da = total_degree(a);
  const unsigned db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

namespace {

void enumerate(std::size_t var, unsigned remaining, Monomial& current, std::vector<Monomial>& out) {
  if (var == current.size()) {
    out.push_back(current);
    return;
  }
  for (unsigned e = 0; e <= remaining; ++e) {
    current[var] = static_cast<std::uint16_t>(e);
    enumerate(var + 1, remaining - e, current, out);
  }
  current[var] = 0;
}

}  // namespace

std::vector<Monomial> monomials_up_to(std::size_t num_vars, unsigned cap) {
  std::vector<Monomial> out;
  Monomial current(num_vars, 0);
  enumerate(0, cap, current, out);
  std::sort(out.begin(), out.end(), MonomialOrder{});
  return out;
}

TruncPoly::TruncPoly(std::size_t num_vars, unsigned degree_cap)
    : num_vars_(num_vars), degree_cap_(degree_cap) {}

TruncPoly TruncPoly::constant(std::size_t num_vars, unsigned degree_cap, const Rational& value) {
  TruncPoly p(num_vars, degree_cap);
  p.add_term(Monomial(num_vars, 0), value);
  return p;
}

TruncPoly TruncPoly::variable(std::size_t num_vars, unsigned degree_cap, std::size_t index) {
  if (index >= num_vars) throw DimensionError("variable index out of range");
  Monomial m(num_vars, 0);
  m[index] = 1;
  return monomial(num_vars, degree_cap, std::move(m));
}

TruncPoly TruncPoly::monomial(std::size_t num_vars, unsigned degree_cap, Monomial exponents,
                              const Rational& coeff) {
  if (exponents.size() != num_vars) throw DimensionError("monomial arity does not match num_vars");
  TruncPoly p(num_vars, degree_cap);
  p.add_term(exponents, coeff);
  return p;
}

Rational TruncPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

int TruncPoly::degree() const {
  if (terms_.empty()) return -1;
  // MonomialOrder sorts by degree first, so the last key has the largest degree.
  return static_cast<int>(total_degree(terms_.rbegin()->first));
}

void TruncPoly::add_term(const Monomial& m, const Rational& coeff) {
  if (m.size() != num_vars_) throw DimensionError("monomial arity does not match num_vars");
  if (sgn(coeff) == 0) return;
  if (total_degree(m) > degree_cap_) {
    throw DegreeOverflow("term of degree " + std::to_string(total_degree(m)) + " exceeds cap " +
                         std::to_string(degree_cap_));
  }
  auto [it, inserted] = terms_.try_emplace(m, coeff);
  if (!inserted) {
    it->second += coeff;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

bool TruncPoly::uses_only(const std::vector<bool>& allowed) const {
  if (allowed.size() != num_vars_) throw DimensionError("coordinate mask has wrong length");
  for (const auto& [m, c] : terms_) {
    for (std::size_t v = 0; v < num_vars_; ++v) {
      if (m[v] != 0 && !allowed[v]) return false;
    }
  }
  return true;
}

void TruncPoly::require_compatible(const TruncPoly& other, const char* op) const {
  if (num_vars_ != other.num_vars_ || degree_cap_ != other.degree_cap_) {
    throw DimensionError(std::string(op) + ": operands differ in num_vars or degree cap");
  }
}

TruncPoly& TruncPoly::operator+=(const TruncPoly& other) {
  require_compatible(other, "add");
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

TruncPoly& TruncPoly::operator-=(const TruncPoly& other) {
  require_compatible(other, "subtract");
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

TruncPoly& TruncPoly::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

TruncPoly TruncPoly::operator-() const {
  TruncPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

std::string TruncPoly::to_string(std::span<const std::string> var_names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest degree first, then lexicographic in the variables: t x before x^2.
  std::vector<const std::pair<const Monomial, Rational>*> order;
  for (const auto& term : terms_) order.push_back(&term);
  std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
    const unsigned da = total_degree(a->first), db = total_degree(b->first);
    return da != db ? da > db : a->first > b->first;
  });
  for (const auto* term : order) {
    const auto& [m, c] = *term;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    const bool is_const = total_degree(m) == 0;
    if (is_const || mag != 1) {
      os << covexp::to_string(mag);
      if (!is_const) os << " ";
    }
    bool first_factor = true;
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (m[v] == 0) continue;
      if (!first_factor) os << " ";
      first_factor = false;
      if (v < var_names.size()) {
        os << var_names[v];
      } else {
        os << "x" << v;
      }
      if (m[v] > 1) os << "^" << m[v];
    }
  }
  return os.str();
}

TruncPoly poly_add(const TruncPoly& f, const TruncPoly& g) { return f + g; }

TruncPoly poly_partial(const TruncPoly& f, std::size_t var_index) {
  if (var_index >= f.num_vars()) throw DimensionError("partial: variable index out of range");
  TruncPoly out(f.num_vars(), f.degree_cap());
  for (const auto& [m, c] : f.terms()) {
    if (m[var_index] == 0) continue;
    Monomial d = m;
    --d[var_index];
    out.add_term(d, c * m[var_index]);
  }
  return out;
}

TruncPoly poly_multiply(const TruncPoly& f, const TruncPoly& g) {
  if (f.num_vars() != g.num_vars() || f.degree_cap() != g.degree_cap()) {
    throw DimensionError("multiply: operands differ in num_vars or degree cap");
  }
  // Accumulate uncapped first: high-degree partial products may still cancel.
  TruncPoly::Terms exact;
  Monomial prod(f.num_vars());
  for (const auto& [mf, cf] : f.terms()) {
    for (const auto& [mg, cg] : g.terms()) {
      for (std::size_t v = 0; v < prod.size(); ++v) prod[v] = static_cast<std::uint16_t>(mf[v] + mg[v]);
      exact[prod] += cf * cg;
    }
  }
  TruncPoly out(f.num_vars(), f.degree_cap());
  for (const auto& [m, c] : exact) out.add_term(m, c);
  return out;
}

}  // namespace covexp
