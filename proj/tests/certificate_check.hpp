#pragma once

// Rebuilds the reduction constraint system from the public operators and
// checks an infeasibility certificate against it, without trusting the solver.

#include "covexp/exponent_space.hpp"

namespace testing {

inline bool certificate_is_valid(const covexp::LieAlgebra& l, const covexp::ActionRealization& act,
                                 const covexp::InfExponent& xi, const std::vector<bool>& keep,
                                 const covexp::ReductionCertificate& cert) {
  using namespace covexp;
  const ExponentSpace space(l, act, xi.degree_cap());
  const ExactMatrix adm = space.admissibility_operator();
  const ExactMatrix delta = space.coboundary_operator();
  const Vector target = space.flatten(xi);
  const auto& monos = space.monomials();
  const std::size_t nm = monos.size();

  std::vector<std::size_t> excluded_rows;
  for (std::size_t p = 0; p * nm < target.size(); ++p) {
    for (std::size_t mu = 0; mu < nm; ++mu) {
      bool bad = false;
      for (std::size_t v = 0; v < keep.size(); ++v) bad = bad || (monos[mu][v] != 0 && !keep[v]);
      if (bad) excluded_rows.push_back(p * nm + mu);
    }
  }
  if (cert.row_weights.size() != adm.rows() + excluded_rows.size()) return false;

  Vector combo(space.lambda_unknowns());
  Rational rhs = 0;
  for (std::size_t r = 0; r < cert.row_weights.size(); ++r) {
    const Rational& w = cert.row_weights[r];
    if (w == 0) continue;
    const bool is_adm = r < adm.rows();
    const auto row = is_adm ? adm.row(r) : delta.row(excluded_rows[r - adm.rows()]);
    for (std::size_t c = 0; c < combo.size(); ++c) combo[c] += w * row[c];
    if (!is_adm) rhs -= w * target[excluded_rows[r - adm.rows()]];
  }
  return is_zero(combo) && rhs != 0 && rhs == cert.residual;
}

}  // namespace testing
