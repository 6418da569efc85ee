#pragma once

#include <string>
#include <string_view>

#include "covexp/base_action.hpp"
#include "covexp/lie_algebra.hpp"

namespace covexp {

struct CatalogEntry {
  LieAlgebra algebra;
  ActionRealization realization;
};

// Named algebras with their default base action.
//
//   abelian(n)      e0..e{n-1}, all brackets zero; trivial action on a point chart
//   heisenberg(n)   Q1..Qn, P1..Pn, Z with [Q_i, P_i] = Z; trivial action on a point chart
//   so3             J1, J2, J3 with [J_i, J_j] = eps_ijk J_k; trivial action on a point chart
//   galilei1        H, P, K with [K, H] = P; acts on (t, x)
//   galilei3        H, P1..P3, K1..K3, J1..J3 on (t, x, y, z):
//                   [K_i, H] = P_i, [J_i, J_j] = eps_ijk J_k,
//                   [J_i, P_j] = eps_ijk P_k, [J_i, K_j] = eps_ijk K_k
//   poincare4       P0..P3, K1..K3, J1..J3 on (t, x, y, z):
//                   [K_i, P0] = P_i, [K_i, P_j] = delta_ij P0, [K_i, K_j] = -eps_ijk J_k,
//                   plus the rotation brackets above
//
// Spacetime fields are the generators of p -> exp(-tau a) p (time translation
// -d_t, boost -t d_i, ...). With that sign the map a -> X_a is a Lie algebra
// homomorphism, which check_homomorphism confirms for every entry.
//
// Throws Error for unknown names or bad parameters (n < 1).
CatalogEntry catalog(std::string_view selector);

// True when `selector` names a catalog algebra (parameters are not validated).
bool is_catalog_name(std::string_view selector);

}  // namespace covexp
