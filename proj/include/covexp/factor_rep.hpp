#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace covexp {

using ComplexMatrix = Eigen::MatrixXcd;

// Discrete Hilbert bundle: a finite base, each point carrying C^N with the
// standard inner product.
struct FiniteBundle {
  std::vector<std::string> base_points;
  std::size_t fiber_dim = 1;
  std::size_t base_size() const { return base_points.size(); }
};

// Bundle automorphism. base_map[p] is the image point r^{-1} p, and
// fiber_maps[p] is the unitary U_r(p). The composition convention is
//   (T_r T_s)(p) = U_r(p) U_s(r^{-1} p),
// so swapping the operator order mirrors the argument order of xi.
struct BundleMap {
  std::vector<std::size_t> base_map;
  std::vector<ComplexMatrix> fiber_maps;
};

// Throws NumericError unless the base map is a bijection and every fiber map is
// unitary to `tol`.
void validate(const FiniteBundle& bundle, const BundleMap& map, double tol = 1e-12);

// Product T_r T_s in the convention above.
BundleMap compose(const BundleMap& r, const BundleMap& s);

// Per base point, xi(r, s, p) in (-pi, pi] with U_r(p) U_s(r^{-1}p) = e^{i xi} U_rs(p).
// Throws NumericError when the base maps do not compose or a fiber ratio is
// not a scalar multiple of the identity within `scalar_tol`.
std::vector<double> compose_and_extract(const BundleMap& r, const BundleMap& s, const BundleMap& rs,
                                        double scalar_tol = 1e-10);

// Finite group with a left-regular style action on the base points:
// action[g][p] = g^{-1} p.
class GroupTable {
 public:
  GroupTable(std::vector<std::string> labels, std::vector<std::vector<std::size_t>> multiplication,
             std::vector<std::vector<std::size_t>> action);

  std::size_t order() const { return labels_.size(); }
  std::size_t base_size() const { return action_.empty() ? 0 : action_.front().size(); }
  const std::string& label(std::size_t g) const { return labels_[g]; }
  std::size_t multiply(std::size_t g, std::size_t h) const { return mult_[g][h]; }
  std::size_t identity() const { return identity_; }
  // g^{-1} p
  std::size_t act(std::size_t g, std::size_t p) const { return action_[g][p]; }

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<std::size_t>> mult_;
  std::vector<std::vector<std::size_t>> action_;
  std::size_t identity_ = 0;
};

// xi[r][s][p]
using PhaseTable = std::vector<std::vector<std::vector<double>>>;

struct FactorRepresentation {
  FiniteBundle bundle;
  GroupTable group;
  std::vector<BundleMap> maps;  // one per group element
};

PhaseTable extract_exponent(const FactorRepresentation& rep, double scalar_tol = 1e-10);

// Wrapped distance of x from 0 modulo 2 pi, in [0, pi].
double phase_distance(double x);
// Representative of x in (-pi, pi].
double wrap_phase(double x);

struct AssociativityResult {
  double max_residual = 0.0;
  std::size_t checked = 0;
};

// max over (r, s, t, p) of |xi(r,s,p) + xi(rs,t,p) - xi(s,t,r^{-1}p) - xi(r,st,p)| mod 2 pi.
AssociativityResult associativity_check(const PhaseTable& xi, const GroupTable& group);

// Replaces U_r(p) by e^{i theta[r][p]} U_r(p).
FactorRepresentation gauge(const FactorRepresentation& rep, const std::vector<std::vector<double>>& theta);

// Z_N x Z_N on a one-point base with T_(a,b) = S^a M^b, S the cyclic shift and
// M = diag(omega^j), omega = e^{2 pi i / N}. Element (a, b) has index a N + b.
// The exponent is xi((a,b),(a',b')) = 2 pi b a' / N.
FactorRepresentation weyl_pair_demo(std::size_t n);

// Phase function on a patch of canonical coordinates: xi(r, s, p).
using PhaseFunction =
    std::function<double(std::span<const double> r, std::span<const double> s, std::span<const double> p)>;

// Central-difference estimate of d^2/dtau dsigma [xi(tau a, sigma b, p) - xi(sigma b, tau a, p)] at 0.
// Second order in h; throws NumericError on non-finite evaluations or h <= 0.
double infinitesimal_probe(const PhaseFunction& xi, std::span<const double> a, std::span<const double> b,
                           std::span<const double> p, double h);

}  // namespace covexp
