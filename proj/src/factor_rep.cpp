#include "covexp/factor_rep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "covexp/error.hpp"

namespace covexp {

namespace {
constexpr double kPi = std::numbers::pi;
}

double wrap_phase(double x) {
  double w = std::remainder(x, 2 * kPi);
  if (w <= -kPi) w += 2 * kPi;
  return w;
}

double phase_distance(double x) { return std::abs(wrap_phase(x)); }

void validate(const FiniteBundle& bundle, const BundleMap& map, double tol) {
  const std::size_t n = bundle.base_size();
  if (n == 0 || bundle.fiber_dim == 0) throw NumericError("bundle needs a nonempty base and fiber_dim >= 1");
  if (map.base_map.size() != n || map.fiber_maps.size() != n) throw NumericError("bundle map does not match the base");
  std::vector<bool> hit(n, false);
  for (std::size_t p : map.base_map) {
    if (p >= n || hit[p]) throw NumericError("base map is not a bijection");
    hit[p] = true;
  }
  const auto dim = static_cast<Eigen::Index>(bundle.fiber_dim);
  for (const auto& u : map.fiber_maps) {
    if (u.rows() != dim || u.cols() != dim) throw NumericError("fiber map has wrong size");
    const double err = (u.adjoint() * u - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (err > tol) throw NumericError("fiber map is not unitary (error " + std::to_string(err) + ")");
  }
}

BundleMap compose(const BundleMap& r, const BundleMap& s) {
  const std::size_t n = r.base_map.size();
  if (s.base_map.size() != n) throw NumericError("compose: maps live on different bases");
  BundleMap out;
  out.base_map.resize(n);
  out.fiber_maps.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t q = r.base_map[p];
    out.base_map[p] = s.base_map[q];
    out.fiber_maps[p] = r.fiber_maps[p] * s.fiber_maps[q];
  }
  return out;
}

std::vector<double> compose_and_extract(const BundleMap& r, const BundleMap& s, const BundleMap& rs,
                                        double scalar_tol) {
  const BundleMap prod = compose(r, s);
  if (prod.base_map != rs.base_map) throw NumericError("base maps do not compose: (rs)^{-1} p != s^{-1} r^{-1} p");
  std::vector<double> phases(prod.base_map.size());
  for (std::size_t p = 0; p < phases.size(); ++p) {
    const ComplexMatrix ratio = prod.fiber_maps[p] * rs.fiber_maps[p].adjoint();
    const auto dim = ratio.rows();
    const std::complex<double> lambda = ratio.trace() / static_cast<double>(dim);
    const double dev = (ratio - lambda * ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (dev > scalar_tol || std::abs(std::abs(lambda) - 1.0) > scalar_tol) {
      throw NumericError("fiber ratio at base point " + std::to_string(p) + " is not a unimodular scalar (deviation " +
                         std::to_string(dev) + ")");
    }
    phases[p] = wrap_phase(std::arg(lambda));
  }
  return phases;
}

GroupTable::GroupTable(std::vector<std::string> labels, std::vector<std::vector<std::size_t>> multiplication,
                       std::vector<std::vector<std::size_t>> action)
    : labels_(std::move(labels)), mult_(std::move(multiplication)), action_(std::move(action)) {
  const std::size_t n = labels_.size();
  if (n == 0 || mult_.size() != n || action_.size() != n) throw NumericError("group table has inconsistent sizes");
  for (const auto& row : mult_) {
    if (row.size() != n) throw NumericError("multiplication table is not square");
    for (std::size_t x : row) {
      if (x >= n) throw NumericError("multiplication table entry out of range");
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (mult_[mult_[a][b]][c] != mult_[a][mult_[b][c]]) throw NumericError("multiplication table is not associative");
      }
    }
  }
  bool found = false;
  for (std::size_t e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (std::size_t g = 0; g < n && ok; ++g) ok = mult_[e][g] == g && mult_[g][e] == g;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw NumericError("group table has no identity");
  for (std::size_t g = 0; g < n; ++g) {
    const auto& row = mult_[g];
    if (std::find(row.begin(), row.end(), identity_) == row.end()) {
      throw NumericError("element '" + labels_[g] + "' has no inverse");
    }
  }
  const std::size_t base = action_.front().size();
  for (const auto& perm : action_) {
    if (perm.size() != base) throw NumericError("action rows have different lengths");
  }
  // (gh)^{-1} p = h^{-1} (g^{-1} p)
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t h = 0; h < n; ++h) {
      for (std::size_t p = 0; p < base; ++p) {
        if (action_[mult_[g][h]][p] != action_[h][action_[g][p]]) throw NumericError("action is not a homomorphism");
      }
    }
  }
}

PhaseTable extract_exponent(const FactorRepresentation& rep, double scalar_tol) {
  const std::size_t n = rep.group.order();
  if (rep.maps.size() != n) throw NumericError("representation needs one bundle map per group element");
  for (std::size_t g = 0; g < n; ++g) {
    validate(rep.bundle, rep.maps[g]);
    for (std::size_t p = 0; p < rep.bundle.base_size(); ++p) {
      if (rep.maps[g].base_map[p] != rep.group.act(g, p)) throw NumericError("bundle map disagrees with the group action");
    }
  }
  PhaseTable xi(n, std::vector<std::vector<double>>(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) {
      xi[r][s] = compose_and_extract(rep.maps[r], rep.maps[s], rep.maps[rep.group.multiply(r, s)], scalar_tol);
    }
  }
  return xi;
}

AssociativityResult associativity_check(const PhaseTable& xi, const GroupTable& g) {
  AssociativityResult out;
  const std::size_t n = g.order();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) {
      const std::size_t rs = g.multiply(r, s);
      for (std::size_t t = 0; t < n; ++t) {
        const std::size_t st = g.multiply(s, t);
        for (std::size_t p = 0; p < g.base_size(); ++p) {
          const double res = xi[r][s][p] + xi[rs][t][p] - xi[s][t][g.act(r, p)] - xi[r][st][p];
          out.max_residual = std::max(out.max_residual, phase_distance(res));
          ++out.checked;
        }
      }
    }
  }
  return out;
}

FactorRepresentation gauge(const FactorRepresentation& rep, const std::vector<std::vector<double>>& theta) {
  FactorRepresentation out = rep;
  for (std::size_t g = 0; g < out.maps.size(); ++g) {
    for (std::size_t p = 0; p < out.bundle.base_size(); ++p) {
      out.maps[g].fiber_maps[p] *= std::polar(1.0, theta.at(g).at(p));
    }
  }
  return out;
}

FactorRepresentation weyl_pair_demo(std::size_t n) {
  if (n < 2) throw NumericError("weyl_pair_demo needs N >= 2");
  const auto dim = static_cast<Eigen::Index>(n);
  ComplexMatrix shift = ComplexMatrix::Zero(dim, dim);
  ComplexMatrix clock = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    shift((j + 1) % dim, j) = 1.0;
    clock(j, j) = std::polar(1.0, 2 * kPi * static_cast<double>(j) / static_cast<double>(n));
  }
  std::vector<ComplexMatrix> shift_pow(n, ComplexMatrix::Identity(dim, dim));
  std::vector<ComplexMatrix> clock_pow(n, ComplexMatrix::Identity(dim, dim));
  for (std::size_t k = 1; k < n; ++k) {
    shift_pow[k] = shift_pow[k - 1] * shift;
    clock_pow[k] = clock_pow[k - 1] * clock;
  }

  const std::size_t order = n * n;
  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> mult(order, std::vector<std::size_t>(order));
  std::vector<std::vector<std::size_t>> action(order, std::vector<std::size_t>{0});
  FactorRepresentation rep{FiniteBundle{{"p0"}, n}, GroupTable({"e"}, {{0}}, {{0}}), {}};
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      labels.push_back("(" + std::to_string(a) + "," + std::to_string(b) + ")");
      for (std::size_t a2 = 0; a2 < n; ++a2) {
        for (std::size_t b2 = 0; b2 < n; ++b2) mult[a * n + b][a2 * n + b2] = ((a + a2) % n) * n + (b + b2) % n;
      }
      rep.maps.push_back(BundleMap{{0}, {shift_pow[a] * clock_pow[b]}});
    }
  }
  rep.group = GroupTable(std::move(labels), std::move(mult), std::move(action));
  return rep;
}

double infinitesimal_probe(const PhaseFunction& xi, std::span<const double> a, std::span<const double> b,
                           std::span<const double> p, double h) {
  if (!(h > 0) || !std::isfinite(h)) throw NumericError("probe step must be positive and finite");
  if (a.size() != b.size()) throw NumericError("probe directions differ in dimension");
  std::vector<double> ra(a.size()), sb(b.size());
  auto g = [&](double tau, double sigma) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      ra[i] = tau * a[i];
      sb[i] = sigma * b[i];
    }
    const double v = xi(ra, sb, p) - xi(sb, ra, p);
    if (!std::isfinite(v)) throw NumericError("phase function returned a non-finite value");
    return v;
  };
  return (g(h, h) - g(h, -h) - g(-h, h) + g(-h, -h)) / (4 * h * h);
}

}  // namespace covexp
