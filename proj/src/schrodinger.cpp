#include "covexp/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "covexp/error.hpp"
#include "covexp/factor_rep.hpp"
#include "covexp/kernels.hpp"

namespace covexp {

namespace {
constexpr double kPi = std::numbers::pi;
}

GridPair commensurate_grids(std::size_t modes, double lo, double hi) {
  if (modes == 0 || !(hi > lo)) throw NumericError("grid needs modes > 0 and hi > lo");
  const double width = hi - lo;
  const double dx = width / static_cast<double>(modes);
  const double dk = 2 * kPi / width;
  const double k0 = -static_cast<double>(modes / 2) * dk;
  return {Grid1D{lo, dx, modes}, Grid1D{k0, dk, modes}};
}

KSpec::KSpec(Grid1D k_grid, std::vector<Complex> amplitudes, double mass)
    : grid_(k_grid), amps_(std::move(amplitudes)), mass_(mass) {
  if (grid_.count == 0 || !(grid_.step > 0)) throw NumericError("momentum grid is empty or degenerate");
  if (amps_.size() != grid_.count) throw NumericError("amplitude count does not match the momentum grid");
  if (!(mass_ > 0) || !std::isfinite(mass_)) throw NumericError("mass must be positive");
}

KSpec KSpec::gaussian(const Grid1D& k_grid, double k0, double sigma, double x0, double mass) {
  std::vector<Complex> amps(k_grid.count);
  for (std::size_t n = 0; n < k_grid.count; ++n) {
    const double k = k_grid.at(n);
    const double d = (k - k0) / sigma;
    amps[n] = std::polar(std::exp(-0.25 * d * d), -k * x0);
  }
  return KSpec(k_grid, std::move(amps), mass).normalized();
}

KSpec KSpec::plane_wave(const Grid1D& k_grid, std::size_t n, double mass) {
  std::vector<Complex> amps(k_grid.count);
  amps.at(n) = 1.0;
  return KSpec(k_grid, std::move(amps), mass).normalized();
}

double KSpec::norm2() const { return simd::norm2(amps_) * grid_.step; }

Complex KSpec::inner(const KSpec& other) const {
  if (other.grid_ != grid_) throw NumericError("momentum states on different grids");
  return simd::dotc(amps_, other.amps_) * grid_.step;
}

KSpec KSpec::normalized() const {
  const double n = std::sqrt(norm2());
  if (!(n > 0)) throw NumericError("cannot normalize the zero state");
  return *this * Complex(1.0 / n);
}

KSpec KSpec::operator*(Complex z) const {
  KSpec out = *this;
  simd::scale(out.amps_, z);
  return out;
}

KSpec KSpec::operator+(const KSpec& other) const {
  if (other.grid_ != grid_) throw NumericError("momentum states on different grids");
  KSpec out = *this;
  for (std::size_t i = 0; i < amps_.size(); ++i) out.amps_[i] += other.amps_[i];
  return out;
}

Evolver::Evolver(const Grid1D& k_grid, const Grid1D& x_grid) : k_grid_(k_grid), x_grid_(x_grid) {
  if (k_grid.count == 0 || x_grid.count == 0) throw NumericError("evolution grids must be nonempty");
  plane_waves_.resize(k_grid.count * x_grid.count);
  for (std::size_t j = 0; j < x_grid.count; ++j) {
    const double x = x_grid.at(j);
    Complex* row = plane_waves_.data() + j * k_grid.count;
    for (std::size_t n = 0; n < k_grid.count; ++n) row[n] = std::polar(1.0, k_grid.at(n) * x);
  }
}

WaveSample Evolver::evolve(const KSpec& phi, double t) const {
  if (phi.k_grid() != k_grid_) throw NumericError("state lives on a different momentum grid");
  if (!std::isfinite(t)) throw NumericError("evolution time must be finite");
  const std::size_t nk = k_grid_.count;
  const double weight = k_grid_.step / std::sqrt(2 * kPi);
  std::vector<Complex> coeffs(nk);
  const auto amps = phi.amplitudes();
  for (std::size_t n = 0; n < nk; ++n) {
    const double k = k_grid_.at(n);
    coeffs[n] = amps[n] * std::polar(weight, -t * k * k / (2 * phi.mass()));
  }
  std::vector<Complex> values(x_grid_.count);
  const auto& kern = simd::active_kernels();
  for (std::size_t j = 0; j < x_grid_.count; ++j) {
    values[j] = kern.dotu(plane_waves_.data() + j * nk, coeffs.data(), nk);
  }
  return WaveSample(x_grid_, t, std::move(values));
}

WaveSample evolve(const KSpec& phi, double t, const Grid1D& x_grid) { return Evolver(phi.k_grid(), x_grid).evolve(phi, t); }

Complex inner(const WaveSample& psi1, const WaveSample& psi2) {
  if (psi1.x_grid() != psi2.x_grid()) throw NumericError("inner: samples on different grids");
  if (psi1.time() != psi2.time()) throw NumericError("inner: samples at different times");
  return simd::dotc(psi1.values(), psi2.values()) * psi1.x_grid().step;
}

WaveSample gauge_apply(const WaveSample& psi, double lambda) {
  std::vector<Complex> values(psi.values().begin(), psi.values().end());
  simd::scale(values, std::polar(1.0, lambda));
  return WaveSample(psi.x_grid(), psi.time(), std::move(values));
}

RayResult ray_equiv_waves(std::span<const WaveSample> psi1, std::span<const WaveSample> psi2,
                          const std::vector<std::vector<WaveSample>>& probes, double tol) {
  if (!(tol > 0)) throw NumericError("tolerance must be positive");
  if (psi1.size() != psi2.size() || probes.size() != psi1.size()) {
    throw NumericError("ray test needs one psi1, psi2 and probe list per time");
  }
  RayResult out;
  for (std::size_t t = 0; t < psi1.size(); ++t) {
    const WaveSample& a = psi1[t];
    const WaveSample& b = psi2[t];
    out.times.push_back(a.time());
    for (std::size_t q = 0; q < probes[t].size(); ++q) {
      const double gap = std::abs(std::abs(inner(a, probes[t][q])) - std::abs(inner(b, probes[t][q])));
      out.max_gap = std::max(out.max_gap, gap);
      if (gap > tol && !out.witness) out.witness = RayWitness{t, q, gap};
    }
    const double lambda = wrap_phase(std::arg(inner(a, b)));
    const double norm_a = std::sqrt(simd::norm2(a.values()) * a.x_grid().step);
    const double residual =
        std::sqrt(simd::residual_norm2(a.values(), b.values(), std::polar(1.0, lambda)) * a.x_grid().step) / norm_a;
    out.lambda.push_back(lambda);
    out.residuals.push_back(residual);
    if (residual > tol && !out.witness) out.witness = RayWitness{t, RayWitness::kResidual, residual};
  }
  out.verdict = out.witness ? RayVerdict::distinct : RayVerdict::equivalent;
  return out;
}

RayResult ray_equiv_test(const KSpec& phi1, const KSpec& phi2, std::span<const double> times,
                         std::span<const KSpec> probes, const Grid1D& x_grid, double tol) {
  const auto has = [&](const KSpec& s) { return std::find(probes.begin(), probes.end(), s) != probes.end(); };
  if (!has(phi1) || !has(phi2)) throw NumericError("probe set must contain both compared states");
  const Evolver evolver(phi1.k_grid(), x_grid);
  std::vector<WaveSample> w1, w2;
  std::vector<std::vector<WaveSample>> wp;
  for (double t : times) {
    w1.push_back(evolver.evolve(phi1, t));
    w2.push_back(evolver.evolve(phi2, t));
    auto& slice = wp.emplace_back();
    for (const auto& chi : probes) slice.push_back(evolver.evolve(chi, t));
  }
  return ray_equiv_waves(w1, w2, wp, tol);
}

}  // namespace covexp
