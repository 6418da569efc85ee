#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace covexp {

using Complex = std::complex<double>;

// Uniform grid start + i * step, i < count.
struct Grid1D {
  double start = 0.0;
  double step = 1.0;
  std::size_t count = 0;
  double at(std::size_t i) const { return start + static_cast<double>(i) * step; }
  friend bool operator==(const Grid1D&, const Grid1D&) = default;
};

// Position grid on [lo, hi) with `modes` points, and the momentum grid
// commensurate with it (dk * dx = 2 pi / modes, centred on k = 0), so that
// discrete orthogonality of plane waves holds up to rounding.
struct GridPair {
  Grid1D x;
  Grid1D k;
};
GridPair commensurate_grids(std::size_t modes, double lo, double hi);

// Momentum-space state (hbar = 1).
class KSpec {
 public:
  // Throws NumericError for an empty grid, mismatched sizes or mass <= 0.
  KSpec(Grid1D k_grid, std::vector<Complex> amplitudes, double mass = 1.0);

  // Gaussian packet centred at k0 with momentum spread sigma, normalized.
  static KSpec gaussian(const Grid1D& k_grid, double k0, double sigma, double x0 = 0.0, double mass = 1.0);
  // Single nonzero amplitude at grid index n, normalized.
  static KSpec plane_wave(const Grid1D& k_grid, std::size_t n, double mass = 1.0);

  const Grid1D& k_grid() const { return grid_; }
  std::span<const Complex> amplitudes() const { return amps_; }
  double mass() const { return mass_; }

  // sum |phi_n|^2 dk
  double norm2() const;
  // sum conj(phi_n) chi_n dk
  Complex inner(const KSpec& other) const;
  KSpec normalized() const;
  KSpec operator*(Complex z) const;
  KSpec operator+(const KSpec& other) const;

  friend bool operator==(const KSpec&, const KSpec&) = default;

 private:
  Grid1D grid_;
  std::vector<Complex> amps_;
  double mass_;
};

// Samples of psi(x, t) on a position grid. Only produced by evolution and gauging.
class WaveSample {
 public:
  const Grid1D& x_grid() const { return grid_; }
  double time() const { return t_; }
  std::span<const Complex> values() const { return values_; }

 private:
  friend class Evolver;
  friend WaveSample gauge_apply(const WaveSample& psi, double lambda);
  WaveSample(Grid1D grid, double t, std::vector<Complex> values)
      : grid_(grid), t_(t), values_(std::move(values)) {}

  Grid1D grid_;
  double t_;
  std::vector<Complex> values_;
};

// Free evolution psi(x, t) = (2 pi)^{-1/2} sum_n phi_n exp(-i t k_n^2 / (2m) + i k_n x) dk.
// Caches the plane-wave matrix exp(i k_n x_j) for one (k grid, x grid) pair.
class Evolver {
 public:
  Evolver(const Grid1D& k_grid, const Grid1D& x_grid);

  const Grid1D& k_grid() const { return k_grid_; }
  const Grid1D& x_grid() const { return x_grid_; }

  // Throws NumericError if phi lives on a different k grid.
  WaveSample evolve(const KSpec& phi, double t) const;

 private:
  Grid1D k_grid_;
  Grid1D x_grid_;
  std::vector<Complex> plane_waves_;  // row j: exp(i k_n x_j), n = 0..K-1
};

WaveSample evolve(const KSpec& phi, double t, const Grid1D& x_grid);

// Riemann sum sum conj(psi1) psi2 dx; conjugate-linear in the first argument.
// Throws NumericError unless grids and times match.
Complex inner(const WaveSample& psi1, const WaveSample& psi2);

// Pointwise multiplication by exp(i lambda).
WaveSample gauge_apply(const WaveSample& psi, double lambda);

enum class RayVerdict { equivalent, distinct };

struct RayWitness {
  static constexpr std::size_t kResidual = std::numeric_limits<std::size_t>::max();
  std::size_t time_index = 0;
  std::size_t probe_index = 0;  // kResidual when the phase-residual certificate failed
  double gap = 0.0;             // modulus gap, or relative residual norm
};

struct RayResult {
  RayVerdict verdict = RayVerdict::equivalent;
  std::vector<double> times;
  std::vector<double> lambda;     // arg (psi1(t), psi2(t)) in (-pi, pi]; filled for every checked time
  std::vector<double> residuals;  // ||psi2 - e^{i lambda} psi1|| / ||psi1||
  double max_gap = 0.0;
  std::optional<RayWitness> witness;
};

// Compares ||(psi1, chi)| - |(psi2, chi)|| against tol for every probe chi at
// every time, then certifies equivalence with ||psi2 - e^{i Lambda(t)} psi1|| <= tol ||psi1||.
// probes[t] lists the probe waves at time index t.
RayResult ray_equiv_waves(std::span<const WaveSample> psi1, std::span<const WaveSample> psi2,
                          const std::vector<std::vector<WaveSample>>& probes, double tol);

// Momentum-space front end: evolves everything on `x_grid`. The probe list
// must contain phi1 and phi2 themselves; throws NumericError otherwise.
RayResult ray_equiv_test(const KSpec& phi1, const KSpec& phi2, std::span<const double> times,
                         std::span<const KSpec> probes, const Grid1D& x_grid, double tol);

}  // namespace covexp
