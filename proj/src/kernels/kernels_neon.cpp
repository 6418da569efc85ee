#include "covexp/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace covexp::simd {

namespace {

// One complex double per 128-bit register (re, im).
inline float64x2_t load1(const cplx* p) { return vld1q_f64(reinterpret_cast<const double*>(p)); }

cplx dotc_neon(const cplx* a, const cplx* b, std::size_t n) {
  float64x2_t same = vdupq_n_f64(0.0), cross = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t va = load1(a + i);
    const float64x2_t vb = load1(b + i);
    same = vfmaq_f64(same, va, vb);
    cross = vfmaq_f64(cross, va, vextq_f64(vb, vb, 1));
  }
  return {vgetq_lane_f64(same, 0) + vgetq_lane_f64(same, 1), vgetq_lane_f64(cross, 0) - vgetq_lane_f64(cross, 1)};
}

cplx dotu_neon(const cplx* a, const cplx* b, std::size_t n) {
  float64x2_t same = vdupq_n_f64(0.0), cross = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t va = load1(a + i);
    const float64x2_t vb = load1(b + i);
    same = vfmaq_f64(same, va, vb);
    cross = vfmaq_f64(cross, va, vextq_f64(vb, vb, 1));
  }
  return {vgetq_lane_f64(same, 0) - vgetq_lane_f64(same, 1), vgetq_lane_f64(cross, 0) + vgetq_lane_f64(cross, 1)};
}

double norm2_neon(const cplx* a, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t v = load1(a + i);
    acc = vfmaq_f64(acc, v, v);
  }
  return vaddvq_f64(acc);
}

inline float64x2_t cmul(float64x2_t v, cplx z) {
  const float64x2_t swapped = vextq_f64(v, v, 1);         // (im, re)
  const float64x2_t zi = {-z.imag(), z.imag()};
  return vfmaq_f64(vmulq_n_f64(v, z.real()), swapped, zi);  // (re zr - im zi, im zr + re zi)
}

void scale_neon(cplx* a, std::size_t n, cplx z) {
  for (std::size_t i = 0; i < n; ++i) vst1q_f64(reinterpret_cast<double*>(a + i), cmul(load1(a + i), z));
}

double residual_norm2_neon(const cplx* a, const cplx* b, std::size_t n, cplx z) {
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t d = vsubq_f64(load1(b + i), cmul(load1(a + i), z));
    acc = vfmaq_f64(acc, d, d);
  }
  return vaddvq_f64(acc);
}

constexpr KernelTable kNeon{Isa::neon, dotc_neon, dotu_neon, norm2_neon, scale_neon, residual_norm2_neon};

}  // namespace

const KernelTable* neon_kernels() { return &kNeon; }

}  // namespace covexp::simd

#else

namespace covexp::simd {
const KernelTable* neon_kernels() { return nullptr; }
}  // namespace covexp::simd

#endif
