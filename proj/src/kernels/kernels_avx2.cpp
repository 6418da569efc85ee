// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include "covexp/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace covexp::simd {

namespace {

// Two complex doubles per register, interleaved (re, im, re, im).
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// (even lanes) - (odd lanes), i.e. v0 - v1 + v2 - v3.
inline double alt_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_sub_sd(s, _mm_unpackhi_pd(s, s)));
}

// acc_same += a * b (re*re, im*im); acc_cross += a * swap(b) (re*im, im*re).
inline void accumulate(const cplx* a, const cplx* b, std::size_t n, __m256d& acc_same, __m256d& acc_cross) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = load2(a + i);
    const __m256d vb = load2(b + i);
    acc_same = _mm256_fmadd_pd(va, vb, acc_same);
    acc_cross = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), acc_cross);
  }
  if (i < n) {
    const __m128d va = _mm_loadu_pd(reinterpret_cast<const double*>(a + i));
    const __m128d vb = _mm_loadu_pd(reinterpret_cast<const double*>(b + i));
    const __m256d wa = _mm256_castpd128_pd256(va);
    const __m256d wb = _mm256_castpd128_pd256(vb);
    const __m256d mask = _mm256_castsi256_pd(_mm256_setr_epi64x(-1, -1, 0, 0));
    acc_same = _mm256_add_pd(acc_same, _mm256_and_pd(_mm256_mul_pd(wa, wb), mask));
    acc_cross = _mm256_add_pd(acc_cross, _mm256_and_pd(_mm256_mul_pd(wa, _mm256_permute_pd(wb, 0b0101)), mask));
  }
}

cplx dotc_avx2(const cplx* a, const cplx* b, std::size_t n) {
  __m256d same = _mm256_setzero_pd(), cross = _mm256_setzero_pd();
  accumulate(a, b, n, same, cross);
  // re = ar br + ai bi; im = ar bi - ai br
  return {hsum(same), alt_sum(cross)};
}

cplx dotu_avx2(const cplx* a, const cplx* b, std::size_t n) {
  __m256d same = _mm256_setzero_pd(), cross = _mm256_setzero_pd();
  accumulate(a, b, n, same, cross);
  // re = ar br - ai bi; im = ar bi + ai br
  return {alt_sum(same), hsum(cross)};
}

double norm2_avx2(const cplx* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = load2(a + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  return s;
}

inline __m256d cmul(__m256d v, __m256d zr, __m256d zi) {
  // (re zr - im zi, im zr + re zi)
  return _mm256_addsub_pd(_mm256_mul_pd(v, zr), _mm256_mul_pd(_mm256_permute_pd(v, 0b0101), zi));
}

void scale_avx2(cplx* a, std::size_t n, cplx z) {
  const __m256d zr = _mm256_set1_pd(z.real());
  const __m256d zi = _mm256_set1_pd(z.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    double* p = reinterpret_cast<double*>(a + i);
    _mm256_storeu_pd(p, cmul(_mm256_loadu_pd(p), zr, zi));
  }
  for (; i < n; ++i) {
    const double re = a[i].real() * z.real() - a[i].imag() * z.imag();
    const double im = a[i].imag() * z.real() + a[i].real() * z.imag();
    a[i] = {re, im};
  }
}

double residual_norm2_avx2(const cplx* a, const cplx* b, std::size_t n, cplx z) {
  const __m256d zr = _mm256_set1_pd(z.real());
  const __m256d zi = _mm256_set1_pd(z.imag());
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d d = _mm256_sub_pd(load2(b + i), cmul(load2(a + i), zr, zi));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    const double re = b[i].real() - (a[i].real() * z.real() - a[i].imag() * z.imag());
    const double im = b[i].imag() - (a[i].imag() * z.real() + a[i].real() * z.imag());
    s += re * re + im * im;
  }
  return s;
}

constexpr KernelTable kAvx2{Isa::avx2, dotc_avx2, dotu_avx2, norm2_avx2, scale_avx2, residual_norm2_avx2};

}  // namespace

const KernelTable* avx2_kernels() { return &kAvx2; }

}  // namespace covexp::simd

#else

namespace covexp::simd {
const KernelTable* avx2_kernels() { return nullptr; }
}  // namespace covexp::simd

#endif
