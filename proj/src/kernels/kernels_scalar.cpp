#include "covexp/kernels.hpp"

namespace covexp::simd {

namespace {

cplx dotc_scalar(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

cplx dotu_scalar(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
  }
  return {re, im};
}

double norm2_scalar(const cplx* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  return s;
}

void scale_scalar(cplx* a, std::size_t n, cplx z) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = a[i].real() * z.real() - a[i].imag() * z.imag();
    const double im = a[i].imag() * z.real() + a[i].real() * z.imag();
    a[i] = {re, im};
  }
}

double residual_norm2_scalar(const cplx* a, const cplx* b, std::size_t n, cplx z) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double re = b[i].real() - (a[i].real() * z.real() - a[i].imag() * z.imag());
    const double im = b[i].imag() - (a[i].imag() * z.real() + a[i].real() * z.imag());
    s += re * re + im * im;
  }
  return s;
}

constexpr KernelTable kScalar{Isa::scalar, dotc_scalar, dotu_scalar, norm2_scalar, scale_scalar, residual_norm2_scalar};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace covexp::simd
