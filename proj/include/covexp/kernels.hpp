#pragma once

// Complex vector kernels behind the wave-function arithmetic. Each ISA provides
// the same table of function pointers; the scalar table is the reference and
// the vector tables are tested against it.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace covexp::simd {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

struct KernelTable {
  Isa isa;
  // sum conj(a_i) b_i
  cplx (*dotc)(const cplx* a, const cplx* b, std::size_t n);
  // sum a_i b_i
  cplx (*dotu)(const cplx* a, const cplx* b, std::size_t n);
  // sum |a_i|^2
  double (*norm2)(const cplx* a, std::size_t n);
  // a_i *= z
  void (*scale)(cplx* a, std::size_t n, cplx z);
  // sum |b_i - z a_i|^2
  double (*residual_norm2)(const cplx* a, const cplx* b, std::size_t n, cplx z);
};

const KernelTable& scalar_kernels();
// nullptr when the variant was not compiled for this target.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

// Compiled in and supported by the running CPU.
bool isa_available(Isa isa);

// Best available table. COVEXP_ISA=scalar|avx2|neon forces a choice (falling
// back to scalar when the requested ISA is unavailable). Resolved once.
const KernelTable& active_kernels();

// Throws covexp::Error when `isa` is unavailable.
const KernelTable& kernels_for(Isa isa);

inline cplx dotc(std::span<const cplx> a, std::span<const cplx> b) {
  return active_kernels().dotc(a.data(), b.data(), a.size());
}
inline cplx dotu(std::span<const cplx> a, std::span<const cplx> b) {
  return active_kernels().dotu(a.data(), b.data(), a.size());
}
inline double norm2(std::span<const cplx> a) { return active_kernels().norm2(a.data(), a.size()); }
inline void scale(std::span<cplx> a, cplx z) { active_kernels().scale(a.data(), a.size(), z); }
inline double residual_norm2(std::span<const cplx> a, std::span<const cplx> b, cplx z) {
  return active_kernels().residual_norm2(a.data(), b.data(), a.size(), z);
}

}  // namespace covexp::simd
