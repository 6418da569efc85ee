#include <cstdlib>
#include <string>

#include "covexp/error.hpp"
#include "covexp/kernels.hpp"

namespace covexp::simd {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
      return avx2_kernels() != nullptr && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
      // Advanced SIMD is mandatory on AArch64.
      return neon_kernels() != nullptr;
  }
  return false;
}

const KernelTable& kernels_for(Isa isa) {
  if (!isa_available(isa)) throw Error("kernel ISA '" + std::string(isa_name(isa)) + "' is not available");
  switch (isa) {
    case Isa::avx2: return *avx2_kernels();
    case Isa::neon: return *neon_kernels();
    case Isa::scalar: break;
  }
  return scalar_kernels();
}

namespace {

const KernelTable& resolve() {
  if (const char* forced = std::getenv("COVEXP_ISA")) {
    const std::string want(forced);
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
      if (want == isa_name(isa)) return isa_available(isa) ? kernels_for(isa) : scalar_kernels();
    }
  }
  for (Isa isa : {Isa::avx2, Isa::neon}) {
    if (isa_available(isa)) return kernels_for(isa);
  }
  return scalar_kernels();
}

}  // namespace

const KernelTable& active_kernels() {
  static const KernelTable& table = resolve();
  return table;
}

}  // namespace covexp::simd
