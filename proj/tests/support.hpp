#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>

#include "covexp/exponent_space.hpp"
#include "covexp/rational.hpp"

namespace testing {

// COVEXP_SEED fixes the randomized property tests; default is a constant so
// plain ctest runs are reproducible too.
inline std::uint64_t seed() {
  if (const char* s = std::getenv("COVEXP_SEED"); s && *s) return std::stoull(s);
  return 0x5eedc0e0001ULL;
}

inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(seed() ^ (salt * 0x9e3779b97f4a7c15ULL)); }

// Small numerators and denominators keep exact arithmetic cheap while still
// exercising non-integer cancellation.
inline covexp::Rational random_rational(std::mt19937_64& g, int span = 7) {
  std::uniform_int_distribution<int> num(-span, span), den(1, span);
  covexp::Rational q(num(g), den(g));
  q.canonicalize();
  return q;
}

inline covexp::TruncPoly random_poly(std::mt19937_64& g, std::size_t vars, unsigned cap, double density = 0.5) {
  covexp::TruncPoly p(vars, cap);
  std::bernoulli_distribution keep(density);
  for (const auto& m : covexp::monomials_up_to(vars, cap)) {
    if (keep(g)) p.add_term(m, random_rational(g));
  }
  return p;
}

inline covexp::LambdaForm random_lambda(std::mt19937_64& g, std::size_t n, std::size_t d, unsigned cap) {
  covexp::LambdaForm l(n, d, cap);
  for (std::size_t i = 0; i < n; ++i) l.set(i, random_poly(g, d, cap));
  return l;
}

}  // namespace testing
