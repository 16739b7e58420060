#pragma once

// Random elements and small oracles shared by the test binaries.  All
// randomness comes from std::mt19937 with fixed seeds.

#include "galembed/arena.hpp"
#include "galembed/fp.hpp"
#include "galembed/kummer.hpp"

#include <random>
#include <vector>

namespace testsupport {

using namespace galembed;

inline std::int64_t uniform(std::mt19937& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// nonzero polynomial of exact degree deg over the constants of K
inline Poly random_poly(const GaloisField& F, std::mt19937& rng, int deg) {
  std::vector<GaloisField::Elem> c(static_cast<std::size_t>(deg + 1));
  for (auto& x : c) x = uniform(rng, 0, F.size() - 1);
  c.back() = uniform(rng, 1, F.size() - 1);
  return Poly(c);
}

inline GaloisField::Elem random_unit(const GaloisField& F, std::mt19937& rng) { return uniform(rng, 1, F.size() - 1); }

// element of K^x: a unit times a few random polynomials in the arena variable
inline FieldElement random_element(const Arena& a, std::mt19937& rng, int atoms = 2, int max_deg = 2) {
  const GaloisField& F = *a.field();
  FieldElement x = a.constant(random_unit(F, rng));
  const int n = static_cast<int>(uniform(rng, 0, atoms));
  for (int k = 0; k < n; ++k) {
    long e = uniform(rng, -2, 2);
    if (e == 0) e = 1;
    x = x * a.from_poly(random_poly(F, rng, static_cast<int>(uniform(rng, 1, max_deg)))).pow(e);
  }
  return x;
}

// element of F^x
inline FieldElement random_base_element(const Arena& a, std::mt19937& rng, int atoms = 2) {
  const GaloisField& F = *a.field();
  GaloisField::Elem unit = 1;
  if (a.variant() == Variant::R) {
    unit = random_unit(F, rng);
  } else {
    // constants of F are the (Q-1)/(q-1)-th powers
    unit = F.exp(((F.size() - 1) / (a.q() - 1)) * uniform(rng, 0, a.q() - 2));
  }
  FieldElement x = a.constant(unit);
  const int n = static_cast<int>(uniform(rng, 1, atoms));
  for (int k = 0; k < n; ++k) {
    std::vector<GaloisField::Elem> c(2);
    if (a.variant() == Variant::R) {
      c[0] = uniform(rng, 0, F.size() - 1);
    } else {
      const auto g = uniform(rng, 0, a.q() - 1);
      c[0] = g == 0 ? 0 : F.exp(((F.size() - 1) / (a.q() - 1)) * g);
    }
    c[1] = 1;
    long e = uniform(rng, 1, a.p() - 1);
    x = x * a.from_base_poly(Poly(c)).pow(e);
  }
  return x;
}

// all vectors in F_p^n, in lexicographic order
template <typename Fn>
void for_each_vector(Eigen::Index n, int p, Fn fn) {
  FpVector v = FpVector::Zero(n);
  for (;;) {
    fn(v);
    Eigen::Index k = 0;
    while (k < n && v(k) == p - 1) v(k++) = 0;
    if (k == n) return;
    ++v(k);
  }
}

// Exhaustive search for x with m x = b over F_p (the brute-force oracle).
inline bool brute_force_solvable(const FpMatrix& m, const FpVector& b, int p) {
  bool found = false;
  const FpVector target = reduce(b, p);
  for_each_vector(m.cols(), p, [&](const FpVector& x) {
    if (!found && mul_mod(m, x, p) == target) found = true;
  });
  return found;
}

}  // namespace testsupport
