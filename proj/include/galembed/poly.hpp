#pragma once

// Univariate polynomials over a GaloisField and deterministic factorization.

#include "galembed/galois_field.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace galembed {

// Coefficients low to high, encoded field elements, no trailing zeros.
struct Poly {
  std::vector<GaloisField::Elem> c;

  Poly() = default;
  explicit Poly(std::vector<GaloisField::Elem> coeffs);

  static Poly monomial(GaloisField::Elem coeff, int deg);
  static Poly x() { return monomial(1, 1); }

  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c.empty(); }
  GaloisField::Elem lead() const { return c.empty() ? 0 : c.back(); }
  GaloisField::Elem coeff(int k) const {
    return k >= 0 && k < static_cast<int>(c.size()) ? c[static_cast<std::size_t>(k)] : 0;
  }

  bool operator==(const Poly&) const = default;
};

// Atom order: by degree, then coefficients from the constant term upward,
// larger encoding first.  Over F_7 this lists s+6, s+5, s+3, s.
bool operator<(const Poly& a, const Poly& b);

Poly poly_add(const GaloisField& F, const Poly& a, const Poly& b);
Poly poly_sub(const GaloisField& F, const Poly& a, const Poly& b);
Poly poly_mul(const GaloisField& F, const Poly& a, const Poly& b);
Poly poly_scale(const GaloisField& F, const Poly& a, GaloisField::Elem k);
Poly poly_pow(const GaloisField& F, const Poly& a, std::uint64_t e);
std::pair<Poly, Poly> poly_divmod(const GaloisField& F, const Poly& a, const Poly& b);
Poly poly_mod(const GaloisField& F, const Poly& a, const Poly& b);
Poly poly_monic(const GaloisField& F, const Poly& a);
Poly poly_gcd(const GaloisField& F, const Poly& a, const Poly& b);  // monic
Poly poly_derivative(const GaloisField& F, const Poly& a);
Poly poly_powmod(const GaloisField& F, const Poly& a, std::uint64_t e, const Poly& m);

// x^k -> coeff(k)^{l^frob} * scale^k x^k
Poly poly_twist(const GaloisField& F, const Poly& a, int frob, GaloisField::Elem scale);

// a(x^k)
Poly poly_inflate(const Poly& a, int k);

struct Factorization {
  GaloisField::Elem unit = 1;
  std::vector<std::pair<Poly, int>> factors;  // monic irreducibles in atom order
};

// Square-free, distinct-degree, then equal-degree splitting.  Equal-degree
// splitting tries the candidates h_1, h_2, ... where h_n has the base-Q
// digits of n as coefficients, so the result never depends on a seed.
Factorization poly_factor(const GaloisField& F, const Poly& f);

bool poly_is_irreducible(const GaloisField& F, const Poly& f);

}  // namespace galembed
