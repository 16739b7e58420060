#pragma once

// The two concrete cyclic degree-p extensions K/F used throughout.
//
//   R:  K = F_q(s), F = F_q(t), t = s^p, sigma(s) = xi*s, radicand a = t.
//   C:  K = F_{q^p}(t), F = F_q(t), sigma = q-power Frobenius on constants,
//       radicand a = a constant of F_q that is not a p-th power there.
//
// Elements of K^x are kept factored: a constant times monic irreducible
// atoms with integer exponents.

#include "galembed/galois_field.hpp"
#include "galembed/poly.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace galembed {

// x^k c -> scale^k * frob(c) x^k with frob(c) = c^{l^frob}
struct Automorphism {
  int frob = 0;
  GaloisField::Elem scale = 1;
};

class FieldElement {
 public:
  using Elem = GaloisField::Elem;

  FieldElement() = default;
  FieldElement(FieldPtr field, Elem unit, std::map<Poly, long> factors = {});

  static FieldElement one(FieldPtr field) { return FieldElement(std::move(field), 1); }
  // factors p; p must be nonzero
  static FieldElement from_poly(FieldPtr field, const Poly& p);
  static FieldElement from_fraction(FieldPtr field, const Poly& num, const Poly& den);

  const FieldPtr& field() const { return field_; }
  Elem unit() const { return unit_; }
  const std::map<Poly, long>& factors() const { return factors_; }
  long exponent(const Poly& atom) const;

  bool is_one() const { return unit_ == 1 && factors_.empty(); }
  bool is_constant() const { return factors_.empty(); }

  FieldElement inverse() const;
  FieldElement pow(long e) const;
  FieldElement apply(const Automorphism& aut) const;

  // numerator (carrying the unit) and monic denominator
  std::pair<Poly, Poly> expanded() const;

  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  friend bool operator==(const FieldElement& a, const FieldElement& b);

 private:
  FieldPtr field_;
  Elem unit_ = 1;
  std::map<Poly, long> factors_;
};

// Sum in K; empty when the sum is zero.
std::optional<FieldElement> field_add(const FieldElement& a, const FieldElement& b);
std::optional<FieldElement> field_sum(const std::vector<FieldElement>& terms);

enum class Variant { R, C };

struct ArenaConfig {
  int p = 3;
  Variant variant = Variant::R;
  std::int64_t q = 7;
};

std::string variant_name(Variant v);
Variant parse_variant(const std::string& s);

class Arena {
 public:
  using Elem = GaloisField::Elem;

  explicit Arena(ArenaConfig cfg);

  const ArenaConfig& config() const { return cfg_; }
  int p() const { return cfg_.p; }
  Variant variant() const { return cfg_.variant; }
  std::int64_t q() const { return cfg_.q; }
  int upsilon() const { return cfg_.variant == Variant::R ? 0 : 1; }

  const FieldPtr& field() const { return field_; }  // constants of K
  char variable() const { return cfg_.variant == Variant::R ? 's' : 't'; }
  const Automorphism& sigma_aut() const { return sigma_; }
  Elem xi() const { return xi_; }

  FieldElement one() const { return FieldElement::one(field_); }
  FieldElement constant(Elem c) const;
  FieldElement variable_element() const;  // s (R) or t (C)
  FieldElement t() const;                 // the generator of F over its constants
  FieldElement a() const;                 // radicand, a = (a^{1/p})^p
  FieldElement a_root() const;
  FieldElement alpha() const;             // element of nonzero index used for non-split towers
  FieldElement from_poly(const Poly& p) const { return FieldElement::from_poly(field_, p); }
  // polynomial in t with coefficients in the constants of F
  FieldElement from_base_poly(const Poly& p) const;

  FieldElement sigma(const FieldElement& x, int k = 1) const;
  // x^{rho^k}, rho = sigma - 1 written multiplicatively
  FieldElement rho(const FieldElement& x, int k = 1) const;
  FieldElement norm(const FieldElement& x) const;
  bool in_base(const FieldElement& x) const { return sigma(x) == x; }

  // canonical root (least discrete log constant), if x is a p-th power in K
  std::optional<FieldElement> pth_root(const FieldElement& x) const;

  // e with c = xi^e for a p-th root of unity c
  int xi_exponent(Elem c) const;

  // e(x) via (N(x)^{1/p})^{sigma-1} = xi^e; empty when N(x) is not a p-th power
  std::optional<int> index(const FieldElement& x) const;

  // b with sigma(b)/b = c, normalized modulo F^x; needs N(c) = 1
  FieldElement hilbert90(const FieldElement& c) const;

  // (s, f) with c = a^s f^p, f in F
  std::pair<int, FieldElement> decompose_F_class(const FieldElement& c) const;

  // sigma-orbit of a monic atom, starting at the atom
  std::vector<Poly> atom_orbit(const Poly& atom) const;
  bool is_root_atom(const Poly& atom) const;  // the atom s in R

 private:
  FieldElement normalize_mod_base(const FieldElement& b) const;

  ArenaConfig cfg_;
  FieldPtr field_;
  Automorphism sigma_;
  Elem xi_ = 1;
  Elem a_const_ = 1;
  Elem a_root_const_ = 1;
};

}  // namespace galembed
