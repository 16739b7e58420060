#pragma once

// Finite fields F_{l^d} with table-driven arithmetic.
//
// An element is stored as the integer whose base-l digits are its
// coefficients in the power basis 1, z, ..., z^{d-1}, where z is a root of
// the least primitive monic polynomial of degree d (least in that same
// encoding).  So z generates the multiplicative group; for d = 1 the
// generator is the least primitive root mod l.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace galembed {

class GaloisField {
 public:
  using Elem = std::int64_t;

  GaloisField(std::int64_t ell, int d);

  // F_q for a prime power q.
  static std::shared_ptr<const GaloisField> of_order(std::int64_t q);

  std::int64_t characteristic() const { return ell_; }
  int degree() const { return d_; }
  std::int64_t size() const { return size_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem generator() const { return exp_[1]; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::int64_t e) const;

  // a^{l^k}
  Elem frobenius(Elem a, int k) const;

  // discrete log base generator(), in [0, size-1)
  std::int64_t log(Elem a) const;
  Elem exp(std::int64_t k) const;

  // integer reduced mod l, as a prime-field element
  Elem from_int(std::int64_t n) const;

  // coefficients of z^0..z^{d-1}
  std::vector<std::int64_t> digits(Elem a) const;
  Elem from_digits(const std::vector<std::int64_t>& digits) const;

  // Polynomial in z, high degree first, e.g. "3*z^2+z+4".  A single term
  // never needs parentheses; sums do.
  std::string to_string(Elem a) const;
  bool is_single_term(Elem a) const;

  // the primitive polynomial defining the field, coefficients low to high
  const std::vector<std::int64_t>& modulus() const { return modulus_; }

  bool operator==(const GaloisField& o) const { return ell_ == o.ell_ && d_ == o.d_; }

 private:
  std::int64_t ell_;
  int d_;
  std::int64_t size_;
  std::vector<std::int64_t> modulus_;
  std::vector<Elem> exp_;          // exp_[k] = z^k, length size-1
  std::vector<std::int64_t> log_;  // log_[a], a != 0
  std::vector<std::int64_t> pow_ell_;
};

using FieldPtr = std::shared_ptr<const GaloisField>;

// Writes q = l^d, or throws if q is not a prime power.
void prime_power(std::int64_t q, std::int64_t& ell, int& d);

}  // namespace galembed
