#pragma once

// The group algebra F_p[G] of a cyclic group G = <σ> of odd prime order p,
// and finite F_p[G]-modules given by the matrix of σ.

#include "galembed/fp.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace galembed {

// Element of F_p[G]; slot k holds the coefficient of σ^k.
class GroupAlgebraElement {
 public:
  GroupAlgebraElement(int p, std::vector<FpScalar> coeffs);

  // Folds an integer polynomial in σ (coefficient of σ^k at index k, any
  // length, any sign) into normal form: σ^p = 1, coefficients mod p.
  static GroupAlgebraElement from_integer_poly(int p, const std::vector<std::int64_t>& coeffs);
  static GroupAlgebraElement constant(int p, std::int64_t c);
  static GroupAlgebraElement sigma(int p);
  static GroupAlgebraElement rho(int p);  // σ - 1

  int p() const { return p_; }
  const std::vector<FpScalar>& coeffs() const { return coeffs_; }
  FpScalar operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
  bool is_zero() const;

  GroupAlgebraElement pow(std::uint64_t k) const;

  friend GroupAlgebraElement operator+(const GroupAlgebraElement& a, const GroupAlgebraElement& b);
  friend GroupAlgebraElement operator-(const GroupAlgebraElement& a, const GroupAlgebraElement& b);
  friend GroupAlgebraElement operator*(const GroupAlgebraElement& a, const GroupAlgebraElement& b);
  friend bool operator==(const GroupAlgebraElement& a, const GroupAlgebraElement& b) = default;

  std::string to_string() const;

 private:
  int p_;
  std::vector<FpScalar> coeffs_;
};

// Normal form of an integer polynomial in σ.
GroupAlgebraElement ga_normal_form(const std::vector<std::int64_t>& coeffs, int p);

// A finite F_p[G]-module: the F_p-space F_p^dim with σ acting by sigma.
struct FpGModule {
  int p = 3;
  FpMatrix sigma;
  std::vector<std::string> labels;

  FpGModule() = default;
  FpGModule(int p, FpMatrix sigma, std::vector<std::string> labels = {});

  Eigen::Index dim() const { return sigma.rows(); }
  FpMatrix rho() const;  // σ - 1
  FpMatrix rho_pow(int k) const;

  // The cyclic module A/A_i in the basis 1, (τ-1), ..., (τ-1)^{i-1}.
  static FpGModule cyclic_quotient(int p, int i);
};

// Smallest i >= 0 with ρ^i v = 0.
int module_length(const FpGModule& m, const FpVector& v);

struct CyclicBlock {
  FpVector generator;
  int length = 0;
};

// Splits span(generators) into cyclic F_p[G]-modules by kernel-chain
// pivoting; lengths are the Jordan block sizes of ρ on the span.
std::vector<CyclicBlock> module_decompose(const FpGModule& m, const std::vector<FpVector>& generators);

// Symmetric pairing B(x,y) = λ(xy) on A/A_i, λ reading the coefficient of
// (τ-1)^{i-1}.  Vectors are coordinates in the basis (τ-1)^k.
class DualityForm {
 public:
  DualityForm(int i, int p);

  int length() const { return i_; }
  int p() const { return p_; }
  const FpMatrix& gram() const { return gram_; }

  FpScalar operator()(const FpVector& x, const FpVector& y) const;

  // product in A/A_i = F_p[X]/(X^i), X = τ - 1
  FpVector multiply(const FpVector& x, const FpVector& y) const;

 private:
  int i_;
  int p_;
  FpMatrix gram_;
};

DualityForm duality_form(int i, int p);

}  // namespace galembed
