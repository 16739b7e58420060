#pragma once

// Dense linear algebra over the prime field F_p.
//
// Matrices are ordinary Eigen integer matrices whose entries are kept in
// {0, ..., p-1}; every routine here reduces its result.  Elimination is
// column-ordered and deterministic, so particular solutions and kernel bases
// are reproducible across runs.

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

namespace galembed {

using FpScalar = std::int64_t;
using FpMatrix = Eigen::Matrix<FpScalar, Eigen::Dynamic, Eigen::Dynamic>;
using FpVector = Eigen::Matrix<FpScalar, Eigen::Dynamic, 1>;

inline FpScalar mod_p(FpScalar x, FpScalar p) {
  FpScalar r = x % p;
  return r < 0 ? r + p : r;
}

FpScalar inv_mod(FpScalar a, FpScalar p);
FpScalar pow_mod(FpScalar base, std::uint64_t exp, FpScalar m);
bool is_prime(std::int64_t n);

template <typename Derived>
auto reduce(const Eigen::MatrixBase<Derived>& m, FpScalar p) {
  using Scalar = typename Derived::Scalar;
  return m.unaryExpr([p](Scalar x) { return static_cast<Scalar>(mod_p(x, p)); }).eval();
}

template <typename A, typename B>
auto mul_mod(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b, FpScalar p) {
  return reduce((a * b).eval(), p);
}

FpMatrix identity(Eigen::Index n);
FpMatrix mat_pow(const FpMatrix& m, std::uint64_t k, FpScalar p);

struct RowEchelon {
  FpMatrix reduced;
  std::vector<Eigen::Index> pivots;  // pivot column of each nonzero row
};

// Reduced row echelon form, pivots chosen left to right.
RowEchelon rref(const FpMatrix& m, FpScalar p);

Eigen::Index rank(const FpMatrix& m, FpScalar p);

// Columns form a basis of {x : m x = 0}; one basis vector per free column,
// free column set to 1 and the other free columns to 0.
FpMatrix kernel(const FpMatrix& m, FpScalar p);

// Indices of the leftmost maximal set of independent columns.
std::vector<Eigen::Index> independent_columns(const FpMatrix& m, FpScalar p);

// Particular solution of a x = b with every free variable zero, if any.
std::optional<FpVector> solve(const FpMatrix& a, const FpVector& b, FpScalar p);

// A row functional y with y a = 0 and y b != 0, i.e. a certificate that b
// is outside the column space of a.  Empty when b lies in that space.
std::optional<FpVector> separating_functional(const FpMatrix& a, const FpVector& b, FpScalar p);

bool in_column_space(const FpMatrix& a, const FpVector& b, FpScalar p);

}  // namespace galembed
