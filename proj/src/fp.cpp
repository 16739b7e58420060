#include "galembed/fp.hpp"

#include <utility>

namespace galembed {

FpScalar pow_mod(FpScalar base, std::uint64_t exp, FpScalar m) {
  __int128 result = 1 % m;
  __int128 b = mod_p(base, m);
  while (exp > 0) {
    if (exp & 1U) result = (result * b) % m;
    b = (b * b) % m;
    exp >>= 1U;
  }
  return static_cast<FpScalar>(result);
}

FpScalar inv_mod(FpScalar a, FpScalar p) {
  // extended Euclid; a must be a unit
  FpScalar r0 = p, r1 = mod_p(a, p);
  FpScalar s0 = 0, s1 = 1;
  while (r1 != 0) {
    FpScalar q = r0 / r1;
    std::swap(r0, r1);
    r1 -= q * r0;
    std::swap(s0, s1);
    s1 -= q * s0;
  }
  return mod_p(s0, p);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FpMatrix identity(Eigen::Index n) { return FpMatrix::Identity(n, n); }

FpMatrix mat_pow(const FpMatrix& m, std::uint64_t k, FpScalar p) {
  FpMatrix result = identity(m.rows());
  FpMatrix base = reduce(m, p);
  while (k > 0) {
    if (k & 1U) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    k >>= 1U;
  }
  return result;
}

RowEchelon rref(const FpMatrix& m, FpScalar p) {
  RowEchelon out{reduce(m, p), {}};
  FpMatrix& a = out.reduced;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = row; r < a.rows(); ++r) {
      if (a(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    a.row(pivot).swap(a.row(row));
    const FpScalar inv = inv_mod(a(row, col), p);
    a.row(row) = reduce((a.row(row) * inv).eval(), p);
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == 0) continue;
      const FpScalar factor = a(r, col);
      a.row(r) = reduce((a.row(r) - factor * a.row(row)).eval(), p);
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

Eigen::Index rank(const FpMatrix& m, FpScalar p) {
  return static_cast<Eigen::Index>(rref(m, p).pivots.size());
}

FpMatrix kernel(const FpMatrix& m, FpScalar p) {
  const RowEchelon e = rref(m, p);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (auto c : e.pivots) is_pivot[static_cast<std::size_t>(c)] = true;

  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);

  FpMatrix basis = FpMatrix::Zero(m.cols(), static_cast<Eigen::Index>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const Eigen::Index fc = free_cols[k];
    const auto kk = static_cast<Eigen::Index>(k);
    basis(fc, kk) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      basis(e.pivots[r], kk) = mod_p(-e.reduced(static_cast<Eigen::Index>(r), fc), p);
  }
  return basis;
}

std::vector<Eigen::Index> independent_columns(const FpMatrix& m, FpScalar p) {
  return rref(m, p).pivots;
}

std::optional<FpVector> solve(const FpMatrix& a, const FpVector& b, FpScalar p) {
  FpMatrix aug(a.rows(), a.cols() + 1);
  aug << a, b;
  const RowEchelon e = rref(aug, p);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  FpVector x = FpVector::Zero(a.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r)
    x(e.pivots[r]) = e.reduced(static_cast<Eigen::Index>(r), a.cols());
  return x;
}

std::optional<FpVector> separating_functional(const FpMatrix& a, const FpVector& b,
                                              FpScalar p) {
  // y ranges over the left kernel of a; pick the first basis vector not
  // annihilating b.
  const FpMatrix left = kernel(a.transpose(), p);
  for (Eigen::Index k = 0; k < left.cols(); ++k) {
    const FpVector y = left.col(k);
    if (mod_p(y.dot(b), p) != 0) return y;
  }
  return std::nullopt;
}

bool in_column_space(const FpMatrix& a, const FpVector& b, FpScalar p) {
  return solve(a, b, p).has_value();
}

}  // namespace galembed
