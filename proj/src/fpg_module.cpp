#include "galembed/fpg_module.hpp"

#include "galembed/errors.hpp"

#include <sstream>
#include <utility>

namespace galembed {

namespace {

void require_odd_prime(int p) {
  if (p < 3 || !is_prime(p))
    throw InvalidParameter("p must be an odd prime, got " + std::to_string(p));
}

// Stack vectors as columns.
FpMatrix columns(const std::vector<FpVector>& vs, Eigen::Index rows) {
  FpMatrix m(rows, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t k = 0; k < vs.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = vs[k];
  return m;
}

}  // namespace

GroupAlgebraElement::GroupAlgebraElement(int p, std::vector<FpScalar> coeffs) : p_(p) {
  require_odd_prime(p);
  coeffs_.assign(static_cast<std::size_t>(p), 0);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    auto& slot = coeffs_[k % static_cast<std::size_t>(p)];
    slot = mod_p(slot + coeffs[k], p);
  }
}

GroupAlgebraElement GroupAlgebraElement::from_integer_poly(int p,
                                                           const std::vector<std::int64_t>& coeffs) {
  return GroupAlgebraElement(p, std::vector<FpScalar>(coeffs.begin(), coeffs.end()));
}

GroupAlgebraElement GroupAlgebraElement::constant(int p, std::int64_t c) {
  return GroupAlgebraElement(p, {c});
}

GroupAlgebraElement GroupAlgebraElement::sigma(int p) { return GroupAlgebraElement(p, {0, 1}); }

GroupAlgebraElement GroupAlgebraElement::rho(int p) { return GroupAlgebraElement(p, {-1, 1}); }

bool GroupAlgebraElement::is_zero() const {
  for (auto c : coeffs_)
    if (c != 0) return false;
  return true;
}

GroupAlgebraElement GroupAlgebraElement::pow(std::uint64_t k) const {
  GroupAlgebraElement result = constant(p_, 1);
  GroupAlgebraElement base = *this;
  while (k > 0) {
    if (k & 1U) result = result * base;
    base = base * base;
    k >>= 1U;
  }
  return result;
}

GroupAlgebraElement operator+(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  std::vector<FpScalar> c(a.coeffs_);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] += b.coeffs_[k];
  return GroupAlgebraElement(a.p_, std::move(c));
}

GroupAlgebraElement operator-(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  std::vector<FpScalar> c(a.coeffs_);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] -= b.coeffs_[k];
  return GroupAlgebraElement(a.p_, std::move(c));
}

GroupAlgebraElement operator*(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  const auto p = static_cast<std::size_t>(a.p_);
  std::vector<FpScalar> c(p, 0);
  for (std::size_t x = 0; x < p; ++x)
    for (std::size_t y = 0; y < p; ++y)
      c[(x + y) % p] = mod_p(c[(x + y) % p] + a.coeffs_[x] * b.coeffs_[y], a.p_);
  return GroupAlgebraElement(a.p_, std::move(c));
}

std::string GroupAlgebraElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (k == 0) {
      os << coeffs_[k];
      continue;
    }
    if (coeffs_[k] != 1) os << coeffs_[k] << "*";
    os << "sigma";
    if (k > 1) os << "^" << k;
  }
  if (first) os << "0";
  return os.str();
}

GroupAlgebraElement ga_normal_form(const std::vector<std::int64_t>& coeffs, int p) {
  return GroupAlgebraElement::from_integer_poly(p, coeffs);
}

FpGModule::FpGModule(int p_, FpMatrix sigma_, std::vector<std::string> labels_)
    : p(p_), sigma(reduce(sigma_, p_)), labels(std::move(labels_)) {
  require_odd_prime(p);
  if (sigma.rows() != sigma.cols()) throw InvalidInput("sigma matrix must be square");
  if (!labels.empty() && static_cast<Eigen::Index>(labels.size()) != sigma.rows())
    throw InvalidInput("label count does not match module dimension");
  if (mat_pow(sigma, static_cast<std::uint64_t>(p), p) != identity(sigma.rows()))
    throw InvalidInput("sigma matrix does not satisfy sigma^p = 1");
}

FpMatrix FpGModule::rho() const { return reduce((sigma - identity(dim())).eval(), p); }

FpMatrix FpGModule::rho_pow(int k) const { return mat_pow(rho(), static_cast<std::uint64_t>(k), p); }

FpGModule FpGModule::cyclic_quotient(int p, int i) {
  require_odd_prime(p);
  if (i < 1 || i > p) throw InvalidParameter("cyclic quotient length must lie in [1, p]");
  // τ (τ-1)^k = (τ-1)^{k+1} + (τ-1)^k
  FpMatrix s = identity(i);
  for (int k = 0; k + 1 < i; ++k) s(k + 1, k) = 1;
  std::vector<std::string> labels;
  for (int k = 0; k < i; ++k) labels.push_back(k == 0 ? "1" : "(tau-1)^" + std::to_string(k));
  return FpGModule(p, s, std::move(labels));
}

int module_length(const FpGModule& m, const FpVector& v) {
  if (v.size() != m.dim()) throw InvalidInput("vector dimension does not match module");
  const FpMatrix r = m.rho();
  FpVector w = reduce(v, m.p);
  int len = 0;
  while (!w.isZero()) {
    w = mul_mod(r, w, m.p);
    ++len;
    if (len > m.p) throw InvalidInput("rho is not nilpotent of degree <= p on this vector");
  }
  return len;
}

std::vector<CyclicBlock> module_decompose(const FpGModule& m,
                                          const std::vector<FpVector>& generators) {
  const FpScalar p = m.p;
  const Eigen::Index n = m.dim();
  for (const auto& g : generators)
    if (g.size() != n) throw InvalidInput("generator dimension does not match module");
  if (generators.empty()) return {};

  const FpMatrix gens = reduce(columns(generators, n), p);
  const auto cols = independent_columns(gens, p);
  const auto w = static_cast<Eigen::Index>(cols.size());
  if (w == 0) return {};
  FpMatrix basis(n, w);
  for (Eigen::Index k = 0; k < w; ++k) basis.col(k) = gens.col(cols[static_cast<std::size_t>(k)]);

  // σ restricted to the span, in span coordinates
  FpMatrix restricted(w, w);
  for (Eigen::Index k = 0; k < w; ++k) {
    const FpVector image = mul_mod(m.sigma, basis.col(k), p);
    auto y = solve(basis, image, p);
    if (!y) throw InvalidInput("span of the generators is not sigma-stable");
    restricted.col(k) = *y;
  }
  const FpMatrix nil = reduce((restricted - identity(w)).eval(), p);

  std::vector<FpMatrix> nil_pow{identity(w)};
  while (!nil_pow.back().isZero()) {
    nil_pow.push_back(mul_mod(nil_pow.back(), nil, p));
    if (static_cast<int>(nil_pow.size()) > m.p + 1)
      throw InvalidInput("rho is not nilpotent on the span");
  }
  const int height = static_cast<int>(nil_pow.size()) - 1;

  struct Chosen {
    FpVector v;
    int length;
  };
  std::vector<Chosen> chosen;
  for (int k = height; k >= 1; --k) {
    std::vector<FpVector> span;
    const FpMatrix lower = kernel(nil_pow[static_cast<std::size_t>(k - 1)], p);
    for (Eigen::Index c = 0; c < lower.cols(); ++c) span.push_back(lower.col(c));
    for (const auto& c : chosen)
      span.push_back(mul_mod(nil_pow[static_cast<std::size_t>(c.length - k)], c.v, p));

    const FpMatrix level = kernel(nil_pow[static_cast<std::size_t>(k)], p);
    for (Eigen::Index c = 0; c < level.cols(); ++c) {
      const FpVector b = level.col(c);
      const bool covered = !span.empty() && in_column_space(columns(span, w), b, p);
      if (covered) continue;
      chosen.push_back({b, k});
      span.push_back(b);
    }
  }

  std::vector<CyclicBlock> blocks;
  blocks.reserve(chosen.size());
  for (const auto& c : chosen) blocks.push_back({mul_mod(basis, c.v, p), c.length});
  return blocks;
}

DualityForm::DualityForm(int i, int p) : i_(i), p_(p), gram_(FpMatrix::Zero(i, i)) {
  require_odd_prime(p);
  if (i < 1 || i > p) throw InvalidParameter("duality form length must lie in [1, p]");
  for (int a = 0; a < i; ++a)
    for (int b = 0; b < i; ++b) gram_(a, b) = (a + b == i - 1) ? 1 : 0;
}

FpVector DualityForm::multiply(const FpVector& x, const FpVector& y) const {
  if (x.size() != i_ || y.size() != i_) throw InvalidInput("vector length must equal i");
  FpVector out = FpVector::Zero(i_);
  for (int a = 0; a < i_; ++a)
    for (int b = 0; a + b < i_; ++b) out(a + b) = mod_p(out(a + b) + x(a) * y(b), p_);
  return out;
}

FpScalar DualityForm::operator()(const FpVector& x, const FpVector& y) const {
  return multiply(x, y)(i_ - 1);
}

DualityForm duality_form(int i, int p) { return DualityForm(i, p); }

}  // namespace galembed
