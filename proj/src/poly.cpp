#include "galembed/poly.hpp"

#include "galembed/errors.hpp"

#include <algorithm>
#include <map>

namespace galembed {

using Elem = GaloisField::Elem;

namespace {

void trim(std::vector<Elem>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Poly exact_div(const GaloisField& F, const Poly& a, const Poly& b) {
  auto [q, r] = poly_divmod(F, a, b);
  if (!r.is_zero()) throw PreconditionError("inexact polynomial division");
  return q;
}

// a(x)^{1/l} for a polynomial in x^l
Poly char_root(const GaloisField& F, const Poly& a) {
  const auto ell = static_cast<int>(F.characteristic());
  std::vector<Elem> c;
  for (int k = 0; k <= a.degree(); k += ell) c.push_back(F.frobenius(a.coeff(k), F.degree() - 1));
  return Poly(std::move(c));
}

void square_free(const GaloisField& F, const Poly& f, int mult, std::map<Poly, int>& out) {
  if (f.degree() < 1) return;
  const auto ell = static_cast<int>(F.characteristic());
  const Poly d = poly_derivative(F, f);
  if (d.is_zero()) {
    square_free(F, char_root(F, f), mult * ell, out);
    return;
  }
  Poly c = poly_gcd(F, f, d);
  Poly w = exact_div(F, f, c);
  int i = 1;
  while (w.degree() > 0) {
    const Poly y = poly_gcd(F, w, c);
    const Poly z = exact_div(F, w, y);
    if (z.degree() > 0) out[z] += i * mult;
    ++i;
    w = y;
    c = exact_div(F, c, y);
  }
  if (c.degree() > 0) square_free(F, char_root(F, c), mult * ell, out);
}

Poly candidate(const GaloisField& F, std::int64_t n, const Poly& f) {
  std::vector<Elem> c;
  while (n > 0) {
    c.push_back(n % F.size());
    n /= F.size();
  }
  return poly_mod(F, Poly(std::move(c)), f);
}

void equal_degree(const GaloisField& F, const Poly& f, int d, std::vector<Poly>& out) {
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  const auto Q = static_cast<std::uint64_t>(F.size());
  for (std::int64_t n = 1;; ++n) {
    const Poly h = candidate(F, n, f);
    if (h.degree() < 1) continue;
    Poly s;
    if (F.characteristic() == 2) {
      // absolute trace to F_2 on each factor
      s = h;
      Poly hk = h;
      for (int k = 1; k < F.degree() * d; ++k) {
        hk = poly_mod(F, poly_mul(F, hk, hk), f);
        s = poly_add(F, s, hk);
      }
    } else {
      // norm to F_Q on each factor, then the quadratic character
      Poly norm = h;
      Poly hk = h;
      for (int k = 1; k < d; ++k) {
        hk = poly_powmod(F, hk, Q, f);
        norm = poly_mod(F, poly_mul(F, norm, hk), f);
      }
      s = poly_sub(F, poly_powmod(F, norm, (Q - 1) / 2, f), Poly({1}));
    }
    const Poly g = poly_gcd(F, s, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(F, g, d, out);
      equal_degree(F, exact_div(F, f, g), d, out);
      return;
    }
  }
}

void distinct_degree(const GaloisField& F, Poly g, std::vector<Poly>& out) {
  const auto Q = static_cast<std::uint64_t>(F.size());
  Poly h = poly_mod(F, Poly::x(), g);
  for (int d = 1; 2 * d <= g.degree(); ++d) {
    h = poly_powmod(F, h, Q, g);
    const Poly fd = poly_gcd(F, g, poly_sub(F, h, Poly::x()));
    if (fd.degree() > 0) {
      equal_degree(F, fd, d, out);
      g = exact_div(F, g, fd);
      h = poly_mod(F, h, g);
    }
  }
  if (g.degree() > 0) out.push_back(g);
}

}  // namespace

Poly::Poly(std::vector<Elem> coeffs) : c(std::move(coeffs)) { trim(c); }

Poly Poly::monomial(Elem coeff, int deg) {
  std::vector<Elem> c(static_cast<std::size_t>(deg) + 1, 0);
  c.back() = coeff;
  return Poly(std::move(c));
}

bool operator<(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t k = 0; k < a.c.size(); ++k)
    if (a.c[k] != b.c[k]) return a.c[k] > b.c[k];
  return false;
}

Poly poly_add(const GaloisField& F, const Poly& a, const Poly& b) {
  std::vector<Elem> c(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] = F.add(a.coeff(static_cast<int>(k)), b.coeff(static_cast<int>(k)));
  return Poly(std::move(c));
}

Poly poly_sub(const GaloisField& F, const Poly& a, const Poly& b) {
  std::vector<Elem> c(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] = F.sub(a.coeff(static_cast<int>(k)), b.coeff(static_cast<int>(k)));
  return Poly(std::move(c));
}

Poly poly_mul(const GaloisField& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Elem> c(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t x = 0; x < a.c.size(); ++x) {
    if (a.c[x] == 0) continue;
    for (std::size_t y = 0; y < b.c.size(); ++y) c[x + y] = F.add(c[x + y], F.mul(a.c[x], b.c[y]));
  }
  return Poly(std::move(c));
}

Poly poly_scale(const GaloisField& F, const Poly& a, Elem k) {
  std::vector<Elem> c(a.c);
  for (auto& x : c) x = F.mul(x, k);
  return Poly(std::move(c));
}

Poly poly_pow(const GaloisField& F, const Poly& a, std::uint64_t e) {
  Poly result({1});
  Poly base = a;
  while (e > 0) {
    if (e & 1U) result = poly_mul(F, result, base);
    e >>= 1U;
    if (e > 0) base = poly_mul(F, base, base);
  }
  return result;
}

std::pair<Poly, Poly> poly_divmod(const GaloisField& F, const Poly& a, const Poly& b) {
  if (b.is_zero()) throw InvalidInput("polynomial division by zero");
  std::vector<Elem> r(a.c);
  if (a.degree() < b.degree()) return {Poly(), a};
  std::vector<Elem> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1, 0);
  const Elem inv_lead = F.inv(b.lead());
  for (int k = a.degree(); k >= b.degree(); --k) {
    const Elem coef = r[static_cast<std::size_t>(k)];
    if (coef == 0) continue;
    const Elem factor = F.mul(coef, inv_lead);
    const int shift = k - b.degree();
    q[static_cast<std::size_t>(shift)] = factor;
    for (int m = 0; m <= b.degree(); ++m) {
      auto& slot = r[static_cast<std::size_t>(shift + m)];
      slot = F.sub(slot, F.mul(factor, b.c[static_cast<std::size_t>(m)]));
    }
  }
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly poly_mod(const GaloisField& F, const Poly& a, const Poly& b) { return poly_divmod(F, a, b).second; }

Poly poly_monic(const GaloisField& F, const Poly& a) {
  if (a.is_zero()) return a;
  return poly_scale(F, a, F.inv(a.lead()));
}

Poly poly_gcd(const GaloisField& F, const Poly& a, const Poly& b) {
  Poly x = a;
  Poly y = b;
  while (!y.is_zero()) {
    Poly r = poly_mod(F, x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return poly_monic(F, x);
}

Poly poly_derivative(const GaloisField& F, const Poly& a) {
  std::vector<Elem> c;
  for (int k = 1; k <= a.degree(); ++k)
    c.push_back(F.mul(F.from_int(k), a.c[static_cast<std::size_t>(k)]));
  return Poly(std::move(c));
}

Poly poly_powmod(const GaloisField& F, const Poly& a, std::uint64_t e, const Poly& m) {
  Poly result = poly_mod(F, Poly({1}), m);
  Poly base = poly_mod(F, a, m);
  while (e > 0) {
    if (e & 1U) result = poly_mod(F, poly_mul(F, result, base), m);
    e >>= 1U;
    if (e > 0) base = poly_mod(F, poly_mul(F, base, base), m);
  }
  return result;
}

Poly poly_twist(const GaloisField& F, const Poly& a, int frob, Elem scale) {
  std::vector<Elem> c(a.c.size());
  Elem lam = 1;
  for (std::size_t k = 0; k < a.c.size(); ++k) {
    c[k] = F.mul(F.frobenius(a.c[k], frob), lam);
    lam = F.mul(lam, scale);
  }
  return Poly(std::move(c));
}

Poly poly_inflate(const Poly& a, int k) {
  if (a.is_zero()) return a;
  std::vector<Elem> c(static_cast<std::size_t>(a.degree() * k) + 1, 0);
  for (std::size_t m = 0; m < a.c.size(); ++m) c[m * static_cast<std::size_t>(k)] = a.c[m];
  return Poly(std::move(c));
}

Factorization poly_factor(const GaloisField& F, const Poly& f) {
  if (f.is_zero()) throw InvalidInput("cannot factor the zero polynomial");
  Factorization out;
  out.unit = f.lead();
  std::map<Poly, int> sqf;
  square_free(F, poly_monic(F, f), 1, sqf);
  std::map<Poly, int> irreducible;
  for (const auto& [g, m] : sqf) {
    std::vector<Poly> parts;
    distinct_degree(F, g, parts);
    for (auto& h : parts) irreducible[h] += m;
  }
  for (auto& [g, m] : irreducible) out.factors.emplace_back(g, m);
  return out;
}

bool poly_is_irreducible(const GaloisField& F, const Poly& f) {
  if (f.degree() < 1) return false;
  const auto fac = poly_factor(F, f);
  return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

}  // namespace galembed
