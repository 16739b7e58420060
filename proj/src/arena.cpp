#include "galembed/arena.hpp"

#include "galembed/errors.hpp"
#include "galembed/fp.hpp"

#include <algorithm>
#include <set>

namespace galembed {

using Elem = GaloisField::Elem;

namespace {

void add_factor(std::map<Poly, long>& factors, const Poly& atom, long e) {
  if (e == 0) return;
  auto& slot = factors[atom];
  slot += e;
  if (slot == 0) factors.erase(atom);
}

void require_same_field(const FieldElement& a, const FieldElement& b) {
  if (!a.field() || !b.field() || !(*a.field() == *b.field()))
    throw InvalidInput("field elements live over different constant fields");
}

}  // namespace

FieldElement::FieldElement(FieldPtr field, Elem unit, std::map<Poly, long> factors)
    : field_(std::move(field)), unit_(unit), factors_(std::move(factors)) {
  if (!field_) throw InvalidInput("field element without a constants field");
  if (unit_ <= 0 || unit_ >= field_->size()) throw InvalidInput("field element must be nonzero");
  for (auto it = factors_.begin(); it != factors_.end();) {
    if (it->second == 0)
      it = factors_.erase(it);
    else
      ++it;
  }
}

FieldElement FieldElement::from_poly(FieldPtr field, const Poly& p) {
  if (p.is_zero()) throw InvalidInput("zero is not an element of K^x");
  const auto fac = poly_factor(*field, p);
  std::map<Poly, long> factors;
  for (const auto& [g, m] : fac.factors) factors[g] += m;
  return FieldElement(std::move(field), fac.unit, std::move(factors));
}

FieldElement FieldElement::from_fraction(FieldPtr field, const Poly& num, const Poly& den) {
  return from_poly(field, num) / from_poly(field, den);
}

long FieldElement::exponent(const Poly& atom) const {
  auto it = factors_.find(atom);
  return it == factors_.end() ? 0 : it->second;
}

FieldElement FieldElement::inverse() const { return pow(-1); }

FieldElement FieldElement::pow(long e) const {
  std::map<Poly, long> f;
  if (e != 0)
    for (const auto& [atom, m] : factors_) f[atom] = m * e;
  return FieldElement(field_, field_->pow(unit_, e), std::move(f));
}

FieldElement FieldElement::apply(const Automorphism& aut) const {
  const GaloisField& F = *field_;
  Elem unit = F.frobenius(unit_, aut.frob);
  std::map<Poly, long> f;
  for (const auto& [atom, m] : factors_) {
    const Poly image = poly_twist(F, atom, aut.frob, aut.scale);
    unit = F.mul(unit, F.pow(image.lead(), m));
    add_factor(f, poly_monic(F, image), m);
  }
  return FieldElement(field_, unit, std::move(f));
}

std::pair<Poly, Poly> FieldElement::expanded() const {
  const GaloisField& F = *field_;
  Poly num({unit_});
  Poly den({1});
  for (const auto& [atom, m] : factors_) {
    if (m > 0)
      num = poly_mul(F, num, poly_pow(F, atom, static_cast<std::uint64_t>(m)));
    else
      den = poly_mul(F, den, poly_pow(F, atom, static_cast<std::uint64_t>(-m)));
  }
  return {num, den};
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  std::map<Poly, long> f = a.factors_;
  for (const auto& [atom, m] : b.factors_) add_factor(f, atom, m);
  return FieldElement(a.field_, a.field_->mul(a.unit_, b.unit_), std::move(f));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (!a.field_ || !b.field_) return a.field_ == b.field_;
  return *a.field_ == *b.field_ && a.unit_ == b.unit_ && a.factors_ == b.factors_;
}

std::optional<FieldElement> field_add(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  const GaloisField& F = *a.field();
  const auto [n1, d1] = a.expanded();
  const auto [n2, d2] = b.expanded();
  const Poly num = poly_add(F, poly_mul(F, n1, d2), poly_mul(F, n2, d1));
  if (num.is_zero()) return std::nullopt;
  return FieldElement::from_fraction(a.field(), num, poly_mul(F, d1, d2));
}

std::optional<FieldElement> field_sum(const std::vector<FieldElement>& terms) {
  if (terms.empty()) return std::nullopt;
  const GaloisField& F = *terms.front().field();
  Poly num;
  Poly den({1});
  for (const auto& t : terms) {
    const auto [n, d] = t.expanded();
    num = poly_add(F, poly_mul(F, num, d), poly_mul(F, n, den));
    den = poly_mul(F, den, d);
  }
  if (num.is_zero()) return std::nullopt;
  return FieldElement::from_fraction(terms.front().field(), num, den);
}

std::string variant_name(Variant v) { return v == Variant::R ? "R" : "C"; }

Variant parse_variant(const std::string& s) {
  if (s == "R" || s == "r") return Variant::R;
  if (s == "C" || s == "c") return Variant::C;
  throw InvalidParameter("arena must be R or C, got '" + s + "'");
}

Arena::Arena(ArenaConfig cfg) : cfg_(cfg) {
  const int p = cfg_.p;
  if (p < 3 || !is_prime(p)) throw InvalidParameter("p must be an odd prime, got " + std::to_string(p));
  std::int64_t ell = 0;
  int k = 0;
  prime_power(cfg_.q, ell, k);
  if ((cfg_.q - 1) % p != 0)
    throw InvalidParameter("q must satisfy p | q-1, got p=" + std::to_string(p) + " q=" + std::to_string(cfg_.q));

  if (cfg_.variant == Variant::R) {
    if ((cfg_.q - 1) % (static_cast<std::int64_t>(p) * p) == 0)
      throw InvalidParameter("arena R needs p^2 not dividing q-1 (otherwise xi is a norm)");
    field_ = GaloisField::of_order(cfg_.q);
    const auto Q = field_->size();
    xi_ = field_->exp((Q - 1) / p);
    sigma_ = {0, xi_};
  } else {
    std::int64_t Q = 1;
    for (int m = 0; m < p; ++m) {
      if (Q > (std::int64_t{1} << 22) / cfg_.q) throw SizeCapExceeded("q^p exceeds the finite field size cap");
      Q *= cfg_.q;
    }
    field_ = GaloisField::of_order(Q);
    xi_ = field_->exp((Q - 1) / p);
    a_const_ = field_->exp((Q - 1) / (cfg_.q - 1));
    a_root_const_ = field_->exp((Q - 1) / ((cfg_.q - 1) * p));
    sigma_ = {k, 1};
  }
}

FieldElement Arena::constant(Elem c) const { return FieldElement(field_, c); }

FieldElement Arena::variable_element() const { return FieldElement(field_, 1, {{Poly::x(), 1}}); }

FieldElement Arena::t() const {
  if (cfg_.variant == Variant::R) return variable_element().pow(cfg_.p);
  return variable_element();
}

FieldElement Arena::a() const {
  if (cfg_.variant == Variant::R) return t();
  return constant(a_const_);
}

FieldElement Arena::a_root() const {
  if (cfg_.variant == Variant::R) return variable_element();
  return constant(a_root_const_);
}

FieldElement Arena::alpha() const {
  if (cfg_.variant == Variant::R) return a_root();
  return constant(field_->generator());
}

FieldElement Arena::from_base_poly(const Poly& p) const {
  if (cfg_.variant == Variant::R) return from_poly(poly_inflate(p, cfg_.p));
  return from_poly(p);
}

FieldElement Arena::sigma(const FieldElement& x, int k) const {
  FieldElement y = x;
  for (int m = 0; m < mod_p(k, cfg_.p); ++m) y = y.apply(sigma_);
  return y;
}

FieldElement Arena::rho(const FieldElement& x, int k) const {
  FieldElement y = x;
  for (int m = 0; m < k; ++m) y = sigma(y) / y;
  return y;
}

FieldElement Arena::norm(const FieldElement& x) const {
  FieldElement out = x;
  FieldElement y = x;
  for (int m = 1; m < cfg_.p; ++m) {
    y = sigma(y);
    out = out * y;
  }
  return out;
}

std::optional<FieldElement> Arena::pth_root(const FieldElement& x) const {
  const GaloisField& F = *field_;
  const long p = cfg_.p;
  std::map<Poly, long> f;
  for (const auto& [atom, m] : x.factors()) {
    if (m % p != 0) return std::nullopt;
    f[atom] = m / p;
  }
  const auto l = F.log(x.unit());
  if (l % p != 0) return std::nullopt;
  return FieldElement(field_, F.exp(l / p), std::move(f));
}

int Arena::xi_exponent(Elem c) const {
  const auto step = (field_->size() - 1) / cfg_.p;
  const auto l = field_->log(c);
  if (l % step != 0) throw PreconditionError("constant is not a p-th root of unity");
  return static_cast<int>(l / step);
}

std::optional<int> Arena::index(const FieldElement& x) const {
  const auto r = pth_root(norm(x));
  if (!r) return std::nullopt;
  const FieldElement ratio = sigma(*r) / *r;
  if (!ratio.is_constant()) throw PreconditionError("norm root moved by sigma beyond a constant");
  return xi_exponent(ratio.unit());
}

std::vector<Poly> Arena::atom_orbit(const Poly& atom) const {
  std::vector<Poly> orbit{atom};
  for (;;) {
    Poly next = poly_monic(*field_, poly_twist(*field_, orbit.back(), sigma_.frob, sigma_.scale));
    if (next == atom) break;
    orbit.push_back(std::move(next));
  }
  return orbit;
}

bool Arena::is_root_atom(const Poly& atom) const {
  return cfg_.variant == Variant::R && atom == Poly::x();
}

FieldElement Arena::normalize_mod_base(const FieldElement& b) const {
  const GaloisField& F = *field_;
  const long p = cfg_.p;
  std::map<Poly, long> out;
  std::set<Poly> seen;
  for (const auto& [atom, m] : b.factors()) {
    if (seen.count(atom)) continue;
    if (is_root_atom(atom)) {
      seen.insert(atom);
      const long r = ((m % p) + p) % p;
      if (r != 0) out[atom] = r;
      continue;
    }
    const auto orbit = atom_orbit(atom);
    for (const auto& a : orbit) seen.insert(a);
    if (orbit.size() == 1) continue;  // fixed atoms lie in F
    long least = 0;
    bool first = true;
    for (const auto& a : orbit) {
      const long e = b.exponent(a);
      least = first ? e : std::min(least, e);
      first = false;
    }
    for (const auto& a : orbit)
      if (b.exponent(a) != least) out[a] = b.exponent(a) - least;
  }
  Elem unit = 1;
  if (cfg_.variant == Variant::C) {
    const auto coset = (F.size() - 1) / (cfg_.q - 1);
    unit = F.exp(F.log(b.unit()) % coset);
  }
  return FieldElement(field_, unit, std::move(out));
}

FieldElement Arena::hilbert90(const FieldElement& c) const {
  if (!norm(c).is_one()) throw PreconditionError("hilbert90 needs an element of norm 1");
  const int p = cfg_.p;
  const FieldElement cinv = c.inverse();
  std::vector<FieldElement> coef{one()};
  for (int k = 1; k < p; ++k) coef.push_back(coef.back() * sigma(cinv, k - 1));

  const int width = cfg_.variant == Variant::R ? 1 : field_->degree();
  for (int n = 0; n < 4096; ++n) {
    for (int m = 0; m < width; ++m) {
      FieldElement theta = variable_element().pow(n);
      if (m > 0) theta = theta * constant(field_->pow(field_->generator(), m));  // z^m
      std::vector<FieldElement> terms;
      for (int k = 0; k < p; ++k) terms.push_back(coef[static_cast<std::size_t>(k)] * sigma(theta, k));
      const auto b0 = field_sum(terms);
      if (!b0) continue;
      FieldElement b = normalize_mod_base(*b0);
      if (!(sigma(b) / b == c)) throw PreconditionError("hilbert90 resolvent failed its check");
      return b;
    }
  }
  throw PreconditionError("hilbert90: no nonzero resolvent found");
}

std::pair<int, FieldElement> Arena::decompose_F_class(const FieldElement& c) const {
  if (!in_base(c)) throw InvalidInput("element is not in the base field F");
  if (!pth_root(c)) throw InvalidInput("element is not a p-th power in K");
  FieldElement y = c;
  const FieldElement ainv = a().inverse();
  for (int s = 0; s < cfg_.p; ++s) {
    const auto r = pth_root(y);
    if (r && in_base(*r)) return {s, *r};
    y = y * ainv;
  }
  throw PreconditionError("no decomposition c = a^s f^p found");
}

}  // namespace galembed
