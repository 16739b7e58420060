#include "galembed/galois_field.hpp"

#include "galembed/errors.hpp"
#include "galembed/fp.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace galembed {

namespace {

constexpr std::int64_t kMaxFieldSize = 1 << 22;

}  // namespace

void prime_power(std::int64_t q, std::int64_t& ell, int& d) {
  if (q < 2) throw InvalidParameter("field order must be a prime power, got " + std::to_string(q));
  std::int64_t l = 2;
  while (l * l <= q && q % l != 0) ++l;
  if (q % l != 0) l = q;
  std::int64_t r = q;
  int k = 0;
  while (r % l == 0) {
    r /= l;
    ++k;
  }
  if (r != 1) throw InvalidParameter("field order must be a prime power, got " + std::to_string(q));
  ell = l;
  d = k;
}

GaloisField::GaloisField(std::int64_t ell, int d) : ell_(ell), d_(d) {
  if (!is_prime(ell)) throw InvalidParameter("characteristic must be prime");
  if (d < 1) throw InvalidParameter("field degree must be positive");
  size_ = 1;
  for (int k = 0; k < d; ++k) {
    size_ *= ell;
    if (size_ > kMaxFieldSize) throw SizeCapExceeded("finite field too large");
  }
  pow_ell_.assign(static_cast<std::size_t>(d) + 1, 1);
  for (int k = 1; k <= d; ++k) pow_ell_[static_cast<std::size_t>(k)] = pow_ell_[static_cast<std::size_t>(k) - 1] * ell;

  const auto order = size_ - 1;
  exp_.assign(static_cast<std::size_t>(order), 0);
  log_.assign(static_cast<std::size_t>(size_), -1);

  if (d == 1) {
    modulus_ = {0, 1};
    for (std::int64_t g = 1; g < ell; ++g) {
      std::int64_t x = 1;
      std::int64_t k = 0;
      bool ok = true;
      do {
        exp_[static_cast<std::size_t>(k)] = x;
        x = x * g % ell;
        ++k;
        if (x == 1 && k < order) {
          ok = false;
          break;
        }
      } while (k < order);
      if (ok) {
        modulus_ = {mod_p(-g, ell), 1};
        break;
      }
    }
  } else {
    // Search monic m = z^d + (lower part encoded by n) in increasing n.
    for (std::int64_t n = 0; n < size_; ++n) {
      std::vector<std::int64_t> low(static_cast<std::size_t>(d));
      for (int k = 0; k < d; ++k)
        low[static_cast<std::size_t>(k)] = (n / pow_ell_[static_cast<std::size_t>(k)]) % ell;
      if (low[0] == 0) continue;
      // iterate powers of z in F_l[z]/(m)
      std::vector<std::int64_t> cur(static_cast<std::size_t>(d), 0);
      cur[0] = 1;
      bool ok = true;
      for (std::int64_t k = 0; k < order; ++k) {
        Elem enc = 0;
        for (int c = d - 1; c >= 0; --c) enc = enc * ell + cur[static_cast<std::size_t>(c)];
        if (k > 0 && enc == 1) {
          ok = false;
          break;
        }
        exp_[static_cast<std::size_t>(k)] = enc;
        // multiply by z: shift, then reduce z^d = -low
        const std::int64_t top = cur[static_cast<std::size_t>(d) - 1];
        for (int c = d - 1; c > 0; --c) cur[static_cast<std::size_t>(c)] = cur[static_cast<std::size_t>(c) - 1];
        cur[0] = 0;
        for (int c = 0; c < d; ++c)
          cur[static_cast<std::size_t>(c)] = mod_p(cur[static_cast<std::size_t>(c)] - top * low[static_cast<std::size_t>(c)], ell);
      }
      if (!ok) continue;
      Elem enc = 0;
      for (int c = d - 1; c >= 0; --c) enc = enc * ell + cur[static_cast<std::size_t>(c)];
      if (enc != 1) continue;
      modulus_ = low;
      modulus_.push_back(1);
      break;
    }
  }
  for (std::int64_t k = 0; k < order; ++k) log_[static_cast<std::size_t>(exp_[static_cast<std::size_t>(k)])] = k;
  for (std::int64_t a = 1; a < size_; ++a)
    if (log_[static_cast<std::size_t>(a)] < 0) throw InvalidParameter("no primitive polynomial found");
}

std::shared_ptr<const GaloisField> GaloisField::of_order(std::int64_t q) {
  // Tables are immutable; sharing them across callers is invisible.
  static std::mutex mu;
  static std::map<std::int64_t, std::shared_ptr<const GaloisField>> cache;
  std::int64_t ell = 0;
  int d = 0;
  prime_power(q, ell, d);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const GaloisField>(ell, d);
  cache.emplace(q, f);
  return f;
}

GaloisField::Elem GaloisField::add(Elem a, Elem b) const {
  if (d_ == 1) return (a + b) % ell_;
  Elem out = 0;
  for (int k = d_ - 1; k >= 0; --k) {
    const auto pk = pow_ell_[static_cast<std::size_t>(k)];
    out = out * ell_ + ((a / pk) % ell_ + (b / pk) % ell_) % ell_;
  }
  return out;
}

GaloisField::Elem GaloisField::neg(Elem a) const {
  if (d_ == 1) return (ell_ - a) % ell_;
  Elem out = 0;
  for (int k = d_ - 1; k >= 0; --k) {
    const auto pk = pow_ell_[static_cast<std::size_t>(k)];
    out = out * ell_ + (ell_ - (a / pk) % ell_) % ell_;
  }
  return out;
}

GaloisField::Elem GaloisField::sub(Elem a, Elem b) const { return add(a, neg(b)); }

GaloisField::Elem GaloisField::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  const auto order = size_ - 1;
  return exp_[static_cast<std::size_t>((log_[static_cast<std::size_t>(a)] + log_[static_cast<std::size_t>(b)]) % order)];
}

GaloisField::Elem GaloisField::inv(Elem a) const {
  if (a == 0) throw InvalidInput("division by zero in finite field");
  const auto order = size_ - 1;
  return exp_[static_cast<std::size_t>((order - log_[static_cast<std::size_t>(a)]) % order)];
}

GaloisField::Elem GaloisField::pow(Elem a, std::int64_t e) const {
  if (a == 0) {
    if (e < 0) throw InvalidInput("zero to a negative power");
    return e == 0 ? 1 : 0;
  }
  const auto order = size_ - 1;
  const auto l = static_cast<__int128>(log_[static_cast<std::size_t>(a)]) * e;
  return exp_[static_cast<std::size_t>(mod_p(static_cast<std::int64_t>(l % order), order))];
}

GaloisField::Elem GaloisField::frobenius(Elem a, int k) const {
  if (a == 0) return 0;
  const auto order = size_ - 1;
  const auto e = pow_mod(ell_, static_cast<std::uint64_t>(mod_p(k, d_)), order);
  return pow(a, e == 0 ? order : e);
}

std::int64_t GaloisField::log(Elem a) const {
  if (a <= 0 || a >= size_) throw InvalidInput("logarithm of zero");
  return log_[static_cast<std::size_t>(a)];
}

GaloisField::Elem GaloisField::exp(std::int64_t k) const {
  return exp_[static_cast<std::size_t>(mod_p(k, size_ - 1))];
}

GaloisField::Elem GaloisField::from_int(std::int64_t n) const { return mod_p(n, ell_); }

std::vector<std::int64_t> GaloisField::digits(Elem a) const {
  std::vector<std::int64_t> out(static_cast<std::size_t>(d_));
  for (int k = 0; k < d_; ++k) {
    out[static_cast<std::size_t>(k)] = a % ell_;
    a /= ell_;
  }
  return out;
}

GaloisField::Elem GaloisField::from_digits(const std::vector<std::int64_t>& digits) const {
  // higher powers of z are reduced through the field multiplication
  Elem out = 0;
  for (std::size_t k = 0; k < digits.size(); ++k) {
    const Elem c = mod_p(digits[k], ell_);
    if (c == 0) continue;
    Elem zk;
    if (d_ == 1)
      zk = 1;
    else if (static_cast<int>(k) < d_)
      zk = pow_ell_[k];
    else
      zk = pow(pow_ell_[1], static_cast<std::int64_t>(k));
    out = add(out, mul(c, zk));
  }
  return out;
}

bool GaloisField::is_single_term(Elem a) const {
  int terms = 0;
  for (auto c : digits(a))
    if (c != 0) ++terms;
  return terms <= 1;
}

std::string GaloisField::to_string(Elem a) const {
  if (d_ == 1) return std::to_string(a);
  const auto dg = digits(a);
  std::ostringstream os;
  bool first = true;
  for (int k = d_ - 1; k >= 0; --k) {
    const auto c = dg[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    if (!first) os << "+";
    first = false;
    if (k == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c << "*";
    os << "z";
    if (k > 1) os << "^" << k;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace galembed
