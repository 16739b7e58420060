#include "galembed/pgroup.hpp"

#include "galembed/errors.hpp"
#include "galembed/fpg_module.hpp"

#include <functional>

namespace galembed {

namespace {

struct Subgroup {
  std::vector<char> member;
  std::vector<GroupElement> elements;
  std::vector<GroupElement> generators;

  explicit Subgroup(const ExtensionGroup& g) : member(g.order(), 0) {
    member[g.identity()] = 1;
    elements.push_back(g.identity());
  }
  bool contains(GroupElement x) const { return member[x] != 0; }
  std::size_t size() const { return elements.size(); }
};

void extend(const ExtensionGroup& g, Subgroup& h, GroupElement s) {
  if (h.contains(s)) return;
  h.generators.push_back(s);
  for (std::size_t idx = 0; idx < h.elements.size(); ++idx) {
    for (auto gen : h.generators) {
      const auto y = g.mul(h.elements[idx], gen);
      if (!h.member[y]) {
        h.member[y] = 1;
        h.elements.push_back(y);
      }
    }
  }
}

Subgroup closure(const ExtensionGroup& g, const std::vector<GroupElement>& seeds) {
  Subgroup h(g);
  for (auto s : seeds) extend(g, h, s);
  return h;
}

Subgroup normal_closure(const ExtensionGroup& g, const std::vector<GroupElement>& seeds,
                        const std::vector<GroupElement>& group_gens) {
  Subgroup h = closure(g, seeds);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k < h.generators.size(); ++k) {
      for (auto x : group_gens) {
        const auto c = g.mul(g.mul(x, h.generators[k]), g.inverse(x));
        if (!h.contains(c)) {
          extend(g, h, c);
          changed = true;
        }
      }
    }
  }
  return h;
}

// Any generating set, greedy in index order.
std::vector<GroupElement> generating_set(const ExtensionGroup& g) {
  Subgroup h(g);
  for (GroupElement x = 0; x < g.order() && h.size() < g.order(); ++x) extend(g, h, x);
  return h.generators;
}

Subgroup frattini(const ExtensionGroup& g, const std::vector<GroupElement>& gens) {
  std::vector<GroupElement> seeds;
  const auto p = static_cast<std::uint64_t>(g.p());
  for (GroupElement x = 0; x < g.order(); ++x) seeds.push_back(g.power(x, p));
  for (auto a : gens)
    for (auto b : gens) seeds.push_back(commutator(g, a, b));
  // p-th powers form a conjugation-stable set already
  return normal_closure(g, seeds, gens);
}

int log_p(std::uint64_t n, int p) {
  int k = 0;
  while (n > 1) {
    n /= static_cast<std::uint64_t>(p);
    ++k;
  }
  return k;
}

// Extends the assignment gens[k] -> images[k] along right multiplication;
// returns the full map if it is a well-defined homomorphism.
std::optional<std::vector<GroupElement>> extend_hom(const ExtensionGroup& g1, const ExtensionGroup& g2,
                                                    const std::vector<GroupElement>& gens,
                                                    const std::vector<GroupElement>& images) {
  constexpr GroupElement kUnset = 0xffffffffU;
  std::vector<GroupElement> map(g1.order(), kUnset);
  std::vector<GroupElement> queue{g1.identity()};
  map[g1.identity()] = g2.identity();
  for (std::size_t idx = 0; idx < queue.size(); ++idx) {
    const auto x = queue[idx];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const auto y = g1.mul(x, gens[k]);
      const auto img = g2.mul(map[x], images[k]);
      if (map[y] == kUnset) {
        map[y] = img;
        queue.push_back(y);
      } else if (map[y] != img) {
        return std::nullopt;
      }
    }
  }
  if (queue.size() != g1.order()) return std::nullopt;
  return map;
}

}  // namespace

ExtensionGroup::ExtensionGroup(int p, int i, FpMatrix action, FpVector carry)
    : p_(p), i_(i), action_(reduce(action, p)), carry_(reduce(carry, p)) {
  if (p < 3 || !is_prime(p)) throw InvalidParameter("p must be an odd prime");
  if (i < 1) throw InvalidParameter("module length must be positive");
  if (action_.rows() != i || action_.cols() != i || carry_.size() != i)
    throw InvalidInput("extension data has the wrong dimension");
  std::uint64_t n = static_cast<std::uint64_t>(p);
  for (int m = 0; m < i; ++m) {
    n *= static_cast<std::uint64_t>(p);
    if (n > (1ULL << 31)) throw SizeCapExceeded("group order exceeds 2^31");
  }
  order_ = static_cast<Element>(n);
  if (mat_pow(action_, static_cast<std::uint64_t>(p), p) != galembed::identity(i))
    throw InvalidInput("action does not have order dividing p");
  if (mul_mod(action_, carry_, p) != carry_) throw InvalidInput("carry is not fixed by the action");

  FpMatrix a = galembed::identity(i);
  for (int k = 0; k < p; ++k) {
    std::vector<int> flat(static_cast<std::size_t>(i * i));
    for (int r = 0; r < i; ++r)
      for (int c = 0; c < i; ++c) flat[static_cast<std::size_t>(r * i + c)] = static_cast<int>(a(r, c));
    action_pow_.push_back(std::move(flat));
    a = mul_mod(a, action_, p);
  }
  for (int r = 0; r < i; ++r) carry_digits_.push_back(static_cast<int>(carry_(r)));
}

ExtensionGroup ExtensionGroup::bie(int p, int i, int e) {
  if (p < 3 || !is_prime(p)) throw InvalidParameter("p must be an odd prime");
  if (i < 1 || i > p) throw InvalidParameter("B_{i,e} needs 1 <= i <= p");
  const FpGModule quotient = FpGModule::cyclic_quotient(p, i);
  FpVector carry = FpVector::Zero(i);
  carry(i - 1) = mod_p(e, p);
  return ExtensionGroup(p, i, quotient.sigma, carry);
}

ExtensionGroup::Element ExtensionGroup::encode(const std::vector<int>& v, int k) const {
  Element x = static_cast<Element>(mod_p(k, p_));
  for (int m = i_ - 1; m >= 0; --m) x = x * static_cast<Element>(p_) + static_cast<Element>(mod_p(v[static_cast<std::size_t>(m)], p_));
  return x;
}

std::pair<std::vector<int>, int> ExtensionGroup::decode(Element x) const {
  std::vector<int> v(static_cast<std::size_t>(i_));
  for (int m = 0; m < i_; ++m) {
    v[static_cast<std::size_t>(m)] = static_cast<int>(x % static_cast<Element>(p_));
    x /= static_cast<Element>(p_);
  }
  return {v, static_cast<int>(x)};
}

ExtensionGroup::Element ExtensionGroup::tau0() const {
  std::vector<int> v(static_cast<std::size_t>(i_), 0);
  v[0] = 1;
  return encode(v, 0);
}

ExtensionGroup::Element ExtensionGroup::mul(Element a, Element b) const {
  int v[64];
  int w[64];
  const auto P = static_cast<Element>(p_);
  for (int m = 0; m < i_; ++m) {
    v[m] = static_cast<int>(a % P);
    a /= P;
    w[m] = static_cast<int>(b % P);
    b /= P;
  }
  const int k = static_cast<int>(a);
  const int l = static_cast<int>(b);
  const bool wrap = k + l >= p_;
  const auto& A = action_pow_[static_cast<std::size_t>(k)];
  Element x = static_cast<Element>(wrap ? k + l - p_ : k + l);
  for (int r = i_ - 1; r >= 0; --r) {
    long acc = v[r] + (wrap ? carry_digits_[static_cast<std::size_t>(r)] : 0);
    for (int c = 0; c < i_; ++c) acc += static_cast<long>(A[static_cast<std::size_t>(r * i_ + c)]) * w[c];
    x = x * P + static_cast<Element>(acc % p_);
  }
  return x;
}

ExtensionGroup::Element ExtensionGroup::inverse(Element a) const {
  auto [v, k] = decode(a);
  if (k == 0) {
    for (auto& x : v) x = mod_p(-x, p_);
    return encode(v, 0);
  }
  // (v,k)(w,p-k) = (v + A^k w + c, 0) = 0  =>  w = A^{p-k}(-v - c)
  const auto& A = action_pow_[static_cast<std::size_t>(p_ - k)];
  std::vector<int> w(static_cast<std::size_t>(i_), 0);
  for (int r = 0; r < i_; ++r) {
    long acc = 0;
    for (int c = 0; c < i_; ++c)
      acc += static_cast<long>(A[static_cast<std::size_t>(r * i_ + c)]) *
             (-v[static_cast<std::size_t>(c)] - carry_digits_[static_cast<std::size_t>(c)]);
    w[static_cast<std::size_t>(r)] = static_cast<int>(mod_p(acc, p_));
  }
  return encode(w, p_ - k);
}

ExtensionGroup::Element ExtensionGroup::power(Element a, std::uint64_t k) const {
  Element result = identity();
  Element base = a;
  while (k > 0) {
    if (k & 1U) result = mul(result, base);
    k >>= 1U;
    if (k > 0) base = mul(base, base);
  }
  return result;
}

GroupElement commutator(const ExtensionGroup& g, GroupElement x, GroupElement y) {
  return g.mul(g.mul(x, y), g.mul(g.inverse(x), g.inverse(y)));
}

std::uint64_t element_order(const ExtensionGroup& g, GroupElement x) {
  std::uint64_t n = 1;
  GroupElement y = x;
  while (y != g.identity()) {
    y = g.mul(y, x);
    ++n;
  }
  return n;
}

void check_size_cap(const ExtensionGroup& g) {
  if (g.p() > 5 || g.length() > g.p())
    throw SizeCapExceeded("table-based group operations need p <= 5 and i <= p");
}

GroupProfile group_profile(const ExtensionGroup& g) {
  check_size_cap(g);
  GroupProfile out;
  out.order = g.order();
  const auto gens = generating_set(g);

  for (GroupElement x = 0; x < g.order(); ++x) out.exponent = std::max(out.exponent, element_order(g, x));

  for (GroupElement x = 0; x < g.order(); ++x) {
    bool central = true;
    for (auto s : gens)
      if (g.mul(x, s) != g.mul(s, x)) {
        central = false;
        break;
      }
    if (central) ++out.center_size;
  }

  const Subgroup phi = frattini(g, gens);
  out.frattini_size = phi.size();
  out.rank = log_p(out.order / out.frattini_size, g.p());

  // lower central series
  std::vector<GroupElement> current;
  for (GroupElement x = 0; x < g.order(); ++x) current.push_back(x);
  int cls = 0;
  while (current.size() > 1) {
    std::vector<GroupElement> seeds;
    for (auto x : current)
      for (auto s : gens) seeds.push_back(commutator(g, x, s));
    const Subgroup next = normal_closure(g, seeds, gens);
    ++cls;
    if (next.size() == current.size()) throw PreconditionError("group is not nilpotent");
    current = next.elements;
  }
  out.nilpotency_class = cls;
  return out;
}

std::vector<GroupElement> minimal_generators(const ExtensionGroup& g) {
  check_size_cap(g);
  const Subgroup phi = frattini(g, generating_set(g));
  Subgroup m = closure(g, phi.generators);
  std::vector<GroupElement> chosen;
  for (GroupElement x = 0; x < g.order() && m.size() < g.order(); ++x) {
    if (m.contains(x)) continue;
    chosen.push_back(x);
    extend(g, m, x);
  }
  return chosen;
}

std::optional<Isomorphism> group_isomorphic(const ExtensionGroup& g1, const ExtensionGroup& g2) {
  check_size_cap(g1);
  check_size_cap(g2);
  if (g1.order() != g2.order()) return std::nullopt;
  if (!(group_profile(g1) == group_profile(g2))) return std::nullopt;

  const auto gens = minimal_generators(g1);
  const Subgroup phi2 = frattini(g2, generating_set(g2));
  std::vector<std::vector<GroupElement>> candidates;
  for (auto s : gens) {
    const auto ord = element_order(g1, s);
    std::vector<GroupElement> c;
    for (GroupElement y = 0; y < g2.order(); ++y)
      if (!phi2.contains(y) && element_order(g2, y) == ord) c.push_back(y);
    candidates.push_back(std::move(c));
  }

  std::vector<GroupElement> images(gens.size());
  std::optional<Isomorphism> found;
  std::function<bool(std::size_t)> search = [&](std::size_t k) -> bool {
    if (k == gens.size()) {
      const auto map = extend_hom(g1, g2, gens, images);
      if (!map) return false;
      std::vector<char> hit(g2.order(), 0);
      for (auto y : *map) {
        if (hit[y]) return false;
        hit[y] = 1;
      }
      found = Isomorphism{gens, images};
      return true;
    }
    for (auto y : candidates[k]) {
      images[k] = y;
      if (search(k + 1)) return true;
    }
    return false;
  };
  search(0);
  return found;
}

GSurjection list_g_surjections(int i, int e, int j, int e2, int p) {
  if (p < 3 || !is_prime(p)) throw InvalidParameter("p must be an odd prime");
  if (i < 1 || i > p || j < 1 || j > p) throw InvalidParameter("lengths must lie in [1, p]");
  (void)e;
  GSurjection out;
  if (i > j && mod_p(e2, p) == 0) {
    out.exists = true;
    out.kernel_size = 1;
    for (int m = j; m < i; ++m) out.kernel_size *= static_cast<std::uint64_t>(p);
    out.kernel = "A_" + std::to_string(j) + "/A_" + std::to_string(i);
  } else {
    out.kernel = "none";
  }
  return out;
}

GSurjection search_g_surjections(int i, int e, int j, int e2, int p) {
  const ExtensionGroup g1 = ExtensionGroup::bie(p, i, e);
  const ExtensionGroup g2 = ExtensionGroup::bie(p, j, e2);
  check_size_cap(g1);
  check_size_cap(g2);
  GSurjection out;
  out.kernel = "none";
  const std::vector<GroupElement> gens{g1.tau0(), g1.sigma_lift()};
  GroupElement module_size = 1;
  for (int m = 0; m < j; ++m) module_size *= static_cast<GroupElement>(p);

  for (GroupElement u = 0; u < module_size; ++u) {
    for (GroupElement w = 0; w < module_size; ++w) {
      const std::vector<GroupElement> images{u, w + module_size};  // (u,0), (w,1)
      const auto map = extend_hom(g1, g2, gens, images);
      if (!map) continue;
      std::vector<char> hit(g2.order(), 0);
      std::uint64_t image_size = 0;
      std::uint64_t kernel_size = 0;
      bool kernel_ok = true;
      for (GroupElement x = 0; x < g1.order(); ++x) {
        const auto y = (*map)[x];
        if (!hit[y]) {
          hit[y] = 1;
          ++image_size;
        }
        if (y == g2.identity()) {
          ++kernel_size;
          const auto [v, k] = g1.decode(x);
          if (k != 0) kernel_ok = false;
          for (int m = 0; m < j && m < i; ++m)
            if (v[static_cast<std::size_t>(m)] != 0) kernel_ok = false;
        }
      }
      if (image_size != g2.order() || kernel_size <= 1) continue;
      out.exists = true;
      out.kernel_size = kernel_size;
      out.kernel = kernel_ok ? "A_" + std::to_string(j) + "/A_" + std::to_string(i) : "other";
      out.witness = std::make_pair(u, w + module_size);
      return out;
    }
  }
  return out;
}

}  // namespace galembed
