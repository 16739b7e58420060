#include "galembed/kummer.hpp"

#include "galembed/element_io.hpp"
#include "galembed/errors.hpp"

#include <deque>
#include <set>
#include <sstream>

namespace galembed {

namespace {

// An automorphism of K applied to the radicals theta_k, in the normal form
// theta_k -> kappa_k * prod_l theta_l^{E_kl}, restricting to sigma^m on K.
struct RadicalMap {
  int m = 0;
  std::vector<FieldElement> kappa;
  std::vector<std::vector<long>> E;
};

RadicalMap compose(const Arena& arena, const std::vector<FieldElement>& beta, const RadicalMap& phi,
                   const RadicalMap& psi) {
  const int p = arena.p();
  const std::size_t i = beta.size();
  RadicalMap out;
  out.m = (phi.m + psi.m) % p;
  out.E.assign(i, std::vector<long>(i, 0));
  for (std::size_t k = 0; k < i; ++k) {
    FieldElement kappa = arena.sigma(psi.kappa[k], phi.m);
    std::vector<long> exps(i, 0);
    for (std::size_t l = 0; l < i; ++l) {
      const long a = psi.E[k][l];
      if (a == 0) continue;
      kappa = kappa * phi.kappa[l].pow(a);
      for (std::size_t r = 0; r < i; ++r) exps[r] += a * phi.E[l][r];
    }
    for (std::size_t r = 0; r < i; ++r) {
      const long q = exps[r] >= 0 ? exps[r] / p : -((-exps[r] + p - 1) / p);
      out.E[k][r] = exps[r] - q * p;
      if (q != 0) kappa = kappa * beta[r].pow(q);
    }
    out.kappa.push_back(kappa);
  }
  return out;
}

}  // namespace

std::optional<Eigen::Index> SupportSpace::atom_index(const Poly& atom) const {
  auto it = std::lower_bound(atoms.begin(), atoms.end(), atom);
  if (it == atoms.end() || !(*it == atom)) return std::nullopt;
  return atom_offset() + static_cast<Eigen::Index>(it - atoms.begin());
}

SupportSpace closure_space(const Arena& arena, const std::vector<FieldElement>& elements,
                           const std::vector<Automorphism>& extra) {
  SupportSpace space;
  space.arena = std::make_shared<const Arena>(arena);
  space.root_slot = arena.variant() == Variant::R;
  space.extra = extra;

  std::vector<Automorphism> auts{arena.sigma_aut()};
  auts.insert(auts.end(), extra.begin(), extra.end());
  const GaloisField& F = *arena.field();

  std::set<Poly> found;
  std::deque<Poly> queue;
  for (const auto& x : elements)
    for (const auto& [atom, e] : x.factors())
      if (!arena.is_root_atom(atom) && found.insert(atom).second) queue.push_back(atom);
  while (!queue.empty()) {
    const Poly atom = queue.front();
    queue.pop_front();
    for (const auto& aut : auts) {
      Poly image = poly_monic(F, poly_twist(F, atom, aut.frob, aut.scale));
      if (!arena.is_root_atom(image) && found.insert(image).second) queue.push_back(std::move(image));
    }
  }
  space.atoms.assign(found.begin(), found.end());

  std::vector<std::string> labels{"[" + render_constant(F.generator(), F) + "]"};
  if (space.root_slot) labels.push_back(std::string("[") + arena.variable() + "]");
  for (const auto& atom : space.atoms) labels.push_back("[" + render_poly(atom, F, arena.variable()) + "]");
  space.module = FpGModule(arena.p(), automorphism_matrix(space, arena.sigma_aut()), labels);
  return space;
}

FpMatrix automorphism_matrix(const SupportSpace& space, const Automorphism& aut) {
  const Arena& arena = *space.arena;
  const auto n = space.atom_offset() + static_cast<Eigen::Index>(space.atoms.size());
  FpMatrix m(n, n);
  m.col(0) = class_of(space, arena.constant(arena.field()->generator()).apply(aut));
  if (space.root_slot) m.col(1) = class_of(space, arena.variable_element().apply(aut));
  for (std::size_t k = 0; k < space.atoms.size(); ++k) {
    const FieldElement atom(arena.field(), 1, {{space.atoms[k], 1}});
    m.col(space.atom_offset() + static_cast<Eigen::Index>(k)) = class_of(space, atom.apply(aut));
  }
  return m;
}

KummerClass class_of(const SupportSpace& space, const FieldElement& x) {
  const Arena& arena = *space.arena;
  const int p = arena.p();
  const auto n = space.atom_offset() + static_cast<Eigen::Index>(space.atoms.size());
  KummerClass v = KummerClass::Zero(n);
  v(0) = mod_p(arena.field()->log(x.unit()), p);
  for (const auto& [atom, e] : x.factors()) {
    if (arena.is_root_atom(atom)) {
      v(1) = mod_p(v(1) + e, p);
      continue;
    }
    const auto idx = space.atom_index(atom);
    if (!idx) {
      if (e % p == 0) continue;
      throw SupportExceeded("atom " + render_poly(atom, *arena.field(), arena.variable()) +
                            " lies outside the support space");
    }
    v(*idx) = mod_p(v(*idx) + e, p);
  }
  return v;
}

FieldElement lift(const SupportSpace& space, const KummerClass& c) {
  const Arena& arena = *space.arena;
  const int p = arena.p();
  if (c.size() != space.dim()) throw InvalidInput("class dimension does not match the support space");
  std::map<Poly, long> f;
  if (space.root_slot && mod_p(c(1), p) != 0) f[Poly::x()] = mod_p(c(1), p);
  for (std::size_t k = 0; k < space.atoms.size(); ++k) {
    const auto e = mod_p(c(space.atom_offset() + static_cast<Eigen::Index>(k)), p);
    if (e != 0) f[space.atoms[k]] = e;
  }
  return FieldElement(arena.field(), arena.field()->exp(mod_p(c(0), p)), std::move(f));
}

KummerClass rho_apply(const SupportSpace& space, const KummerClass& c, int k) {
  if (k < 0) throw InvalidInput("rho exponent must be nonnegative");
  return mul_mod(space.module.rho_pow(k), c, space.module.p);
}

int class_length(const SupportSpace& space, const KummerClass& c) { return module_length(space.module, c); }

std::optional<int> class_index(const SupportSpace& space, const KummerClass& c) {
  if (class_length(space, c) > space.module.p - 1) return std::nullopt;
  return space.arena->index(lift(space, c));
}

ClassProfile class_profile(const SupportSpace& space, const KummerClass& c) {
  return {class_length(space, c), class_index(space, c)};
}

std::vector<CyclicBlock> decompose_classes(const SupportSpace& space, const std::vector<KummerClass>& classes) {
  // the sigma-stable span of the classes
  std::vector<FpVector> span;
  for (const auto& c : classes) {
    FpVector v = reduce(c, space.module.p);
    while (!v.isZero()) {
      span.push_back(v);
      v = rho_apply(space, v, 1);
    }
  }
  return module_decompose(space.module, span);
}

std::string to_string(ELabel e) {
  switch (e) {
    case ELabel::Zero:
      return "0";
    case ELabel::Nonzero:
      return "nonzero";
    case ELabel::NotApplicable:
      return "n/a";
  }
  return "?";
}

GroupLabel identify_galois_group(const SupportSpace& space, const KummerClass& c) {
  const int i = class_length(space, c);
  if (i == 0) throw InvalidInput("the zero class generates no extension");
  if (i == space.module.p) return {i, ELabel::NotApplicable};
  const auto e = class_index(space, c);
  return {i, *e == 0 ? ELabel::Zero : ELabel::Nonzero};
}

std::string render_class(const SupportSpace& space, const KummerClass& c) {
  std::ostringstream os;
  bool first = true;
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    const auto v = mod_p(c(k), space.module.p);
    if (v == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (v != 1) os << v << "*";
    os << space.labels()[static_cast<std::size_t>(k)];
  }
  if (first) os << "0";
  return os.str();
}

GaloisAction galois_action(const Arena& arena, const FieldElement& beta) {
  const int p = arena.p();
  std::vector<FieldElement> radicands{beta};
  std::optional<FieldElement> top;
  for (int k = 1; k <= p; ++k) {
    const FieldElement next = arena.rho(radicands.back());
    top = arena.pth_root(next);
    if (top) break;
    radicands.push_back(next);
  }
  if (!top) throw PreconditionError("beta generates a module longer than p");
  // the classes of the radicands must be independent
  {
    const SupportSpace space = closure_space(arena, {beta});
    if (class_length(space, class_of(space, beta)) != static_cast<int>(radicands.size()))
      throw PreconditionError("beta is a p-th power or its radicands are dependent");
  }
  const auto i = radicands.size();

  RadicalMap sigma_lift;
  sigma_lift.m = 1;
  sigma_lift.E.assign(i, std::vector<long>(i, 0));
  for (std::size_t k = 0; k < i; ++k) {
    sigma_lift.kappa.push_back(k + 1 < i ? arena.one() : *top);
    sigma_lift.E[k][k] = 1;
    if (k + 1 < i) sigma_lift.E[k][k + 1] = 1;
  }
  auto character = [&](std::size_t l) {
    RadicalMap tau;
    tau.E.assign(i, std::vector<long>(i, 0));
    for (std::size_t k = 0; k < i; ++k) {
      tau.kappa.push_back(k == l ? arena.constant(arena.xi()) : arena.one());
      tau.E[k][k] = 1;
    }
    return tau;
  };

  const auto n = static_cast<Eigen::Index>(i);
  FpMatrix E(n, n);
  for (std::size_t r = 0; r < i; ++r)
    for (std::size_t c = 0; c < i; ++c) E(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = sigma_lift.E[r][c];

  GaloisAction out{radicands, *top, FpMatrix(n, n), FpVector(n)};
  for (std::size_t l = 0; l < i; ++l) {
    const RadicalMap conj = compose(arena, radicands, sigma_lift, character(l));
    FpVector d(n);
    for (std::size_t k = 0; k < i; ++k) {
      const FieldElement ratio = conj.kappa[k] / sigma_lift.kappa[k];
      if (!ratio.is_constant() || conj.E[k] != sigma_lift.E[k])
        throw PreconditionError("conjugated character is not a character");
      d(static_cast<Eigen::Index>(k)) = arena.xi_exponent(ratio.unit());
    }
    const auto chi = solve(E, d, p);
    if (!chi) throw PreconditionError("sigma lift exponent matrix is singular");
    out.action.col(static_cast<Eigen::Index>(l)) = *chi;
  }

  RadicalMap power = sigma_lift;
  for (int k = 1; k < p; ++k) power = compose(arena, radicands, sigma_lift, power);
  for (std::size_t k = 0; k < i; ++k) {
    for (std::size_t r = 0; r < i; ++r)
      if (power.E[k][r] != (k == r ? 1 : 0)) throw PreconditionError("sigma lift to the p does not fix K-radicals");
    if (!power.kappa[k].is_constant()) throw PreconditionError("sigma lift to the p is not a character");
    out.carry(static_cast<Eigen::Index>(k)) = arena.xi_exponent(power.kappa[k].unit());
  }
  return out;
}

ExtensionGroup abstract_galois_group(const Arena& arena, const FieldElement& beta) {
  const GaloisAction g = galois_action(arena, beta);
  return ExtensionGroup(arena.p(), static_cast<int>(g.radicands.size()), g.action, g.carry);
}

}  // namespace galembed
