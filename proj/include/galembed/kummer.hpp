#pragma once

// The F_p-linear layer J = K^x / K^xp, restricted to finite sigma-stable
// windows ("support spaces").
//
// A support space has basis
//   [g]            the canonical generator of the constants of K,
//   [s]            arena R only (the class of a^{1/p}),
//   [P] ...        monic atoms, closed under sigma (and any extra
//                  automorphisms), in atom order.
// Classes are coordinate vectors in that basis; class_of and lift convert
// between field elements and classes.

#include "galembed/arena.hpp"
#include "galembed/fpg_module.hpp"
#include "galembed/pgroup.hpp"

#include <optional>
#include <string>
#include <vector>

namespace galembed {

using KummerClass = FpVector;

struct SupportSpace {
  std::shared_ptr<const Arena> arena;
  std::vector<Poly> atoms;  // basis atoms after the constant (and root) slots
  bool root_slot = false;
  FpGModule module;         // sigma acting on classes
  std::vector<Automorphism> extra;

  Eigen::Index dim() const { return module.dim(); }
  Eigen::Index atom_offset() const { return root_slot ? 2 : 1; }
  std::optional<Eigen::Index> atom_index(const Poly& atom) const;
  const std::vector<std::string>& labels() const { return module.labels; }
};

// Smallest space holding the atoms of the inputs, closed under sigma and
// the extra automorphisms, plus the constants class and [a^{1/p}].
SupportSpace closure_space(const Arena& arena, const std::vector<FieldElement>& elements,
                           const std::vector<Automorphism>& extra = {});

// Matrix of an automorphism of K on the classes of the space.
FpMatrix automorphism_matrix(const SupportSpace& space, const Automorphism& aut);

KummerClass class_of(const SupportSpace& space, const FieldElement& x);
// representative with exponents in [0, p)
FieldElement lift(const SupportSpace& space, const KummerClass& c);

KummerClass rho_apply(const SupportSpace& space, const KummerClass& c, int k);
int class_length(const SupportSpace& space, const KummerClass& c);

struct ClassProfile {
  int length = 0;
  std::optional<int> index;  // empty outside J_{p-1}
};

std::optional<int> class_index(const SupportSpace& space, const KummerClass& c);
ClassProfile class_profile(const SupportSpace& space, const KummerClass& c);

std::vector<CyclicBlock> decompose_classes(const SupportSpace& space, const std::vector<KummerClass>& classes);

enum class ELabel { Zero, Nonzero, NotApplicable };
std::string to_string(ELabel e);

struct GroupLabel {
  int i = 0;
  ELabel e = ELabel::Zero;
  bool operator==(const GroupLabel&) const = default;
};

// Group of the Galois closure of K(c^{1/p}) over F, read off length and index.
GroupLabel identify_galois_group(const SupportSpace& space, const KummerClass& c);

std::string render_class(const SupportSpace& space, const KummerClass& c);

// Gal(L/F) for L = K(theta_0, ..., theta_{i-1}), theta_k^p = beta^{rho^k},
// built from the action of a lift of sigma on the radicals.  The result is
// the extension with action C (sigma~ tau_chi sigma~^-1 = tau_{C chi}) and
// carry c (sigma~^p = tau_c), characters chi read against theta_k.
struct GaloisAction {
  std::vector<FieldElement> radicands;  // beta^{rho^k}, k = 0..i-1
  FieldElement top_root;                // (beta^{rho^i})^{1/p}
  FpMatrix action;
  FpVector carry;
};

GaloisAction galois_action(const Arena& arena, const FieldElement& beta);
ExtensionGroup abstract_galois_group(const Arena& arena, const FieldElement& beta);

}  // namespace galembed
