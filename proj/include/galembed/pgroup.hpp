#pragma once

// Extensions of F_p^i by G = Z/p, given by the action of the lift of the
// generator on F_p^i and the value of its p-th power.  The groups B_{i,e}
// are the case where the action is multiplication by tau on
// A/A_i = F_p[X]/(X^i) and the p-th power is e*(tau-1)^{i-1}.
//
// Elements are pairs (v, k) encoded as k*p^i + sum v_m p^m, with
//   (v, k)(w, l) = (v + A^k w + [k + l >= p] c, k + l mod p).

#include "galembed/fp.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace galembed {

class ExtensionGroup {
 public:
  using Element = std::uint32_t;

  ExtensionGroup(int p, int i, FpMatrix action, FpVector carry);
  static ExtensionGroup bie(int p, int i, int e);

  int p() const { return p_; }
  int length() const { return i_; }
  Element order() const { return order_; }
  const FpMatrix& action() const { return action_; }
  const FpVector& carry() const { return carry_; }

  Element identity() const { return 0; }
  Element mul(Element a, Element b) const;
  Element inverse(Element a) const;
  Element power(Element a, std::uint64_t k) const;

  Element encode(const std::vector<int>& v, int k) const;
  std::pair<std::vector<int>, int> decode(Element x) const;

  Element sigma_lift() const { return encode(std::vector<int>(static_cast<std::size_t>(i_), 0), 1); }
  Element tau0() const;

 private:
  int p_;
  int i_;
  Element order_;
  FpMatrix action_;
  FpVector carry_;
  std::vector<int> carry_digits_;
  std::vector<std::vector<int>> action_pow_;  // A^k, row-major
};

using GroupElement = ExtensionGroup::Element;

// Commutator x y x^-1 y^-1.
GroupElement commutator(const ExtensionGroup& g, GroupElement x, GroupElement y);
std::uint64_t element_order(const ExtensionGroup& g, GroupElement x);

struct GroupProfile {
  std::uint64_t order = 0;
  std::uint64_t exponent = 0;
  std::uint64_t center_size = 0;
  std::uint64_t frattini_size = 0;
  int nilpotency_class = 0;
  int rank = 0;  // minimal number of generators

  bool operator==(const GroupProfile&) const = default;
};

// Table-based operations are limited to p <= 5.
void check_size_cap(const ExtensionGroup& g);

GroupProfile group_profile(const ExtensionGroup& g);

// Minimal generating set: elements taken in index order whenever they are
// independent modulo the Frattini subgroup.
std::vector<GroupElement> minimal_generators(const ExtensionGroup& g);

struct Isomorphism {
  std::vector<GroupElement> domain_generators;
  std::vector<GroupElement> images;
};

// Exhaustive search over images of the minimal generators of g1, in
// lexicographic order; the first witness is returned.
std::optional<Isomorphism> group_isomorphic(const ExtensionGroup& g1, const ExtensionGroup& g2);

struct GSurjection {
  bool exists = false;
  std::uint64_t kernel_size = 0;
  std::string kernel;  // "A_j/A_i" when it exists
  // images of tau0 and sigma~ for the first witness found by search
  std::optional<std::pair<GroupElement, GroupElement>> witness;
};

// Predicted existence of a surjection B_{i,e} -> B_{j,e2} over G with
// nontrivial kernel: exactly when i > j and e2 = 0.
GSurjection list_g_surjections(int i, int e, int j, int e2, int p);

// The same question decided by searching all homomorphisms determined by
// tau0 -> (u, 0), sigma~ -> (w, 1).
GSurjection search_g_surjections(int i, int e, int j, int e2, int p);

}  // namespace galembed
