#pragma once

// Embedding problems with cyclic quotient G = Z/p.
//
// Given L, the Galois closure of K(gamma^{1/p}) with l(M_gamma) = j, the
// split problem asks for L~ ⊇ L with Gal(L~/F) = B_{i,0}, the non-split
// one for B_{i,e}, e != 0, in both cases compatibly with Gal(L/F).  Both
// reduce to linear algebra in a support space: is [gamma] (possibly
// shifted by a multiple of [xi]) in the image of rho^{p-j}?

#include "galembed/arena.hpp"
#include "galembed/kummer.hpp"

#include <optional>
#include <string>
#include <vector>

namespace galembed {

enum class Kind { Split, Nonsplit };
std::string kind_name(Kind k);
Kind parse_kind(const std::string& s);

struct EmbeddingProblem {
  Arena arena;
  FieldElement gamma;
  int i = 2;
  int j = 1;
  Kind kind = Kind::Split;
};

struct SolveReport {
  bool solvable = false;
  // "split", "part1" or "part2" (non-split with the xi twist)
  std::string branch;
  std::optional<FieldElement> omega;
  std::optional<int> e_twist;
  std::optional<FieldElement> beta;
  // beta, beta^rho, ..., beta^{rho^{i-j-1}}: L~ = L(their p-th roots)
  std::vector<FieldElement> tower;
  std::optional<GroupLabel> group;
  std::string obstruction;
  // functional on the solving space killing the image but not the target
  std::optional<FpVector> certificate;
  std::vector<std::string> basis_labels;
};

// f must lie in F; it multiplies the first tower generator.
SolveReport solve_split(const EmbeddingProblem& prob, const std::optional<FieldElement>& f = std::nullopt);
SolveReport solve_nonsplit(const EmbeddingProblem& prob, const std::optional<FieldElement>& f = std::nullopt);
SolveReport solve(const EmbeddingProblem& prob, const std::optional<FieldElement>& f = std::nullopt);

struct VerifyCheck {
  std::string name;
  bool passed = false;
  bool skipped = false;
  std::string detail;
};

struct VerifyReport {
  bool ok = false;
  std::vector<VerifyCheck> checks;
};

// Recomputes everything from beta:
//   length    l(M_beta) = i
//   index     e([beta]) = 0 (split) or != 0 (non-split), when i < p
//   contains  [gamma] lies in M_beta
//   group     the group of the tower is isomorphic to B_{i,0} or B_{i,1}
//             (table search, skipped for p > 5)
VerifyReport verify_solution(const EmbeddingProblem& prob, const SolveReport& report);

// One step of the length-raising construction: for 2 <= l(M_gamma) < p and
// e([gamma]) = 0 returns gamma' with l(M_gamma') = l(M_gamma) + 1,
// [gamma']^{rho^2} = [gamma]^rho, the same G-fixed line, and e([gamma']) = 0
// when it is defined.
FieldElement extend_class(const Arena& arena, const FieldElement& gamma);

// omega with N(omega) = b exactly, or nothing when b is not a norm.
std::optional<FieldElement> solve_norm_equation(const Arena& arena, const FieldElement& b);

struct ChainRow {
  int i = 0;
  bool solvable = false;
};

struct ChainReport {
  std::vector<ChainRow> rows;
  bool verdict = false;
};

// Split verdicts of E_{i,1}(L) for i = 2..p; l(M_gamma) must be 1.
ChainReport main_theorem_chain(const Arena& arena, const FieldElement& gamma);

}  // namespace galembed
