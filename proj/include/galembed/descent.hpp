#pragma once

// Descent from a base without p-th roots of unity.
//
// F_0 = F_{q0}(t) with p not dividing q0 - 1; K_0 = F_{q0^p}(t) is cyclic of
// degree p over it.  Adjoining xi_p gives the arena C with q = q0^d,
// d = order of q0 mod p:  K = F_{q0^{pd}}(t) over F = F_{q0^d}(t).  The
// automorphism eps = (c -> c^{q0^p}) generates Gal(K/K_0), commutes with
// sigma, and acts on xi_p by xi_p -> xi_p^t.  The projector
//   T = z * sum_{k=1}^{d} t^{d-k} eps^{k-1},   z d t^{d-1} = 1 mod p,
// splits J = J^eps (+) J^nu into the t-eigenspace and a complement.

#include "galembed/embed.hpp"

namespace galembed {

struct DescentConfig {
  int p = 3;
  std::int64_t q0 = 5;
  int d_eps = 2;  // [F : F_0]
  Arena lift{ArenaConfig{}};  // arena C over q = q0^d_eps
  Automorphism eps;
  int t_eig = 2;
  int z = 1;

  static DescentConfig make(int p, std::int64_t q0);
};

// closure of the elements under sigma and eps
SupportSpace descent_space(const DescentConfig& cfg, const std::vector<FieldElement>& elements);

FpMatrix eps_matrix(const DescentConfig& cfg, const SupportSpace& space);
FpMatrix projector(const DescentConfig& cfg, const SupportSpace& space);

KummerClass project_eigen(const DescentConfig& cfg, const SupportSpace& space, const KummerClass& c);
// representative of T[x]
FieldElement project_element(const DescentConfig& cfg, const FieldElement& x);

struct TransferReport {
  FieldElement gamma;        // representative of T[gamma0]
  int length = 0;            // l(M_gamma)
  bool lift_solvable = false;   // over J
  bool eigen_solvable = false;  // with the witness restricted to J^eps
  SolveReport report;
  std::optional<FieldElement> projected_beta;  // representative of T[beta]
  bool agreement = false;
  std::vector<std::string> notes;
};

// Solves E_{i,j} or E'_{i,j} over the lift for the eigen-part of gamma0,
// decides the same problem inside J^eps, and re-verifies the projected
// generator.  gamma0 is an element of K.
TransferReport transfer_check(const DescentConfig& cfg, const FieldElement& gamma0, int i, int j, Kind kind);

}  // namespace galembed
