#include "galembed/descent.hpp"

#include "galembed/errors.hpp"

namespace galembed {

namespace {

bool same_aut(const Automorphism& a, const Automorphism& b) { return a.frob == b.frob && a.scale == b.scale; }

void check_eps_closed(const DescentConfig& cfg, const SupportSpace& space) {
  for (const auto& aut : space.extra)
    if (same_aut(aut, cfg.eps)) return;
  throw InvalidInput("support space is not closed under eps");
}

}  // namespace

DescentConfig DescentConfig::make(int p, std::int64_t q0) {
  if (p < 3 || !is_prime(p)) throw InvalidParameter("p must be an odd prime");
  std::int64_t ell = 0;
  int k0 = 0;
  prime_power(q0, ell, k0);
  if (ell == p) throw InvalidParameter("q0 must be prime to p");
  if ((q0 - 1) % p == 0) throw InvalidParameter("descent needs p not dividing q0 - 1");

  DescentConfig cfg;
  cfg.p = p;
  cfg.q0 = q0;
  cfg.d_eps = 1;
  std::int64_t r = q0 % p;
  std::int64_t q = q0;
  while (r != 1) {
    r = r * (q0 % p) % p;
    q *= q0;
    ++cfg.d_eps;
  }
  if (cfg.d_eps > 4) throw InvalidParameter("descent degree above 4 is not supported");
  cfg.lift = Arena({p, Variant::C, q});
  cfg.eps = {k0 * p, 1};
  cfg.t_eig = static_cast<int>(pow_mod(q0 % p, static_cast<std::uint64_t>(p), p));
  const auto denom = mod_p(cfg.d_eps * pow_mod(cfg.t_eig, static_cast<std::uint64_t>(cfg.d_eps - 1), p), p);
  cfg.z = static_cast<int>(inv_mod(denom, p));
  return cfg;
}

SupportSpace descent_space(const DescentConfig& cfg, const std::vector<FieldElement>& elements) {
  return closure_space(cfg.lift, elements, {cfg.eps});
}

FpMatrix eps_matrix(const DescentConfig& cfg, const SupportSpace& space) {
  check_eps_closed(cfg, space);
  return automorphism_matrix(space, cfg.eps);
}

FpMatrix projector(const DescentConfig& cfg, const SupportSpace& space) {
  const int p = cfg.p;
  const FpMatrix e = eps_matrix(cfg, space);
  FpMatrix sum = FpMatrix::Zero(space.dim(), space.dim());
  FpMatrix epow = identity(space.dim());
  for (int k = 1; k <= cfg.d_eps; ++k) {
    const auto coef = pow_mod(cfg.t_eig, static_cast<std::uint64_t>(cfg.d_eps - k), p);
    sum = reduce((sum + coef * epow).eval(), p);
    epow = mul_mod(epow, e, p);
  }
  return reduce((cfg.z * sum).eval(), p);
}

KummerClass project_eigen(const DescentConfig& cfg, const SupportSpace& space, const KummerClass& c) {
  return mul_mod(projector(cfg, space), c, cfg.p);
}

FieldElement project_element(const DescentConfig& cfg, const FieldElement& x) {
  const SupportSpace space = descent_space(cfg, {x});
  return lift(space, project_eigen(cfg, space, class_of(space, x)));
}

TransferReport transfer_check(const DescentConfig& cfg, const FieldElement& gamma0, int i, int j, Kind kind) {
  const int p = cfg.p;
  const Arena& arena = cfg.lift;
  TransferReport out;
  out.gamma = project_element(cfg, gamma0);

  const SupportSpace gs = descent_space(cfg, {gamma0});
  const FpVector g = class_of(gs, out.gamma);
  out.length = class_length(gs, g);
  if (out.length != j)
    throw PreconditionError("eigen-part of gamma0 has length " + std::to_string(out.length) + ", expected j=" +
                            std::to_string(j));

  const EmbeddingProblem prob{arena, out.gamma, i, j, kind};
  out.report = solve(prob);
  out.lift_solvable = out.report.solvable;

  // Over the lift Upsilon = 1, so both kinds need [gamma] in rho^{p-j}(J);
  // over K_0 the witness may be taken in J^eps.
  const FpMatrix t = projector(cfg, gs);
  const FpMatrix m = mul_mod(gs.module.rho_pow(p - j), t, p);
  out.eigen_solvable = in_column_space(m, g, p);

  bool ok = out.lift_solvable == out.eigen_solvable;
  if (!ok) out.notes.push_back("verdicts over J and J^eps differ");

  if (out.lift_solvable) {
    const SupportSpace bs = descent_space(cfg, {*out.report.beta, out.gamma});
    const FpVector b = class_of(bs, *out.report.beta);
    const FpVector d = project_eigen(cfg, bs, b);
    out.projected_beta = lift(bs, d);
    const FpVector gb = class_of(bs, out.gamma);

    if (reduce((rho_apply(bs, d, i - j) - gb).eval(), p) != FpVector::Zero(bs.dim())) {
      ok = false;
      out.notes.push_back("rho^{i-j} T[beta] != [gamma]");
    }
    if (class_length(bs, d) != i) {
      ok = false;
      out.notes.push_back("T[beta] has the wrong length");
    }
    if (mul_mod(eps_matrix(cfg, bs), d, p) != reduce((cfg.t_eig * d).eval(), p)) {
      ok = false;
      out.notes.push_back("T[beta] is not an eps-eigenvector");
    }
    if (i < p && class_index(bs, d) != class_index(bs, b)) {
      ok = false;
      out.notes.push_back("projection changed the index");
    }
    SolveReport projected = out.report;
    projected.beta = out.projected_beta;
    const VerifyReport v = verify_solution(prob, projected);
    if (!v.ok) {
      ok = false;
      out.notes.push_back("projected generator fails verification");
    }
  }
  out.agreement = ok;
  return out;
}

}  // namespace galembed
