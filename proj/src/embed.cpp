#include "galembed/embed.hpp"

#include "galembed/errors.hpp"
#include "galembed/pgroup.hpp"

#include <sstream>

namespace galembed {

namespace {

void check_problem(const EmbeddingProblem& prob) {
  const int p = prob.arena.p();
  if (prob.j < 1 || prob.i <= prob.j || prob.i > p)
    throw InvalidParameter("need 1 <= j < i <= p, got i=" + std::to_string(prob.i) + " j=" + std::to_string(prob.j));
}

FieldElement check_f(const Arena& arena, const std::optional<FieldElement>& f) {
  if (!f) return arena.one();
  if (!arena.in_base(*f)) throw InvalidInput("f must lie in the base field F");
  return *f;
}

// The solving space for gamma, after checking l(M_gamma) = j.
SupportSpace gamma_space(const EmbeddingProblem& prob) {
  SupportSpace space = closure_space(prob.arena, {prob.gamma});
  const int l = class_length(space, class_of(space, prob.gamma));
  if (l != prob.j)
    throw PreconditionError("gamma generates a module of length " + std::to_string(l) + ", expected j=" +
                            std::to_string(prob.j));
  return space;
}

std::vector<FieldElement> tower_of(const Arena& arena, const FieldElement& beta, int count) {
  std::vector<FieldElement> out{beta};
  for (int k = 1; k < count; ++k) out.push_back(arena.rho(out.back()));
  return out;
}

GroupLabel label_of(const Arena& arena, const FieldElement& beta) {
  const SupportSpace space = closure_space(arena, {beta});
  return identify_galois_group(space, class_of(space, beta));
}

std::string rho_name(int k) { return "image(rho^" + std::to_string(k) + ")"; }

// Explains why target is not in the image of m.
void obstruct(SolveReport& r, const SupportSpace& space, const FpMatrix& m, const FpVector& target, int k) {
  const int p = space.module.p;
  r.solvable = false;
  if (m.row(0).isZero() && mod_p(target(0), p) != 0) {
    FpVector constant_part = FpVector::Zero(target.size());
    constant_part(0) = target(0);
    r.obstruction = "constant component " + render_class(space, constant_part) + " not in " + rho_name(k);
    FpVector e0 = FpVector::Zero(target.size());
    e0(0) = 1;
    r.certificate = e0;
    return;
  }
  r.obstruction = "class " + render_class(space, target) + " not in " + rho_name(k);
  r.certificate = separating_functional(m, target, p);
}

SolveReport finish(const Arena& arena, SolveReport r, const FieldElement& beta, int count) {
  r.solvable = true;
  r.beta = beta;
  r.tower = tower_of(arena, beta, count);
  r.group = label_of(arena, beta);
  return r;
}

}  // namespace

std::string kind_name(Kind k) { return k == Kind::Split ? "split" : "nonsplit"; }

Kind parse_kind(const std::string& s) {
  if (s == "split") return Kind::Split;
  if (s == "nonsplit") return Kind::Nonsplit;
  throw InvalidParameter("kind must be split or nonsplit, got '" + s + "'");
}

SolveReport solve_split(const EmbeddingProblem& prob, const std::optional<FieldElement>& f_in) {
  check_problem(prob);
  const Arena& arena = prob.arena;
  const FieldElement f = check_f(arena, f_in);
  const int p = arena.p();
  const SupportSpace space = gamma_space(prob);

  SolveReport r;
  r.branch = "split";
  r.basis_labels = space.labels();
  const FpMatrix m = space.module.rho_pow(p - prob.j);
  const FpVector target = class_of(space, prob.gamma);
  const auto x = solve(m, target, p);
  if (!x) {
    obstruct(r, space, m, target, p - prob.j);
    return r;
  }
  r.omega = lift(space, *x);
  const FieldElement beta = f * arena.rho(*r.omega, p - prob.i);
  return finish(arena, std::move(r), beta, prob.i - prob.j);
}

SolveReport solve_nonsplit(const EmbeddingProblem& prob, const std::optional<FieldElement>& f_in) {
  check_problem(prob);
  const Arena& arena = prob.arena;
  const FieldElement f = check_f(arena, f_in);
  const int p = arena.p();
  const SupportSpace space = gamma_space(prob);
  const FpMatrix m = space.module.rho_pow(p - prob.j);
  const FpVector target = class_of(space, prob.gamma);

  SolveReport r;
  r.basis_labels = space.labels();

  if (prob.i > prob.j + 1 - arena.upsilon() || prob.j == p - 1) {
    r.branch = "part1";
    const auto x = solve(m, target, p);
    if (!x) {
      obstruct(r, space, m, target, p - prob.j);
      return r;
    }
    r.omega = lift(space, *x);
    // For i = p, j = p-1 the two kinds are the same problem, and alpha = s
    // would add rho[s] = [xi] to the bottom of the module.
    const FieldElement alpha = (prob.i == p && prob.j == p - 1) ? arena.one() : arena.alpha();
    const FieldElement beta = f * alpha * arena.rho(*r.omega, p - prob.i);
    return finish(arena, std::move(r), beta, prob.i - prob.j);
  }

  // no xi-free element of nonzero index: twist by a^{e/p}
  r.branch = "part2";
  const FpVector xi_class = class_of(space, arena.constant(arena.xi()));
  for (int e = 1; e < p; ++e) {
    const FpVector shifted = reduce((target - e * xi_class).eval(), p);
    const auto x = solve(m, shifted, p);
    if (!x) continue;
    r.omega = lift(space, *x);
    r.e_twist = e;
    const FieldElement beta = f * arena.a_root().pow(e) * arena.rho(*r.omega, p - prob.j - 1);
    return finish(arena, std::move(r), beta, prob.i - prob.j);
  }
  r.solvable = false;
  FpMatrix aug(m.rows(), m.cols() + 1);
  aug << m, xi_class;
  r.certificate = separating_functional(aug, target, p);
  if (r.certificate) {
    r.obstruction = "class " + render_class(space, target) + " not in " + rho_name(p - prob.j) + " + span[xi]";
  } else {
    r.obstruction = "class " + render_class(space, target) + " lies in " + rho_name(p - prob.j) +
                    " only with zero xi-twist";
  }
  return r;
}

SolveReport solve(const EmbeddingProblem& prob, const std::optional<FieldElement>& f) {
  return prob.kind == Kind::Split ? solve_split(prob, f) : solve_nonsplit(prob, f);
}

VerifyReport verify_solution(const EmbeddingProblem& prob, const SolveReport& report) {
  if (!report.solvable || !report.beta) throw InvalidInput("only solvable reports can be verified");
  const Arena& arena = prob.arena;
  const int p = arena.p();
  const FieldElement& beta = *report.beta;
  VerifyReport out;

  const SupportSpace space = closure_space(arena, {beta, prob.gamma});
  const FpVector b = class_of(space, beta);
  const int l = class_length(space, b);
  out.checks.push_back({"length", l == prob.i, false, "l(M_beta) = " + std::to_string(l)});

  {
    VerifyCheck c{"index", true, false, ""};
    if (prob.i == p) {
      c.skipped = true;
      c.detail = "i = p, index not defined";
    } else if (l > p - 1) {
      c.passed = false;
      c.detail = "beta outside J_{p-1}";
    } else {
      const auto e = class_index(space, b);
      c.detail = "e([beta]) = " + (e ? std::to_string(*e) : std::string("undefined"));
      c.passed = e && (prob.kind == Kind::Split ? *e == 0 : *e != 0);
    }
    out.checks.push_back(c);
  }

  {
    FpMatrix span(space.dim(), std::max(l, 1));
    FpVector v = b;
    for (int k = 0; k < span.cols(); ++k) {
      span.col(k) = v;
      v = rho_apply(space, v, 1);
    }
    const bool inside = in_column_space(span, class_of(space, prob.gamma), p);
    out.checks.push_back({"contains", inside, false, inside ? "[gamma] in M_beta" : "[gamma] not in M_beta"});
  }

  {
    VerifyCheck c{"group", false, false, ""};
    const int expected_e = (prob.kind == Kind::Split || prob.i == p) ? 0 : 1;
    const std::string target = "B_{" + std::to_string(prob.i) + "," + std::to_string(expected_e) + "}";
    if (p > 5) {
      c.skipped = true;
      c.passed = true;
      c.detail = "table search needs p <= 5";
    } else {
      try {
        const ExtensionGroup g = abstract_galois_group(arena, beta);
        const ExtensionGroup want = ExtensionGroup::bie(p, prob.i, expected_e);
        c.passed = g.length() == prob.i && group_isomorphic(g, want).has_value();
        c.detail = c.passed ? "isomorphic to " + target : "not isomorphic to " + target;
      } catch (const std::exception& ex) {
        c.detail = ex.what();
      }
    }
    out.checks.push_back(c);
  }

  out.ok = true;
  for (const auto& c : out.checks) out.ok = out.ok && c.passed;
  return out;
}

FieldElement extend_class(const Arena& arena, const FieldElement& gamma) {
  const int p = arena.p();
  const SupportSpace space = closure_space(arena, {gamma});
  const FpVector g = class_of(space, gamma);
  const int l = class_length(space, g);
  if (l < 2 || l >= p) throw PreconditionError("extend_class needs 2 <= l(M_gamma) < p, got " + std::to_string(l));
  const auto e = class_index(space, g);
  if (!e || *e != 0) throw PreconditionError("extend_class needs e([gamma]) = 0");

  const auto [s, f] = arena.decompose_F_class(arena.norm(gamma));
  if (s != 0) throw PreconditionError("norm of gamma is not a p-th power in F");
  const FieldElement omega = arena.hilbert90(gamma / f);

  int t = 0;
  if (l < p - 1) {
    const SupportSpace ws = closure_space(arena, {omega});
    t = *class_index(ws, class_of(ws, omega));
  }
  const FieldElement out = omega / arena.a_root().pow(t);

  // the four properties of the construction
  const SupportSpace both = closure_space(arena, {gamma, out});
  const FpVector gb = class_of(both, gamma);
  const FpVector ob = class_of(both, out);
  const int lo = class_length(both, ob);
  if (lo != l + 1) throw std::logic_error("extend_class: length did not grow by one");
  if (reduce((rho_apply(both, ob, 2) - rho_apply(both, gb, 1)).eval(), p) != FpVector::Zero(both.dim()))
    throw std::logic_error("extend_class: rho^2 [gamma'] != rho [gamma]");
  if (!in_column_space(rho_apply(both, ob, lo - 1), rho_apply(both, gb, l - 1), p))
    throw std::logic_error("extend_class: fixed lines differ");
  if (lo < p) {
    const auto eo = class_index(both, ob);
    if (!eo || *eo != 0) throw std::logic_error("extend_class: index of gamma' is nonzero");
  }
  return out;
}

std::optional<FieldElement> solve_norm_equation(const Arena& arena, const FieldElement& b) {
  if (!arena.in_base(b)) throw InvalidInput("b must lie in the base field F");
  const int p = arena.p();
  const SupportSpace space = closure_space(arena, {b});
  const auto x = solve(space.module.rho_pow(p - 1), class_of(space, b), p);
  if (!x) return std::nullopt;
  const FieldElement alpha = lift(space, *x);
  const auto [s, f] = arena.decompose_F_class(arena.norm(alpha) / b);
  const FieldElement omega = alpha / (arena.a_root().pow(s) * f);
  if (!(arena.norm(omega) == b)) throw std::logic_error("solve_norm_equation: N(omega) != b");
  return omega;
}

ChainReport main_theorem_chain(const Arena& arena, const FieldElement& gamma) {
  ChainReport out;
  for (int i = 2; i <= arena.p(); ++i) {
    const SolveReport r = solve_split({arena, gamma, i, 1, Kind::Split});
    out.rows.push_back({i, r.solvable});
  }
  out.verdict = out.rows.front().solvable;
  for (const auto& row : out.rows)
    if (row.solvable != out.verdict) throw std::logic_error("split verdicts depend on i");
  return out;
}

}  // namespace galembed
