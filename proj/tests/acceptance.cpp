// Acceptance suite: one PASS/FAIL line per criterion, each with its runtime
// bound.  Every criterion also appends what it computed to a transcript; the
// last criterion reruns the others and the CLI and compares bytes.

#include "galembed/descent.hpp"
#include "galembed/element_io.hpp"
#include "galembed/embed.hpp"
#include "galembed/fpg_module.hpp"
#include "galembed/pgroup.hpp"
#include "support.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>

using namespace galembed;
using testsupport::random_base_element;
using testsupport::random_element;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

// everything a run computes, for the determinism comparison
std::ostringstream transcript;

// unsolvable verdicts met in criteria 5-7, rechecked by exhaustive search in 9
struct Unsolved {
  Arena arena;
  FieldElement target;
  int k;             // rho exponent
  bool twisted;      // any nonzero multiple of [xi] may be subtracted
  std::string what;
};
std::vector<Unsolved> unsolved;

const Arena& r7() {
  static const Arena a({3, Variant::R, 7});
  return a;
}

const Arena& c7() {
  static const Arena a({3, Variant::C, 7});
  return a;
}

FieldElement el(const std::string& s, const Arena& a = r7()) { return parse_element(s, a); }

void note_report(const std::string& tag, const SolveReport& r, const Arena& a) {
  transcript << tag << ": " << (r.solvable ? "solvable" : "unsolvable") << " " << r.branch;
  if (r.beta) transcript << " beta=" << render(*r.beta, a);
  for (const auto& g : r.tower) transcript << " | " << render(g, a);
  transcript << " " << r.obstruction << "\n";
}

SolveReport solve_noted(const EmbeddingProblem& prob, const std::string& tag) {
  const SolveReport r = solve(prob);
  note_report(tag, r, prob.arena);
  if (!r.solvable) {
    const bool twisted = r.branch == "part2";
    unsolved.push_back({prob.arena, prob.gamma, prob.arena.p() - prob.j, twisted, tag});
  }
  return r;
}

// ---------------------------------------------------------------------------

void criterion1() {
  using GA = GroupAlgebraElement;
  for (int p : {3, 5, 7, 11, 13}) {
    expect(GA::rho(p).pow(static_cast<std::uint64_t>(p - 1)) == GA(p, std::vector<FpScalar>(static_cast<std::size_t>(p), 1)),
           "rho^{p-1} is not the norm element at p=" + std::to_string(p));
    std::vector<FpScalar> c(static_cast<std::size_t>(p), 0);
    for (int k = 0; k <= p - 2; ++k) c[static_cast<std::size_t>(k)] = p - 1 - k;
    expect(GA::rho(p).pow(static_cast<std::uint64_t>(p - 2)) == GA(p, c), "rho^{p-2} identity fails at p=" + std::to_string(p));
    transcript << "ga p=" << p << " ok\n";
  }
}

void criterion2() {
  for (int i = 1; i <= 3; ++i) {
    for (int e = 0; e < 3; ++e) {
      const auto pr = group_profile(ExtensionGroup::bie(3, i, e));
      std::uint64_t order = 3, phi = 1;
      for (int k = 0; k < i; ++k) order *= 3;
      for (int k = 0; k < i - 1; ++k) phi *= 3;
      expect(pr.order == order, "order of B_{" + std::to_string(i) + "," + std::to_string(e) + "}");
      // B_{1,e}, e != 0, is cyclic of order p^2 and has Frattini subgroup of order p
      if (i >= 2 || e == 0) expect(pr.frattini_size == phi, "Frattini size of B_{" + std::to_string(i) + "," + std::to_string(e) + "}");
      transcript << "B" << i << e << " " << pr.order << " " << pr.exponent << " " << pr.center_size << " "
                 << pr.frattini_size << " " << pr.nilpotency_class << " " << pr.rank << "\n";
    }
  }
  const auto heis = group_profile(ExtensionGroup::bie(3, 2, 0));
  expect(heis.exponent == 3 && heis.center_size == 3, "B_{2,0} is not Heisenberg-like");
  for (int i1 = 1; i1 <= 3; ++i1)
    for (int e1 = 0; e1 < 3; ++e1)
      for (int i2 = 1; i2 <= 3; ++i2)
        for (int e2 = 0; e2 < 3; ++e2) {
          const bool expected = i1 == i2 && (i1 == 3 || (e1 == 0) == (e2 == 0));
          const bool got = group_isomorphic(ExtensionGroup::bie(3, i1, e1), ExtensionGroup::bie(3, i2, e2)).has_value();
          expect(got == expected, "isomorphism B_{" + std::to_string(i1) + "," + std::to_string(e1) + "} vs B_{" +
                                      std::to_string(i2) + "," + std::to_string(e2) + "}");
          transcript << got;
        }
  transcript << "\n";
}

void criterion3() {
  for (int i = 1; i <= 3; ++i)
    for (int e = 0; e < 3; ++e)
      for (int j = 1; j <= 3; ++j)
        for (int e2 = 0; e2 < 3; ++e2) {
          const auto s = search_g_surjections(i, e, j, e2, 3);
          const std::string tag = std::to_string(i) + std::to_string(e) + "->" + std::to_string(j) + std::to_string(e2);
          expect(s.exists == (i > j && e2 == 0), "surjection existence " + tag);
          if (s.exists) {
            std::uint64_t k = 1;
            for (int m = 0; m < i - j; ++m) k *= 3;
            expect(s.kernel_size == k, "kernel size " + tag);
          }
          transcript << tag << " " << s.exists << " " << s.kernel_size << "\n";
        }
}

void criterion4() {
  const Arena& a = r7();
  const auto sp = closure_space(a, {el("(s+1)*(s^2+2)*(t-1)*(t-2)")});
  const auto ps = class_profile(sp, class_of(sp, el("s")));
  const auto pt = class_profile(sp, class_of(sp, el("t-1")));
  const auto p6 = class_profile(sp, class_of(sp, el("s+6")));
  expect(ps.index == 1, "e([s]) != 1");
  expect(pt.index == 0, "e([t-1]) != 0");
  expect(ps.length == 2, "l(M_s) != 2");
  expect(p6.length == 3, "l(M_{s+6}) != 3");
  expect(a.norm(el("s+6")) == el("t-1"), "N(s+6) != t-1");
  std::mt19937 rng(4);
  auto rnd = [&] {
    KummerClass c(sp.dim());
    for (Eigen::Index k = 0; k < c.size(); ++k) c(k) = testsupport::uniform(rng, 0, 2);
    return c;
  };
  int pairs = 0;
  while (pairs < 100) {
    const KummerClass x = rnd(), y = rnd();
    const auto ex = class_index(sp, x), ey = class_index(sp, y);
    if (!ex || !ey) continue;
    ++pairs;
    const auto exy = class_index(sp, reduce((x + y).eval(), 3));
    expect(exy && *exy == mod_p(*ex + *ey, 3), "e not additive");
    transcript << *ex << *ey << *exy;
  }
  for (int n = 0; n < 100; ++n) {
    const KummerClass c = rho_apply(sp, rnd(), 1);
    if (class_length(sp, c) > 2) continue;  // rho c outside J_{p-1}
    expect(class_index(sp, c) == 0, "e(rho c) != 0");
  }
  transcript << "\n";
}

void criterion5() {
  const Arena& a = r7();
  auto r = solve_noted({a, el("t-1"), 2, 1, Kind::Split}, "E21(t-1)");
  expect(r.solvable && *r.omega == el("s+6"), "E21(t-1) omega");
  expect(r.tower.size() == 1 && r.tower[0] == el("2*(s+3)/(s+6)"), "E21(t-1) tower");
  expect(group_isomorphic(abstract_galois_group(a, r.tower[0]), ExtensionGroup::bie(3, 2, 0)).has_value(),
         "E21(t-1) Galois table is not B_{2,0}");
  expect(verify_solution({a, el("t-1"), 2, 1, Kind::Split}, r).ok, "E21(t-1) verify");

  r = solve_noted({a, el("t-1"), 3, 1, Kind::Split}, "E31(t-1)");
  expect(r.solvable && r.tower == std::vector<FieldElement>{el("s+6"), el("2*(s+3)/(s+6)")}, "E31(t-1) tower");
  expect(r.group && *r.group == GroupLabel{3, ELabel::NotApplicable}, "E31(t-1) label");
  expect(group_isomorphic(abstract_galois_group(a, *r.beta), ExtensionGroup::bie(3, 3, 0)).has_value(), "E31 group");
  expect(verify_solution({a, el("t-1"), 3, 1, Kind::Split}, r).ok, "E31(t-1) verify");

  r = solve_noted({a, el("2*(t-1)"), 2, 1, Kind::Split}, "E21(2(t-1))");
  expect(!r.solvable && r.certificate.has_value(), "E21(2(t-1)) should be unsolvable with a certificate");
}

void criterion6() {
  const Arena& a = r7();
  auto r = solve_noted({a, el("2*(t-1)"), 2, 1, Kind::Nonsplit}, "E'21(2(t-1))");
  expect(r.solvable && r.branch == "part2" && r.e_twist == 1, "E'21(2(t-1)) part 2 with e=1");
  expect(*r.beta == el("2*s*(s+3)/(s+6)"), "E'21(2(t-1)) beta");
  expect(r.group && *r.group == GroupLabel{2, ELabel::Nonzero}, "E'21 label");
  expect(group_isomorphic(abstract_galois_group(a, *r.beta), ExtensionGroup::bie(3, 2, 1)).has_value(), "E'21 group");

  r = solve_noted({a, el("t-1"), 3, 1, Kind::Nonsplit}, "E'31(t-1)");
  expect(r.solvable && r.branch == "part1" && *r.beta == el("s*(s+6)"), "E'31(t-1) part 1, beta = s(s+6)");
  r = solve_noted({a, el("2*(t-1)"), 3, 1, Kind::Nonsplit}, "E'31(2(t-1))");
  expect(!r.solvable, "E'31(2(t-1)) should be unsolvable");

  // Upsilon = 1 in C: a constant class of nonzero index
  const Arena& c = c7();
  const auto& F = *c.field();
  std::optional<std::int64_t> witness;
  for (std::int64_t k = 0; k < F.size() - 1 && !witness; ++k) {
    const auto e = c.index(c.constant(F.exp(k)));
    if (e && *e != 0) witness = k;
  }
  expect(witness.has_value() && c.upsilon() == 1, "no constant of nonzero index in C");
  transcript << "C witness g^" << *witness << "\n";

  std::mt19937 rng(6);
  int n = 0, yes = 0;
  while (n < 20) {
    FieldElement g = c.norm(random_element(c, rng, 2, 1));
    if (testsupport::uniform(rng, 0, 2) == 0) g = g * random_base_element(c, rng, 1);
    const auto sp = closure_space(c, {g});
    if (class_length(sp, class_of(sp, g)) != 1) continue;
    ++n;
    const auto split = solve_noted({c, g, 2, 1, Kind::Split}, "C split " + render(g, c));
    const auto ns = solve_noted({c, g, 2, 1, Kind::Nonsplit}, "C nonsplit " + render(g, c));
    expect(ns.branch == "part1", "C nonsplit did not route through part 1");
    expect(ns.solvable == split.solvable, "C nonsplit and split verdicts differ for " + render(g, c));
    if (ns.solvable) expect(verify_solution({c, g, 2, 1, Kind::Nonsplit}, ns).ok, "C nonsplit verify");
    yes += ns.solvable;
  }
  expect(yes > 0 && yes < 20, "C sample lacks solvable or unsolvable instances");
}

void criterion7() {
  const Arena& a = r7();
  std::mt19937 rng(7);
  int n = 0;
  while (n < 50) {
    const FieldElement g = random_base_element(a, rng, 3);
    const auto sp = closure_space(a, {g});
    if (class_length(sp, class_of(sp, g)) != 1) continue;
    ++n;
    const auto r2 = solve_noted({a, g, 2, 1, Kind::Split}, "A2 " + render(g, a));
    const auto r3 = solve_noted({a, g, 3, 1, Kind::Split}, "A3 " + render(g, a));
    expect(r2.solvable == r3.solvable, "E_2 and E_3 disagree on " + render(g, a));
  }

  auto norm_case = [&](const FieldElement& b, const std::string& tag) {
    const auto w = solve_norm_equation(a, b);
    const auto sp = closure_space(a, {b});
    const bool in_image = in_column_space(sp.module.rho_pow(2), class_of(sp, b), 3);
    expect(w.has_value() == in_image, "norm verdict differs from [b] in image(rho^2) for " + tag);
    if (w) expect(a.norm(*w) == b, "N(omega) != b for " + tag);
    else unsolved.push_back({a, b, 2, false, "norm " + tag});
    transcript << "norm " << tag << " " << (w ? render(*w, a) : "none") << "\n";
    return w;
  };
  auto w = norm_case(el("t-1"), "t-1");
  expect(w && *w == el("s+6"), "N(omega) = t-1 should give s+6");
  w = norm_case(el("t"), "t");
  expect(w && *w == el("s"), "N(omega) = t should give s");
  expect(!norm_case(el("2"), "2"), "2 should not be a norm");
  for (int k = 0; k < 30; ++k) {
    const FieldElement b = k % 2 ? a.norm(random_element(a, rng)) : random_base_element(a, rng);
    norm_case(b, render(b, a));
  }
}

void criterion8() {
  const Arena& a = r7();
  std::mt19937 rng(8);
  int done = 0;
  for (int n = 0; n < 1000 && done < 50; ++n) {
    const FieldElement g = random_base_element(a, rng) * a.rho(random_element(a, rng, 2, 2));
    auto sp = closure_space(a, {g});
    if (class_length(sp, class_of(sp, g)) != 2) continue;
    expect(class_index(sp, class_of(sp, g)) == 0, "sampled class has nonzero index");
    ++done;
    const FieldElement g2 = extend_class(a, g);
    sp = closure_space(a, {g, g2});
    const KummerClass c = class_of(sp, g), c2 = class_of(sp, g2);
    expect(class_length(sp, c2) == 3, "l(M_gamma') != 3 for " + render(g, a));
    expect(rho_apply(sp, c2, 2) == rho_apply(sp, c, 1), "[gamma']^{rho^2} != [gamma]^rho for " + render(g, a));
    FpMatrix lines(sp.dim(), 2);
    lines.col(0) = rho_apply(sp, c, 1);
    lines.col(1) = rho_apply(sp, c2, 2);
    expect(rank(lines, 3) == 1, "fixed lines differ for " + render(g, a));
    transcript << render(g, a) << " -> " << render(g2, a) << "\n";
  }
  expect(done == 50, "could not sample 50 eligible classes");
}

void criterion9() {
  expect(!unsolved.empty(), "no unsolvable verdicts were collected");
  for (const auto& u : unsolved) {
    const int p = u.arena.p();
    const auto sp = closure_space(u.arena, {u.target});
    const FpMatrix m = sp.module.rho_pow(u.k);
    const KummerClass g = class_of(sp, u.target);
    bool found = false;
    if (u.twisted) {
      const KummerClass xi = class_of(sp, u.arena.constant(u.arena.xi()));
      for (int e = 1; e < p && !found; ++e) found = testsupport::brute_force_solvable(m, reduce((g - e * xi).eval(), p), p);
    } else {
      found = testsupport::brute_force_solvable(m, g, p);
    }
    expect(!found, "exhaustive search solves " + u.what);
    transcript << "oracle " << u.what << " dim " << sp.dim() << "\n";
  }
}

void criterion10() {
  const auto cfg = DescentConfig::make(3, 5);
  const Arena& a = cfg.lift;
  std::mt19937 rng(10);
  auto linear = [&] { return a.from_poly(Poly({testsupport::uniform(rng, 0, a.field()->size() - 1), 1})); };
  for (int n = 0; n < 5; ++n) {
    const auto sp = descent_space(cfg, {linear() * linear(), linear()});
    const FpMatrix e = eps_matrix(cfg, sp);
    const FpMatrix t = projector(cfg, sp);
    expect(t == reduce((2 * identity(sp.dim()) + e).eval(), 3), "T != 2 id + eps");
    expect(mul_mod(t, t, 3) == t, "T is not idempotent");
    expect(mul_mod(t, sp.module.sigma, 3) == mul_mod(sp.module.sigma, t, 3), "T does not commute with sigma");
    for (int k = 0; k < 20; ++k) {
      KummerClass c(sp.dim());
      for (Eigen::Index r = 0; r < c.size(); ++r) c(r) = testsupport::uniform(rng, 0, 2);
      if (class_length(sp, c) > 2) continue;
      const KummerClass rest = reduce((c - mul_mod(t, c, 3)).eval(), 3);
      expect(class_index(sp, rest) == 0, "e((id - T) c) != 0");
    }
  }
  int agree = 0;
  for (int n = 0; n < 20; ++n) {
    // norms N(t - w) for random constants w, and every fourth time the constant generator
    const FieldElement g0 = n % 4 == 3 ? a.constant(a.field()->generator()) : a.norm(linear());
    const auto r = transfer_check(cfg, g0, n % 2 ? 3 : 2, 1, n % 3 ? Kind::Split : Kind::Nonsplit);
    expect(r.agreement, "transfer disagreement on " + render(g0, a));
    if (n % 4 == 3) expect(!r.lift_solvable && !r.eigen_solvable, "constant generator should be unsolvable");
    else expect(r.lift_solvable, "norm should be solvable: " + render(g0, a));
    agree += r.agreement;
    transcript << render(r.gamma, a) << " " << r.lift_solvable << r.eigen_solvable
               << (r.projected_beta ? " " + render(*r.projected_beta, a) : std::string()) << "\n";
  }
  expect(agree == 20, "agreement below 20/20");
}

struct Criterion {
  int number;
  double bound_s;
  std::function<void()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> cs{
      {1, 1, criterion1},   {2, 10, criterion2}, {3, 30, criterion3}, {4, 5, criterion4},  {5, 10, criterion5},
      {6, 30, criterion6},  {7, 10, criterion7}, {8, 10, criterion8}, {9, 60, criterion9}, {10, 30, criterion10},
  };
  return cs;
}

// runs criteria 1-10; returns the number of failures
int run_all(bool print) {
  int failures = 0;
  unsolved.clear();
  for (const auto& c : criteria()) {
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = error.empty() && secs < c.bound_s;
    if (!error.empty() && secs >= c.bound_s) error += "; ";
    if (secs >= c.bound_s) error += "runtime bound exceeded";
    failures += !ok;
    if (print) {
      char line[160];
      std::snprintf(line, sizeof line, "criterion %d: %s (%.3f s, bound %g s)", c.number, ok ? "PASS" : "FAIL", secs,
                    c.bound_s);
      std::cout << line;
      if (!ok) std::cout << " -- " << error;
      std::cout << std::endl;
    }
  }
  return failures;
}

std::string cli_output(const std::string& args) {
  const std::string cmd = "env GALEMBED_SEEDLESS=1 " GALEMBED_CLI_PATH " " + args + " 2>&1";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw Failure("cannot run the CLI");
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  out += "exit " + std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1) + "\n";
  return out;
}

std::string cli_reports() {
  const std::string r7 = "--arena R --p 3 --q 7 ";
  std::string all;
  for (const std::string& args : std::vector<std::string>{
           "solve " + r7 + "--gamma '(s^3+6)' --i 2 --j 1",
           "solve " + r7 + "--gamma '2*(s^3+6)' --i 2 --j 1",
           "solve " + r7 + "--gamma '2*(t-1)' --i 2 --j 1 --kind nonsplit",
           "solve " + r7 + "--gamma 't-1' --i 3 --j 1 --kind nonsplit",
           "group --p 3 --i 2 --e 1 --profile",
           "group --p 3 --i 2 --e 1 --iso-with 2 2",
           "decompose " + r7 + "--classes 's+6,t-1,3'",
           "norm " + r7 + "--b 't-1'",
           "chain " + r7 + "--gamma 3",
           "extend " + r7 + "--gamma '2*(s+3)/(s+6)'",
           std::string("descend --p 3 --q0 5 --gamma0 'z*(t-1)' --i 2 --j 1"),
       })
    all += cli_output(args);
  return all;
}

}  // namespace

int main() {
  int failures = run_all(true);
  const std::string first = transcript.str();

  const auto start = std::chrono::steady_clock::now();
  std::string error;
  try {
    const std::string cli_first = cli_reports();
    transcript.str("");
    if (run_all(false) != 0) error = "second run had failures";
    if (transcript.str() != first) error = "library reports differ between runs";
    if (cli_reports() != cli_first) error = "CLI reports differ between runs";
  } catch (const std::exception& e) {
    error = e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char line[160];
  std::snprintf(line, sizeof line, "criterion 11: %s (%.3f s, %zu transcript bytes)", error.empty() ? "PASS" : "FAIL",
                secs, first.size());
  std::cout << line;
  if (!error.empty()) std::cout << " -- " << error;
  std::cout << std::endl;
  failures += !error.empty();
  return failures == 0 ? 0 : 1;
}
