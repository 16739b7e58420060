// galembed: command-line front end.  Every command prints one JSON report;
// exit code 0 = success/solvable, 1 = unsolvable (solve, norm, verify),
// 2 = invalid input.

#include "galembed/descent.hpp"
#include "galembed/element_io.hpp"
#include "galembed/embed.hpp"
#include "galembed/errors.hpp"
#include "galembed/kummer.hpp"
#include "galembed/pgroup.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

using namespace galembed;
using Json = nlohmann::ordered_json;

namespace {

struct Job {
  std::string arena = "R";
  int p = 3;
  std::int64_t q = 7;
  std::string gamma;
  std::string f;
  std::string beta;
  std::string b;
  int i = 2;
  int j = 1;
  std::string kind = "split";
  std::vector<std::string> classes;
  int e = 0;
  bool profile = false;
  std::vector<int> iso_with;
  std::vector<int> surjection;
  std::int64_t q0 = 5;
  std::string gamma0;
  std::string out;
  std::string file;
  bool timings = false;
};

struct Outcome {
  Json report;
  int code = 0;
};

// Rejections name the option that caused them.
class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

FieldElement element(const std::string& field, const std::string& text, const Arena& arena) {
  if (text.empty()) throw FieldError("--" + field + ": missing element");
  try {
    return parse_element(text, arena);
  } catch (const std::exception& ex) {
    throw FieldError("--" + field + ": " + ex.what());
  }
}

Arena make_arena(const Job& job) {
  Variant v;
  try {
    v = parse_variant(job.arena);
  } catch (const std::exception& ex) {
    throw FieldError(std::string("--arena: ") + ex.what());
  }
  try {
    return Arena({job.p, v, job.q});
  } catch (const std::exception& ex) {
    throw FieldError(std::string("--p/--q: ") + ex.what());
  }
}

Json arena_json(const Arena& a) { return Json{{"variant", variant_name(a.variant())}, {"p", a.p()}, {"q", a.q()}}; }

Json vec_json(const FpVector& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

Json mat_json(const FpMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vec_json(m.row(r).transpose()));
  return out;
}

Json opt_element(const std::optional<FieldElement>& x, const Arena& a) {
  return x ? Json(render(*x, a)) : Json(nullptr);
}

Json group_json(const std::optional<GroupLabel>& g) {
  if (!g) return nullptr;
  return Json{{"i", g->i}, {"e_label", to_string(g->e)}};
}

Json verify_json(const VerifyReport& v) {
  Json checks = Json::array();
  for (const auto& c : v.checks)
    checks.push_back(
        {{"name", c.name}, {"status", c.skipped ? "skipped" : (c.passed ? "pass" : "fail")}, {"detail", c.detail}});
  return Json{{"ok", v.ok}, {"checks", checks}};
}

Json solve_json(const SolveReport& r, const Arena& a) {
  Json tower = Json::array();
  for (const auto& x : r.tower) tower.push_back(render(x, a));
  Json out;
  out["verdict"] = r.solvable ? "solvable" : "unsolvable";
  out["branch"] = r.branch;
  out["omega"] = opt_element(r.omega, a);
  out["e_twist"] = r.e_twist ? Json(*r.e_twist) : Json(nullptr);
  out["beta"] = opt_element(r.beta, a);
  out["tower"] = tower;
  out["group"] = group_json(r.group);
  out["obstruction"] = r.solvable ? Json(nullptr) : Json(r.obstruction);
  out["certificate"] = r.certificate ? vec_json(*r.certificate) : Json(nullptr);
  out["basis"] = r.basis_labels;
  return out;
}

std::string element_string(const ExtensionGroup& g, GroupElement x) {
  const auto [v, k] = g.decode(x);
  std::ostringstream os;
  os << "((";
  for (std::size_t m = 0; m < v.size(); ++m) os << (m ? "," : "") << v[m];
  os << ")," << k << ")";
  return os.str();
}

Json profile_json(const GroupProfile& pr) {
  return Json{{"order", pr.order},       {"exponent", pr.exponent},
              {"center", pr.center_size}, {"frattini", pr.frattini_size},
              {"class", pr.nilpotency_class}, {"rank", pr.rank}};
}

EmbeddingProblem problem(const Job& job, const Arena& a) {
  Kind kind;
  try {
    kind = parse_kind(job.kind);
  } catch (const std::exception& ex) {
    throw FieldError(std::string("--kind: ") + ex.what());
  }
  return {a, element("gamma", job.gamma, a), job.i, job.j, kind};
}

Json problem_json(const Job& job, const EmbeddingProblem& prob) {
  return Json{{"gamma", render(prob.gamma, prob.arena)},
              {"i", prob.i},
              {"j", prob.j},
              {"kind", kind_name(prob.kind)},
              {"f", job.f.empty() ? "1" : render(element("f", job.f, prob.arena), prob.arena)}};
}

Outcome cmd_solve(const Job& job) {
  const Arena a = make_arena(job);
  const EmbeddingProblem prob = problem(job, a);
  std::optional<FieldElement> f;
  if (!job.f.empty()) f = element("f", job.f, a);
  const SolveReport r = solve(prob, f);
  Outcome o;
  o.report["command"] = "solve";
  o.report["arena"] = arena_json(a);
  o.report["problem"] = problem_json(job, prob);
  o.report.update(solve_json(r, a));
  o.report["verify"] = r.solvable ? verify_json(verify_solution(prob, r)) : Json(nullptr);
  o.code = r.solvable ? 0 : 1;
  return o;
}

Outcome cmd_verify(const Job& job) {
  const Arena a = make_arena(job);
  const EmbeddingProblem prob = problem(job, a);
  SolveReport r;
  r.solvable = true;
  r.beta = element("beta", job.beta, a);
  const VerifyReport v = verify_solution(prob, r);
  Outcome o;
  o.report["command"] = "verify";
  o.report["arena"] = arena_json(a);
  o.report["problem"] = problem_json(job, prob);
  o.report["beta"] = render(*r.beta, a);
  o.report["verify"] = verify_json(v);
  o.code = v.ok ? 0 : 1;
  return o;
}

Outcome cmd_group(const Job& job) {
  const ExtensionGroup g = ExtensionGroup::bie(job.p, job.i, job.e);
  Outcome o;
  o.report["command"] = "group";
  o.report["p"] = job.p;
  o.report["i"] = job.i;
  o.report["e"] = mod_p(job.e, job.p);
  o.report["order"] = g.order();
  if (job.profile) o.report["profile"] = profile_json(group_profile(g));
  if (!job.iso_with.empty()) {
    if (job.iso_with.size() != 2) throw FieldError("--iso-with: expects I E");
    const ExtensionGroup h = ExtensionGroup::bie(job.p, job.iso_with[0], job.iso_with[1]);
    const auto iso = group_isomorphic(g, h);
    Json w = nullptr;
    if (iso) {
      w = Json::array();
      for (std::size_t k = 0; k < iso->domain_generators.size(); ++k)
        w.push_back({{"generator", element_string(g, iso->domain_generators[k])},
                     {"image", element_string(h, iso->images[k])}});
    }
    o.report["isomorphism"] = {{"with", {{"i", job.iso_with[0]}, {"e", mod_p(job.iso_with[1], job.p)}}},
                               {"isomorphic", iso.has_value()},
                               {"witness", w}};
  }
  if (!job.surjection.empty()) {
    if (job.surjection.size() != 2) throw FieldError("--surjection: expects J E2");
    const int j = job.surjection[0];
    const int e2 = job.surjection[1];
    const GSurjection pred = list_g_surjections(job.i, job.e, j, e2, job.p);
    const GSurjection found = search_g_surjections(job.i, job.e, j, e2, job.p);
    Json w = nullptr;
    if (found.witness) {
      const ExtensionGroup h = ExtensionGroup::bie(job.p, j, e2);
      w = {{"tau0", element_string(h, found.witness->first)}, {"sigma", element_string(h, found.witness->second)}};
    }
    o.report["surjection"] = {{"to", {{"j", j}, {"e", mod_p(e2, job.p)}}},
                              {"predicted", pred.exists},
                              {"found", found.exists},
                              {"kernel", found.exists ? Json(found.kernel) : Json(nullptr)},
                              {"kernel_size", found.exists ? Json(found.kernel_size) : Json(nullptr)},
                              {"witness", w}};
  }
  return o;
}

Json class_entry(const SupportSpace& space, const FieldElement& x) {
  const FpVector c = class_of(space, x);
  const ClassProfile pr = class_profile(space, c);
  Json out{{"element", render(x, *space.arena)},
           {"class", render_class(space, c)},
           {"length", pr.length},
           {"index", pr.index ? Json(*pr.index) : Json(nullptr)}};
  if (pr.length > 0) {
    const GroupLabel g = identify_galois_group(space, c);
    out["group"] = group_json(g);
  } else {
    out["group"] = nullptr;
  }
  return out;
}

Outcome cmd_profile(const Job& job) {
  const Arena a = make_arena(job);
  const FieldElement x = element("gamma", job.gamma, a);
  const SupportSpace space = closure_space(a, {x});
  Outcome o;
  o.report["command"] = "profile";
  o.report["arena"] = arena_json(a);
  o.report["basis"] = space.labels();
  o.report["sigma"] = mat_json(space.module.sigma);
  o.report.update(class_entry(space, x));
  return o;
}

Outcome cmd_decompose(const Job& job) {
  const Arena a = make_arena(job);
  if (job.classes.empty()) throw FieldError("--classes: no elements given");
  std::vector<FieldElement> xs;
  for (const auto& s : job.classes) xs.push_back(element("classes", s, a));
  const SupportSpace space = closure_space(a, xs);
  std::vector<KummerClass> cs;
  Json inputs = Json::array();
  for (const auto& x : xs) {
    cs.push_back(class_of(space, x));
    inputs.push_back(class_entry(space, x));
  }
  Json blocks = Json::array();
  for (const auto& b : decompose_classes(space, cs))
    blocks.push_back({{"generator", render_class(space, b.generator)}, {"length", b.length}});
  Outcome o;
  o.report["command"] = "decompose";
  o.report["arena"] = arena_json(a);
  o.report["basis"] = space.labels();
  o.report["inputs"] = inputs;
  o.report["blocks"] = blocks;
  return o;
}

Outcome cmd_norm(const Job& job) {
  const Arena a = make_arena(job);
  const FieldElement b = element("b", job.b, a);
  if (!a.in_base(b)) throw FieldError("--b: element is not in the base field F");
  const auto w = solve_norm_equation(a, b);
  Outcome o;
  o.report["command"] = "norm";
  o.report["arena"] = arena_json(a);
  o.report["b"] = render(b, a);
  o.report["verdict"] = w ? "solvable" : "unsolvable";
  o.report["omega"] = opt_element(w, a);
  o.report["norm_check"] = w ? Json(a.norm(*w) == b) : Json(nullptr);
  o.code = w ? 0 : 1;
  return o;
}

Outcome cmd_extend(const Job& job) {
  const Arena a = make_arena(job);
  const FieldElement g = element("gamma", job.gamma, a);
  const FieldElement g2 = extend_class(a, g);
  const SupportSpace space = closure_space(a, {g, g2});
  Outcome o;
  o.report["command"] = "extend";
  o.report["arena"] = arena_json(a);
  o.report["gamma"] = class_entry(space, g);
  o.report["gamma_prime"] = class_entry(space, g2);
  o.report["rho2_gamma_prime"] = render_class(space, rho_apply(space, class_of(space, g2), 2));
  o.report["rho_gamma"] = render_class(space, rho_apply(space, class_of(space, g), 1));
  return o;
}

Outcome cmd_chain(const Job& job) {
  const Arena a = make_arena(job);
  const FieldElement g = element("gamma", job.gamma, a);
  const ChainReport c = main_theorem_chain(a, g);
  Json rows = Json::array();
  for (const auto& r : c.rows) rows.push_back({{"i", r.i}, {"verdict", r.solvable ? "solvable" : "unsolvable"}});
  Outcome o;
  o.report["command"] = "chain";
  o.report["arena"] = arena_json(a);
  o.report["gamma"] = render(g, a);
  o.report["rows"] = rows;
  o.report["verdict"] = c.verdict ? "solvable" : "unsolvable";
  o.code = c.verdict ? 0 : 1;
  return o;
}

Outcome cmd_descend(const Job& job) {
  DescentConfig cfg;
  try {
    cfg = DescentConfig::make(job.p, job.q0);
  } catch (const std::exception& ex) {
    throw FieldError(std::string("--p/--q0: ") + ex.what());
  }
  const Arena& a = cfg.lift;
  Kind kind;
  try {
    kind = parse_kind(job.kind);
  } catch (const std::exception& ex) {
    throw FieldError(std::string("--kind: ") + ex.what());
  }
  const FieldElement g0 = element("gamma0", job.gamma0, a);
  const SupportSpace space = descent_space(cfg, {g0});
  const TransferReport tr = transfer_check(cfg, g0, job.i, job.j, kind);
  Outcome o;
  o.report["command"] = "descend";
  o.report["config"] = {{"p", cfg.p},       {"q0", cfg.q0},       {"d_eps", cfg.d_eps},
                        {"t_eig", cfg.t_eig}, {"z", cfg.z},         {"lift", arena_json(a)}};
  o.report["basis"] = space.labels();
  o.report["eps"] = mat_json(eps_matrix(cfg, space));
  o.report["T"] = mat_json(projector(cfg, space));
  o.report["gamma0"] = render(g0, a);
  o.report["gamma"] = render(tr.gamma, a);
  o.report["lift_verdict"] = tr.lift_solvable ? "solvable" : "unsolvable";
  o.report["eigen_verdict"] = tr.eigen_solvable ? "solvable" : "unsolvable";
  o.report["solve"] = solve_json(tr.report, a);
  o.report["projected_beta"] = opt_element(tr.projected_beta, a);
  o.report["agreement"] = tr.agreement;
  o.report["notes"] = tr.notes;
  o.code = tr.lift_solvable ? 0 : 1;
  return o;
}

using Handler = Outcome (*)(const Job&);

struct Parsed {
  std::unique_ptr<CLI::App> app;
  std::unique_ptr<Job> job;
  std::vector<std::pair<CLI::App*, Handler>> commands;
  CLI::App* batch = nullptr;
};

Parsed build_app() {
  Parsed ps;
  ps.app = std::make_unique<CLI::App>("Constructive Galois embedding problems with cyclic quotient of order p");
  ps.job = std::make_unique<Job>();
  CLI::App& app = *ps.app;
  Job& job = *ps.job;
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  auto arena_opts = [&job](CLI::App* c) {
    c->add_option("--arena", job.arena, "arena variant, R or C");
    c->add_option("--p", job.p, "odd prime");
    c->add_option("--q", job.q, "prime power with p | q-1");
  };
  auto problem_opts = [&job](CLI::App* c) {
    c->add_option("--gamma", job.gamma, "base datum gamma")->required();
    c->add_option("--i", job.i, "target length");
    c->add_option("--j", job.j, "base length");
    c->add_option("--kind", job.kind, "split or nonsplit");
  };
  auto common = [&job](CLI::App* c) {
    c->add_option("--out", job.out, "write the report to this file");
    c->add_flag("--timings", job.timings, "add wall-clock timings to the report");
  };

  auto* solve = app.add_subcommand("solve", "decide and solve E_{i,j} or E'_{i,j}");
  arena_opts(solve);
  problem_opts(solve);
  solve->add_option("--f", job.f, "element of F multiplying the first generator");
  common(solve);
  ps.commands.push_back({solve, cmd_solve});

  auto* verify = app.add_subcommand("verify", "check a generator beta against a problem");
  arena_opts(verify);
  problem_opts(verify);
  verify->add_option("--beta", job.beta, "generator of the solution module")->required();
  common(verify);
  ps.commands.push_back({verify, cmd_verify});

  auto* group = app.add_subcommand("group", "the group B_{i,e}");
  group->add_option("--p", job.p, "odd prime");
  group->add_option("--i", job.i, "module length");
  group->add_option("--e", job.e, "p-th power parameter");
  group->add_flag("--profile", job.profile, "order, exponent, centre, Frattini, class, rank");
  group->add_option("--iso-with", job.iso_with, "test isomorphism with B_{I,E}")->expected(2);
  group->add_option("--surjection", job.surjection, "G-surjections onto B_{J,E2}")->expected(2);
  common(group);
  ps.commands.push_back({group, cmd_group});

  auto* profile = app.add_subcommand("profile", "length, index and group of a class");
  arena_opts(profile);
  profile->add_option("--gamma", job.gamma, "element")->required();
  common(profile);
  ps.commands.push_back({profile, cmd_profile});

  auto* decompose = app.add_subcommand("decompose", "split the module spanned by classes into cyclic blocks");
  arena_opts(decompose);
  decompose->add_option("--classes", job.classes, "comma separated elements")->delimiter(',')->required();
  common(decompose);
  ps.commands.push_back({decompose, cmd_decompose});

  auto* norm = app.add_subcommand("norm", "solve N(omega) = b for b in F");
  arena_opts(norm);
  norm->add_option("--b", job.b, "element of F")->required();
  common(norm);
  ps.commands.push_back({norm, cmd_norm});

  auto* extend = app.add_subcommand("extend", "raise the length of a class of index 0 by one");
  arena_opts(extend);
  extend->add_option("--gamma", job.gamma, "element")->required();
  common(extend);
  ps.commands.push_back({extend, cmd_extend});

  auto* chain = app.add_subcommand("chain", "split verdicts of E_{i,1} for i = 2..p");
  arena_opts(chain);
  chain->add_option("--gamma", job.gamma, "element with l(M_gamma) = 1")->required();
  common(chain);
  ps.commands.push_back({chain, cmd_chain});

  auto* descend = app.add_subcommand("descend", "transfer check through the cyclotomic lift");
  descend->add_option("--p", job.p, "odd prime");
  descend->add_option("--q0", job.q0, "prime power with p not dividing q0-1");
  descend->add_option("--gamma0", job.gamma0, "element of the lifted field K")->required();
  descend->add_option("--i", job.i, "target length");
  descend->add_option("--j", job.j, "base length");
  descend->add_option("--kind", job.kind, "split or nonsplit");
  common(descend);
  ps.commands.push_back({descend, cmd_descend});

  ps.batch = app.add_subcommand("batch", "run one job per line of a file");
  ps.batch->add_option("--file", job.file, "job file")->required();
  ps.batch->add_option("--out", job.out, "write the reports to this file");
  return ps;
}

Outcome execute(Parsed& ps) {
  for (auto& [sub, handler] : ps.commands) {
    if (!sub->parsed()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = handler(*ps.job);
    } catch (const FieldError& ex) {
      return {Json{{"command", sub->get_name()}, {"error", ex.what()}}, 2};
    } catch (const std::logic_error& ex) {
      // InvalidParameter, InvalidInput, ParseError derive from invalid_argument
      if (dynamic_cast<const std::invalid_argument*>(&ex) || dynamic_cast<const std::domain_error*>(&ex) ||
          dynamic_cast<const std::length_error*>(&ex) || dynamic_cast<const std::out_of_range*>(&ex))
        return {Json{{"command", sub->get_name()}, {"error", ex.what()}}, 2};
      throw;
    }
    if (ps.job->timings) {
      const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
      o.report["timings"] = {{"total_ms", ms.count()}};
    }
    return o;
  }
  return {Json{{"error", "no command"}}, 2};
}

Outcome run_line(const std::string& line) {
  Parsed ps = build_app();
  try {
    ps.app->parse(line, false);
  } catch (const CLI::ParseError& ex) {
    return {Json{{"error", ex.what()}}, 2};
  }
  if (ps.batch->parsed()) return {Json{{"error", "batch jobs cannot nest"}}, 2};
  if (!ps.job->out.empty()) return {Json{{"error", "--out is not allowed inside a batch"}}, 2};
  return execute(ps);
}

int emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(path);
  if (!f) {
    std::cerr << "error: --out: cannot write " << path << "\n";
    return 2;
  }
  f << text;
  return 0;
}

int run_batch(const Job& job) {
  std::ifstream in(job.file);
  if (!in) {
    std::cerr << "error: --file: cannot read " << job.file << "\n";
    return 2;
  }
  std::ostringstream os;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    Outcome o = run_line(line);
    Json row{{"line", n}, {"exit", o.code}, {"report", o.report}};
    os << row.dump() << "\n";
  }
  return emit(job.out, os.str());
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* s = std::getenv("GALEMBED_SEEDLESS"); s && std::string(s) != "1" && std::string(s) != "") {
    std::cerr << "error: GALEMBED_SEEDLESS: factorization is always deterministic; only 1 is accepted\n";
    return 2;
  }
  Parsed ps = build_app();
  try {
    ps.app->parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int rc = ps.app->exit(ex);
    return rc == 0 ? 0 : 2;
  }
  if (ps.batch->parsed()) return run_batch(*ps.job);
  const Outcome o = execute(ps);
  if (o.code == 2) {
    std::cerr << "error: " << o.report.value("error", std::string("invalid input")) << "\n";
  }
  const int rc = emit(ps.job->out, o.report.dump(2) + "\n");
  return rc != 0 ? rc : o.code;
}
