// Command-line front end: validation of lattice/order/space files, the
// sobrification and completion pipelines, the theorem-regression suite and
// the counterexample search.
//
// Exit codes: 0 pass, 1 usage or parse error, 2 check failure,
// 3 budget exceeded.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "lconvex/io.hpp"
#include "lconvex/theorems.hpp"

using namespace lconvex;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCheckFailed = 2;
constexpr int kExitBudget = 3;

int cmd_check_lattice(const std::string& file) {
  auto parsed = parse_lattice_file(file);  // build_lattice validates
  std::cout << "lattice " << parsed.name << " (" << parsed.lattice->size()
            << " elements, "
            << (parsed.lattice->is_frame() ? "frame" : "not a frame")
            << (parsed.lattice->is_chain() ? ", chain" : "") << ")\n";
  auto rep = verify_lattice_laws(*parsed.lattice);
  for (const auto& e : rep.entries)
    std::cout << "  " << (e.pass ? "pass " : "FAIL ") << e.law
              << (e.witness.empty() ? "" : "  witness " + e.witness) << "\n";
  return rep.all_pass() ? kExitPass : kExitCheckFailed;
}

int cmd_check_order(const std::string& file) {
  try {
    auto parsed = parse_order_file(file);
    std::cout << "order " << parsed.name << " over "
              << parsed.order.lattice().name() << " on "
              << parsed.order.size() << " points\n";
    std::cout << "  E1 reflexivity      pass\n";
    std::cout << "  E2 transitivity     pass\n";
    std::cout << "  E3 antisymmetry     pass\n";
    auto jsl = is_join_semilattice(parsed.order);
    std::cout << "  join-semilattice    " << (jsl.ok ? "yes" : "no") << "\n";
    if (!jsl.ok && jsl.witness)
      std::cout << "    subset without a supremum: "
                << jsl.witness->to_string() << "\n";
    return kExitPass;
  } catch (const OrderAxiomViolation& e) {
    std::cout << "order axioms FAIL: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}

int cmd_check_space(const std::string& file, bool closed_flag) {
  Budgets budgets;
  auto parsed = parse_space_file(file, budgets, closed_flag);
  const bool verify_only = parsed.closed;
  std::cout << "space " << parsed.name << " over "
            << parsed.space.lattice().name() << " on "
            << parsed.space.carrier().size() << " points, "
            << parsed.space.member_count() << " convex sets"
            << (verify_only ? " (declared closed, verify only)" : "")
            << "\n";
  auto rep = verify_space_axioms(parsed.space, budgets);
  for (const auto& e : rep.entries) {
    std::cout << "  " << (e.pass ? "pass " : "FAIL ") << e.axiom;
    if (!e.note.empty()) std::cout << "  (" << e.note << ")";
    if (!e.witness.empty()) std::cout << "  witness " << e.witness;
    std::cout << "\n";
  }
  return rep.all_pass() ? kExitPass : kExitCheckFailed;
}

int cmd_sobrify(const std::string& file, const std::string& report_path) {
  Budgets budgets;
  auto parsed = parse_space_file(file, budgets);
  auto res = sobrify(parsed.space, budgets);
  auto sv = is_sober(parsed.space, budgets);
  std::cout << "space " << parsed.name << ": " << parsed.space.member_count()
            << " convex sets on " << parsed.space.carrier().size()
            << " points\n";
  std::cout << "  sober: " << (sv.sober ? "yes" : "no");
  if (!sv.sober && sv.witness)
    std::cout << "  (witness " << sv.witness->to_string() << " with "
              << sv.witness_points.size() << " point matches)";
  std::cout << "\n  s0: " << (is_s0(parsed.space) ? "yes" : "no") << "\n";
  std::cout << "  X^F points: " << res.xf_points.size()
            << " (finite collapse onto cp(C(X)): "
            << (res.finite_collapse ? "yes" : "NO") << ")\n";
  std::cout << "  definitional closure: "
            << (res.definitional_ran
                    ? (res.definitional_agrees ? "agrees" : "DISAGREES")
                    : "skipped (budget)")
            << ", literal closure: "
            << (res.exhaustive_ran
                    ? (res.exhaustive_agrees ? "agrees" : "DISAGREES")
                    : "skipped (budget)")
            << "\n";
  std::cout << "  xi is a convex-homeomorphism: "
            << (is_convex_homeomorphism(res.xi, parsed.space, res.xf_space)
                    ? "yes"
                    : "no")
            << "\n";
  std::cout << "  points of X^F with provenance:\n";
  for (std::size_t i = 0; i < res.provenance.size(); ++i)
    std::cout << "    " << res.xf_space.carrier().label(int(i))
              << "  denotes " << res.provenance[i].to_string() << "\n";
  std::cout << "  xi table:\n";
  for (int i = 0; i < parsed.space.carrier().size(); ++i)
    std::cout << "    " << parsed.space.carrier().label(i) << " -> "
              << res.xf_space.carrier().label(res.xi(i)) << "\n";
  if (!report_path.empty()) {
    write_text_file(report_path,
                    sobrification_json(parsed.name, parsed.space, res, sv)
                            .dump(2) +
                        "\n");
    std::cout << "report written to " << report_path << "\n";
  }
  return kExitPass;
}

int cmd_specialize(const std::string& file, const std::string& report_path) {
  Budgets budgets;
  auto parsed = parse_space_file(file, budgets);
  if (!is_s0(parsed.space)) {
    std::cout << "space " << parsed.name
              << " is not S0; the specialization order does not exist\n";
    return kExitCheckFailed;
  }
  auto omega = specialization(parsed.space);
  std::cout << "specialization order of " << parsed.name << ":\n";
  for (int x = 0; x < omega.size(); ++x) {
    std::cout << "  ";
    for (int y = 0; y < omega.size(); ++y)
      std::cout << omega.lattice().label(omega.e(x, y)) << " ";
    std::cout << "\n";
  }
  auto jsl = is_join_semilattice(omega, budgets);
  std::cout << "join-semilattice: " << (jsl.ok ? "yes" : "no") << "\n";
  if (!report_path.empty()) {
    Json j;
    j["space"] = parsed.name;
    j["specialization"] = order_json(omega);
    j["join_semilattice"] = jsl.ok;
    write_text_file(report_path, j.dump(2) + "\n");
  }
  return kExitPass;
}

int cmd_scott(const std::string& file, const std::string& report_path) {
  Budgets budgets;
  auto parsed = parse_order_file(file);
  auto sp = scott_structure(parsed.order, budgets);
  std::cout << "Scott convex structure of " << parsed.name << ": "
            << sp.member_count() << " convex sets\n";
  for (const auto& m : sp.members())
    std::cout << "  " << m.to_string() << "\n";
  auto rep = verify_space_axioms(sp, budgets);
  std::cout << "axioms: " << (rep.all_pass() ? "pass" : "FAIL")
            << ", S0: " << (is_s0(sp) ? "yes" : "no") << "\n";
  if (!report_path.empty()) {
    Json j;
    j["order"] = parsed.name;
    j["member_count"] = sp.member_count();
    Json mem = Json::array();
    for (const auto& m : sp.members()) mem.push_back(lsubset_json(m));
    j["members"] = std::move(mem);
    j["axioms_pass"] = rep.all_pass();
    write_text_file(report_path, j.dump(2) + "\n");
  }
  return rep.all_pass() ? kExitPass : kExitCheckFailed;
}

int cmd_complete(const std::string& file, bool verify_universal,
                 const std::string& report_path) {
  Budgets budgets;
  auto parsed = parse_order_file(file);
  auto res = completion(parsed.order, budgets);
  std::cout << "join-semilattice completion of " << parsed.name << ": "
            << res.completion_order.size() << " points\n";
  std::cout << "  points with provenance (convex sets of the Scott space):\n";
  for (std::size_t i = 0; i < res.underlying.provenance.size(); ++i)
    std::cout << "    " << res.completion_order.carrier().label(int(i))
              << "  denotes " << res.underlying.provenance[i].to_string()
              << "\n";
  std::cout << "  xi table:\n";
  for (int i = 0; i < parsed.order.size(); ++i)
    std::cout << "    " << parsed.order.carrier().label(i) << " -> "
              << res.completion_order.carrier().label(res.xi(i)) << "\n";
  std::cout << "  xi Scott convexity-preserving: "
            << (res.xi_scott_cp ? "yes" : "NO") << "\n";
  std::cout << "  join-semilattice: "
            << (res.join_semilattice_skipped
                    ? "skipped (budget)"
                    : (res.join_semilattice_verified ? "verified" : "NO"))
            << "\n";
  std::cout << "  C(P^F) = sigma*(P^F): "
            << (res.families_checked
                    ? (res.families_equal ? "verified" : "NO")
                    : "skipped (budget)")
            << "\n";
  int rc = kExitPass;
  if (verify_universal) {
    const bool ok = verify_completion(parsed.order, res.completion_order,
                                      res.xi, budgets);
    std::cout << "  universal property: " << (ok ? "verified" : "FAILED")
              << "\n";
    if (!ok) rc = kExitCheckFailed;
  }
  if (!report_path.empty()) {
    write_text_file(
        report_path,
        completion_json(parsed.name, parsed.order, res).dump(2) + "\n");
    std::cout << "report written to " << report_path << "\n";
  }
  return rc;
}

int cmd_theorems(const std::string& spec_path, std::uint64_t seed,
                 const std::string& json_path, const std::string& mutate) {
  InstanceSpec spec;
  if (!spec_path.empty()) {
    std::ifstream in(spec_path);
    if (!in) throw ParseError("cannot open spec file '" + spec_path + "'");
    spec = InstanceSpec::from_json(nlohmann::json::parse(in));
  }
  spec.seed = seed;
  TheoremMatrix m;
  if (!mutate.empty()) {
    bool found = false;
    for (const auto& [mut, name] : kRegisteredMutations)
      if (name == mutate) {
        m = run_suite_mutated(spec, mut);
        found = true;
      }
    if (!found) throw ParseError("unknown mutation '" + mutate + "'");
  } else {
    m = run_suite(spec);
  }
  std::cout << m.to_text();
  if (!json_path.empty()) {
    write_text_file(json_path, m.to_json().dump(2) + "\n");
    std::cout << "report written to " << json_path << "\n";
  }
  return m.all_pass() ? kExitPass : kExitCheckFailed;
}

int cmd_search(const std::string& target, std::uint64_t seed,
               int max_carrier, const std::string& json_path) {
  InstanceSpec spec;
  spec.seed = seed;
  spec.max_carrier = max_carrier;
  auto rep = search_counterexamples(target, spec);
  std::cout << rep.to_text();
  if (!json_path.empty())
    write_text_file(json_path, rep.to_json().dump(2) + "\n");
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite lattice-valued convexity toolkit"};
  app.require_subcommand(1);

  std::string file, report, spec_path, json_path, mutate, target;
  bool closed = false, verify_universal = false;
  std::uint64_t seed = 1;
  int max_carrier = 3;

  auto* cl = app.add_subcommand("check-lattice",
                                "validate a lattice file and its laws");
  cl->add_option("file", file)->required();

  auto* co = app.add_subcommand("check-order",
                                "validate an order file against E1-E3");
  co->add_option("file", file)->required();

  auto* cs =
      app.add_subcommand("check-space", "validate or close a space file");
  cs->add_option("file", file)->required();
  cs->add_flag("--closed", closed,
               "treat the listed family as complete and only verify");

  auto* so = app.add_subcommand("sobrify", "compute X^F, xi and verdicts");
  so->add_option("file", file)->required();
  so->add_option("--report", report, "write the structured report here");

  auto* sp = app.add_subcommand("specialize",
                                "specialization order of an S0 space");
  sp->add_option("file", file)->required();
  sp->add_option("--report", report);

  auto* sc =
      app.add_subcommand("scott", "Scott convex structure of an order");
  sc->add_option("file", file)->required();
  sc->add_option("--report", report);

  auto* cm = app.add_subcommand("complete",
                                "join-semilattice completion of an order");
  cm->add_option("file", file)->required();
  cm->add_flag("--verify-universal", verify_universal,
               "also verify the universal property");
  cm->add_option("--report", report);

  auto* th = app.add_subcommand("theorems", "run the regression matrix");
  th->add_option("--spec", spec_path, "instance spec (JSON)");
  th->add_option("--seed", seed);
  th->add_option("--json", json_path, "write the matrix as JSON");
  th->add_option("--mutate", mutate,
                 "run with a deliberate fault (expects failures)");

  auto* se = app.add_subcommand("search", "stream counterexample hunting");
  se->add_option("target", target,
                 "scott-inclusion | all-sober | polytope-compact")
      ->required();
  se->add_option("--seed", seed);
  se->add_option("--max-carrier", max_carrier);
  se->add_option("--json", json_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (cl->parsed()) return cmd_check_lattice(file);
    if (co->parsed()) return cmd_check_order(file);
    if (cs->parsed()) return cmd_check_space(file, closed);
    if (so->parsed()) return cmd_sobrify(file, report);
    if (sp->parsed()) return cmd_specialize(file, report);
    if (sc->parsed()) return cmd_scott(file, report);
    if (cm->parsed()) return cmd_complete(file, verify_universal, report);
    if (th->parsed()) return cmd_theorems(spec_path, seed, json_path, mutate);
    if (se->parsed()) return cmd_search(target, seed, max_carrier, json_path);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const OrderAxiomViolation& e) {
    std::cerr << "order axiom violation: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const Error& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}
