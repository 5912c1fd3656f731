#pragma once

#include <json.hpp>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lconvex/generate.hpp"
#include "lconvex/scott.hpp"

namespace lconvex {

/// Configuration of one suite run: which lattices, how large the carriers,
/// the seed for every sampled tier, and the budgets.
struct InstanceSpec {
  std::vector<std::string> lattices = {"bool", "godel3", "lukasiewicz3"};
  int max_carrier = 3;
  int max_order_carrier = 3;
  std::uint64_t seed = 1;
  int samples = 50;
  Budgets budgets;

  static InstanceSpec from_json(const nlohmann::json& j) {
    InstanceSpec s;
    if (j.contains("lattices"))
      s.lattices = j["lattices"].get<std::vector<std::string>>();
    if (j.contains("max_carrier")) s.max_carrier = j["max_carrier"];
    if (j.contains("max_order_carrier"))
      s.max_order_carrier = j["max_order_carrier"];
    if (j.contains("seed")) s.seed = j["seed"];
    if (j.contains("samples")) s.samples = j["samples"];
    if (j.contains("budgets")) {
      const auto& b = j["budgets"];
      if (b.contains("family_cap")) s.budgets.family_cap = b["family_cap"];
      if (b.contains("scan_cap")) s.budgets.scan_cap = b["scan_cap"];
      if (b.contains("scott_cap")) s.budgets.scott_cap = b["scott_cap"];
      if (b.contains("directed_probe"))
        s.budgets.directed_probe = b["directed_probe"];
      if (b.contains("finite_probe"))
        s.budgets.finite_probe = b["finite_probe"];
    }
    return s;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["lattices"] = lattices;
    j["max_carrier"] = max_carrier;
    j["max_order_carrier"] = max_order_carrier;
    j["seed"] = seed;
    j["samples"] = samples;
    j["budgets"] = {{"family_cap", budgets.family_cap},
                    {"scan_cap", budgets.scan_cap},
                    {"scott_cap", budgets.scott_cap},
                    {"directed_probe", budgets.directed_probe},
                    {"finite_probe", budgets.finite_probe}};
    return j;
  }
};

enum class Verdict { Pass, Fail, Skipped };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "Pass";
    case Verdict::Fail: return "Fail";
    default: return "Skipped";
  }
}

struct CheckResult {
  std::string id;
  std::string statement;
  /// True when the check leans on the finite-instance collapse (finite
  /// directed families contain their maximum) rather than testing the
  /// statement literally as written.
  bool finite_scale_note = false;
  long cases = 0;
  long skipped = 0;
  bool failed = false;
  std::string witness;
  std::string skip_note;  // the first exceeded budget, when any skip happened
  Verdict verdict = Verdict::Skipped;

  void fail(const std::string& w) {
    failed = true;
    if (witness.empty()) witness = w;
  }
  void skip(const std::string& why) {
    ++skipped;
    if (skip_note.empty()) skip_note = why;
  }
};

struct RegistryEntry {
  const char* id;
  const char* statement;
  bool finite_scale_note;
};

/// One check per statement in scope; ids are stable and the set is pinned
/// by a meta-test.
inline const std::vector<RegistryEntry>& check_registry() {
  static const std::vector<RegistryEntry> reg = {
      {"Lemma-2.1", "residuation laws (1)-(6), subsets included", false},
      {"Ex-L-orders", "e_L and sub are L-orders", false},
      {"Lemma-zadeh", "Zadeh images are monotone and adjoint", false},
      {"Rem-lower-upper", "down-sets are lower, up-sets are upper", false},
      {"Rem-sup-unique", "suprema and infima are unique when they exist",
       false},
      {"Def-convex-axioms", "generated families satisfy C1-C4", true},
      {"Lemma-pn-co", "hull laws: scaling, monotonicity, sub-collapse",
       false},
      {"Lemma-cp-hull-char",
       "convexity preservation iff the hull-image inequality", false},
      {"Rem-finite-subsets",
       "every L-subset is finite at finite scale; bounded directed oracle",
       true},
      {"Def-sober-oracle",
       "sobriety fast path equals the definitional oracle", false},
      {"Rem-polytope-compact",
       "polytopes = compact convex sets = nonempty members", true},
      {"Lemma-phi", "phi laws (1)-(5) on the compact family", false},
      {"Prop-cp-sober", "Cp(C(X)) is sober; phi(K) is the point hull", false},
      {"Def-F-closure",
       "F-closure iteration equals the intersection of F-closed supersets",
       false},
      {"Prop-fcon",
       "cp maps transport hull witnesses, are F-continuous, and agree on "
       "F-closures",
       false},
      {"Prop-xf-sober", "X^F is sober; its three closure routes agree", true},
      {"Prop-sober-iso",
       "xi is cp; sober iff xi is a convex-homeomorphism; pullback identity",
       false},
      {"Lemma-Fclosed-transfer",
       "F-closed subsets of X^F are F-closed in Cp(C(X))", false},
      {"Thm-sobrification",
       "the universal extension exists, commutes and is unique", false},
      {"Prop-spec-co",
       "specialization meet formula equals the point-hull formula", false},
      {"Prop-xf-spec-order", "the order of Cp and X^F is sub", false},
      {"Prop-scott-structure",
       "sigma* is an S0 convex structure recovering the order", false},
      {"Prop-scott-cp-equiv",
       "Scott cp maps = cp maps between the sigma* spaces", false},
      {"Prop-sober-omega-join",
       "sober spaces have join-semilattice specialization with hull suprema",
       false},
      {"Prop-sober-join-char",
       "S0: sober iff join-semilattice and C inside sigma*(Omega)", false},
      {"Lemma-xi-scott-cp", "xi_P is Scott convexity-preserving", false},
      {"Prop-c-sigma", "C(P^F) = sigma*(P^F) as canonical families", true},
      {"Thm-completion",
       "(P^F, sub) with xi_P is a join-semilattice completion", true},
      {"Thm-completion-charact",
       "completions = sobrifications of the Scott spaces, both directions",
       false},
  };
  return reg;
}

struct TheoremMatrix {
  InstanceSpec spec;
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (c.verdict == Verdict::Fail) return false;
    return true;
  }
  long total_skipped() const {
    long n = 0;
    for (const auto& c : checks) n += c.skipped;
    return n;
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "theorem-regression matrix (seed " << spec.seed << ")\n";
    os << "  " << std::string(26, '-') << "\n";
    for (const auto& c : checks) {
      os << "  " << c.id << std::string(c.id.size() < 26 ? 26 - c.id.size()
                                                         : 1, ' ')
         << verdict_name(c.verdict) << "  cases=" << c.cases
         << " skipped=" << c.skipped;
      if (c.finite_scale_note) os << "  [finite-instance shortcut]";
      if (!c.witness.empty()) os << "\n      witness: " << c.witness;
      if (!c.skip_note.empty()) os << "\n      skips: " << c.skip_note;
      os << "\n";
    }
    os << "result: " << (all_pass() ? "PASS" : "FAIL") << " ("
       << checks.size() << " checks, skipped instances: " << total_skipped()
       << ")\n";
    return os.str();
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["report_version"] = 1;
    j["spec"] = spec.to_json();
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
      nlohmann::ordered_json e;
      e["id"] = c.id;
      e["statement"] = c.statement;
      e["verdict"] = verdict_name(c.verdict);
      e["cases"] = c.cases;
      e["skipped"] = c.skipped;
      e["finite_scale_shortcut"] = c.finite_scale_note;
      if (!c.witness.empty()) e["witness"] = c.witness;
      if (!c.skip_note.empty()) e["skip_note"] = c.skip_note;
      arr.push_back(std::move(e));
    }
    j["checks"] = std::move(arr);
    j["all_pass"] = all_pass();
    return j;
  }
};

namespace detail {

/// Index of a degree vector in the canonical enumeration of L^X.
inline int univ_index(const LSubset& a) {
  int idx = 0;
  for (Deg v : a.degrees()) idx = idx * a.lattice().size() + v;
  return idx;
}

class SuiteRunner {
 public:
  explicit SuiteRunner(const InstanceSpec& spec) : spec_(spec) {
    for (const auto& r : check_registry()) {
      CheckResult c;
      c.id = r.id;
      c.statement = r.statement;
      c.finite_scale_note = r.finite_scale_note;
      index_[c.id] = checks_.size();
      checks_.push_back(std::move(c));
    }
  }

  TheoremMatrix run() {
    lattice_checks();
    zadeh_checks();
    space_loop();
    order_loop();
    universal_property_checks();
    TheoremMatrix m;
    m.spec = spec_;
    for (auto& c : checks_) {
      c.verdict = c.failed ? Verdict::Fail
                           : (c.cases > 0 ? Verdict::Pass : Verdict::Skipped);
      m.checks.push_back(c);
    }
    return m;
  }

 private:
  CheckResult& chk(const std::string& id) { return checks_[index_.at(id)]; }

  /// Runs one instance of a check: budget overruns count as skipped, any
  /// other library error is a failure of that check.
  template <typename Fn>
  void run_case(const std::string& id, Fn&& fn) {
    auto& c = chk(id);
    try {
      fn(c);
      ++c.cases;
    } catch (const BudgetExceeded& e) {
      c.skip(e.what());
    } catch (const Error& e) {
      c.fail(e.what());
      ++c.cases;
    }
  }

  std::vector<LatticePtr> spec_lattices() const {
    std::vector<LatticePtr> out;
    for (const auto& n : spec_.lattices) out.push_back(lattice_by_name(n));
    return out;
  }

  // ---- per-lattice checks ----

  void lattice_checks() {
    // the residuation suite runs on the configured lattices plus the
    // canonical chain/product list
    std::vector<LatticePtr> lats = spec_lattices();
    for (int n = 3; n <= 5; ++n) {
      lats.push_back(make_chain(n, ChainKind::godel));
      lats.push_back(make_chain(n, ChainKind::lukasiewicz));
    }
    lats.push_back(make_bool());
    lats.push_back(make_product(make_bool(), make_chain(3, ChainKind::godel)));
    for (const auto& lat : lats) {
      run_case("Lemma-2.1", [&](CheckResult& c) {
        // the subset laws (5)/(6) scan 2^|L| subsets
        if (checked_pow(2, lat->size()) > spec_.budgets.scan_cap)
          throw BudgetExceeded("law subsets over budget");
        auto rep = verify_lattice_laws(*lat);
        for (const auto& e : rep.entries)
          if (!e.pass) c.fail(lat->name() + ": " + e.law + " at " + e.witness);
      });
      run_case("Ex-L-orders", [&](CheckResult& c) {
        for (int nx = 1; nx <= 2; ++nx)
          inclusion_order_space(default_carrier(nx), lat, spec_.budgets);
        lattice_order(lat);  // build_order validates E1-E3
        (void)c;
      });
    }
  }

  void zadeh_checks() {
    for (const auto& lat : spec_lattices()) {
      std::vector<CarrierPtr> carriers;
      for (int n = 1; n <= spec_.max_carrier; ++n)
        carriers.push_back(default_carrier(n));
      for (const auto& cx : carriers)
        for (const auto& cy : carriers)
          run_case("Lemma-zadeh", [&](CheckResult& c) {
            auto as = enumerate_subsets(cx, lat, spec_.budgets);
            auto bs = enumerate_subsets(cy, lat, spec_.budgets);
            for (const auto& f : enumerate_maps(cx, cy, spec_.budgets)) {
              for (const auto& a : as)
                for (const auto& b : bs)
                  if (sub(zadeh_forward(f, a), b) !=
                      sub(a, zadeh_backward(f, b))) {
                    c.fail("adjunction fails over " + lat->name());
                    return;
                  }
              for (const auto& a1 : as)
                for (const auto& a2 : as)
                  if (!lat->leq(sub(a1, a2), sub(zadeh_forward(f, a1),
                                                 zadeh_forward(f, a2)))) {
                    c.fail("forward image not monotone over " + lat->name());
                    return;
                  }
            }
          });
    }
  }

  // ---- per-space checks ----

  static const std::vector<std::string>& space_check_ids() {
    static const std::vector<std::string> ids = {
        "Def-convex-axioms", "Lemma-pn-co",        "Def-sober-oracle",
        "Rem-polytope-compact", "Lemma-phi",       "Prop-cp-sober",
        "Def-F-closure",     "Prop-xf-sober",      "Prop-sober-iso",
        "Prop-xf-spec-order", "Prop-spec-co",      "Prop-sober-join-char",
        "Prop-sober-omega-join", "Rem-finite-subsets",
        "Lemma-Fclosed-transfer", "Lemma-cp-hull-char", "Prop-fcon"};
    return ids;
  }
  static const std::vector<std::string>& order_check_ids() {
    static const std::vector<std::string> ids = {
        "Rem-lower-upper",  "Rem-sup-unique",     "Prop-scott-structure",
        "Prop-scott-cp-equiv", "Lemma-xi-scott-cp", "Prop-c-sigma",
        "Thm-completion",   "Thm-completion-charact"};
    return ids;
  }

  void space_loop() {
    for (const auto& lat : spec_lattices())
      for (int nx = 1; nx <= spec_.max_carrier; ++nx) {
        auto car = default_carrier(nx);
        std::vector<LConvexSpace> all;
        try {
          enumerate_all_spaces(car, lat, spec_.budgets,
                               [&](LConvexSpace sp) {
                                 all.push_back(std::move(sp));
                               });
        } catch (const BudgetExceeded&) {
          for (const auto& id : space_check_ids()) ++chk(id).skipped;
          continue;
        }
        // deterministic reservoir of spaces for the expensive pair checks
        std::vector<int> reservoir;
        const int rsize = static_cast<int>(
            std::min<std::size_t>(all.size(), 12));
        for (int i = 0; i < rsize; ++i)
          reservoir.push_back(static_cast<int>(i * all.size() / rsize));
        for (const auto& sp : all) process_space(sp);
        map_checks(all, reservoir);
      }
  }

  void process_space(const LConvexSpace& sp) {
    const auto& lat = sp.lattice_ptr();
    const Lattice& L = *lat;
    const auto univ =
        enumerate_subsets(sp.carrier_ptr(), sp.lattice_ptr(), spec_.budgets);
    // hull table over all of L^X
    std::vector<int> hull_idx(univ.size());
    for (std::size_t i = 0; i < univ.size(); ++i)
      hull_idx[i] = univ_index(hull(sp, univ[i]));

    // artifacts shared by several checks; errors surface in each consumer
    std::optional<CompactFamily> cf;
    std::optional<LConvexSpace> cps;
    std::string cf_err;
    try {
      cf = compact_family(sp);
      cps = cp_space(*cf);
    } catch (const Error& e) {
      cf_err = e.what();
    }
    std::optional<SobrificationResult> sobr;
    bool sobr_budget = false;
    std::string sobr_err;
    try {
      sobr = sobrify(sp, spec_.budgets);
    } catch (const BudgetExceeded&) {
      sobr_budget = true;
    } catch (const Error& e) {
      sobr_err = e.what();
    }
    auto need_cf = [&](CheckResult& c) -> bool {
      if (cf) return true;
      c.fail(cf_err);
      return false;
    };
    auto need_sobr = [&](CheckResult& c) -> bool {
      if (sobr) return true;
      if (sobr_budget) throw BudgetExceeded("sobrify over budget");
      c.fail(sobr_err);
      return false;
    };

    run_case("Def-convex-axioms", [&](CheckResult& c) {
      Budgets b = spec_.budgets;
      if (sp.member_count() > 12) {
        b.scan_cap = 1;  // probe skipped, maximum argument certifies C2
        c.skip("directed probe on a family over 12 members");
      }
      auto rep = verify_space_axioms(sp, b);
      if (!rep.all_pass()) c.fail("axioms fail: " + rep.entries[0].axiom);
    });

    run_case("Lemma-pn-co", [&](CheckResult& c) {
      for (std::size_t ia = 0; ia < univ.size(); ++ia) {
        const auto& a = univ[ia];
        const auto& ha = univ[hull_idx[ia]];
        if (!pointwise_leq(a, ha)) c.fail("hull not inflationary");
        if (hull_idx[hull_idx[ia]] != hull_idx[ia])
          c.fail("hull not idempotent");
        for (Deg t = 0; t < L.size(); ++t) {
          auto lhs = scale_tensor(t, ha);
          if (!pointwise_leq(lhs,
                             univ[hull_idx[univ_index(scale_tensor(t, a))]]))
            c.fail("tensor-scaling law fails");
        }
        for (std::size_t ib = 0; ib < univ.size(); ++ib)
          if (!L.leq(sub(a, univ[ib]), sub(ha, univ[hull_idx[ib]])))
            c.fail("hull not sub-monotone");
        for (const auto& b : sp.members())
          if (sub(a, b) != sub(ha, b)) c.fail("sub-collapse law fails");
        if (c.failed) return;
      }
    });

    run_case("Def-sober-oracle", [&](CheckResult& c) {
      auto v = is_sober(sp, spec_.budgets);
      if (!v.oracle_ran) c.skip("|L|^|X| oracle over the scan budget");
      (void)v;  // agreement is asserted inside is_sober
    });

    run_case("Rem-polytope-compact", [&](CheckResult& c) {
      for (const auto& m : sp.members()) {
        const bool ne = is_nonempty(m);
        if (is_compact(sp, m) != ne) c.fail("compact != nonempty");
        if (is_polytope(sp, m).polytope != ne) c.fail("polytope != nonempty");
      }
      // witness-search oracle and compactness certificate on a slice
      if (sp.member_count() <= 12) {
        for (const auto& m : sp.members())
          if (polytope_witness_search(sp, m, spec_.budgets).polytope !=
              is_polytope(sp, m).polytope)
            c.fail("polytope search disagrees with the fast path");
        Budgets b = spec_.budgets;
        b.directed_probe = 3;
        int probed = 0;
        for (const auto& m : sp.members()) {
          if (probed >= 3) break;
          ++probed;
          if (!certify_compact(sp, m, b).agrees)
            c.fail("compactness certificate disagrees");
        }
      } else {
        c.skip("witness search and certificates on a family over 12 members");
      }
    });

    run_case("Lemma-phi", [&](CheckResult& c) {
      if (!need_cf(c)) return;
      std::vector<LSubset> phis;
      for (const auto& a : sp.members()) phis.push_back(phi(*cf, a));
      const auto& mem = sp.members();
      if (!(phi(*cf, top_subset(sp.carrier_ptr(), lat)) ==
            top_subset(cf->carrier, lat)) ||
          !(phi(*cf, bottom_subset(sp.carrier_ptr(), lat)) ==
            bottom_subset(cf->carrier, lat)))
        c.fail("phi constants law fails");
      for (std::size_t i = 0; i < mem.size(); ++i) {
        for (std::size_t j = 0; j < mem.size(); ++j) {
          if (!(phi(*cf, meet(mem[i], mem[j])) == meet(phis[i], phis[j])))
            c.fail("phi meet law fails");
          if (sub(mem[i], mem[j]) != sub(phis[i], phis[j]))
            c.fail("phi sub preservation fails");
        }
        for (Deg t = 0; t < L.size(); ++t)
          if (!(phi(*cf, scale_residuum(t, mem[i])) ==
                scale_residuum(t, phis[i])))
            c.fail("phi residuum law fails");
        if (c.failed) return;
      }
      if (mem.size() <= 10) {
        detail::for_each_subset_upto(
            static_cast<int>(mem.size()), 3, [&](std::span<const int> pick) {
              if (c.failed || !detail::is_directed(mem, pick)) return;
              LSubset dj = bottom_subset(sp.carrier_ptr(), lat);
              LSubset pj = bottom_subset(cf->carrier, lat);
              for (int i : pick) {
                dj = join(dj, mem[i]);
                pj = join(pj, phis[i]);
              }
              if (!(phi(*cf, dj) == pj)) c.fail("phi directed-join law fails");
            });
      } else {
        c.skip("directed-join probe on a family over 10 members");
      }
    });

    run_case("Prop-cp-sober", [&](CheckResult& c) {
      if (!need_cf(c)) return;
      Budgets fast_only = spec_.budgets;
      fast_only.scan_cap = 0;
      Budgets oracle_b = spec_.budgets;
      const std::uint64_t scan =
          checked_pow(L.size(), cf->members.size());
      auto v = is_sober(*cps, scan <= oracle_b.scan_cap / 64 ? oracle_b
                                                             : fast_only);
      if (!v.oracle_ran) c.skip("|L|^|cp| oracle over the scan budget");
      if (!v.sober) c.fail("cp space is not sober");
      for (int i = 0; i < static_cast<int>(cf->members.size()); ++i)
        if (!(hull(*cps, point(cf->carrier, lat, i)) ==
              phi(*cf, cf->members[i])))
          c.fail("phi(K) is not the point hull of K");
    });

    run_case("Def-F-closure", [&](CheckResult& c) {
      const int n = sp.carrier().size();
      if (n > 3 || sp.member_count() > 16) {
        c.skip("crisp-subset sweep on a large space");
        return;
      }
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        CrispSet b(n, 0);
        for (int i = 0; i < n; ++i) b[i] = (mask >> i & 1) != 0;
        if (!(f_closure(sp, b, spec_.budgets) ==
              f_closure_by_intersection(sp, b, spec_.budgets)))
          c.fail("F-closure routes disagree");
      }
    });

    run_case("Prop-xf-sober", [&](CheckResult& c) {
      if (!need_sobr(c)) return;
      if (!sobr->finite_collapse) c.fail("X^F is not all of cp(C(X))");
      if (sobr->definitional_ran && !sobr->definitional_agrees)
        c.fail("definitional route disagrees");
      if (!sobr->definitional_ran || !sobr->exhaustive_ran)
        c.skip("literal or definitional closure over the scan budget");
    });

    run_case("Prop-sober-iso", [&](CheckResult& c) {
      if (!need_sobr(c)) return;
      // the construction asserts the iff and the pullback; re-check the
      // boolean here so a silent regression cannot slip through
      const bool sober = is_sober(sp, spec_.budgets).sober;
      if (sober != is_convex_homeomorphism(sobr->xi, sp, sobr->xf_space))
        c.fail("sober iff xi-homeomorphism fails");
      for (const auto& va : sobr->xf_space.members())
        if (!sp.contains(zadeh_backward(sobr->xi, va)))
          c.fail("xi pullback escapes the family");
    });

    run_case("Prop-xf-spec-order", [&](CheckResult& c) {
      if (!need_cf(c)) return;
      auto omega = specialization(*cps);
      for (std::size_t i = 0; i < cf->members.size(); ++i)
        for (std::size_t j = 0; j < cf->members.size(); ++j)
          if (omega.e(static_cast<int>(i), static_cast<int>(j)) !=
              sub(cf->members[i], cf->members[j]))
            c.fail("cp-space order is not sub");
    });

    if (is_s0(sp)) {
      run_case("Prop-spec-co", [&](CheckResult& c) {
        specialization(sp);  // asserts both formulas agree
        (void)c;
      });
      run_case("Prop-sober-join-char", [&](CheckResult& c) {
        auto v = sober_join_characterization(sp, spec_.budgets);
        if (!v.agree) c.fail("characterization sides disagree");
      });
      run_case("Prop-sober-omega-join", [&](CheckResult& c) {
        if (!is_sober(sp, spec_.budgets).sober) return;
        auto omega = specialization(sp);
        auto v = is_join_semilattice(omega, spec_.budgets);
        if (!v.ok) c.fail("sober space with non-join-semilattice order");
        for (const auto& f : univ) {
          if (!is_nonempty(f)) continue;
          auto s = supremum(omega, f);
          if (!s) {
            c.fail("sober space: nonempty subset without a supremum");
            continue;
          }
          if (!(univ[hull_idx[univ_index(f)]] ==
                hull(sp, point(sp.carrier_ptr(), lat, *s))))
            c.fail("hull(F) != hull of the supremum point");
        }
      });
    }

    run_case("Rem-finite-subsets", [&](CheckResult& c) {
      std::vector<int> picks;
      if (sp.carrier().size() <= 2) {
        for (std::size_t i = 0; i < univ.size(); ++i)
          picks.push_back(static_cast<int>(i));
      } else {
        Rng rng(spec_.seed ^ 0x66696e69u);
        for (int k = 0; k < 3; ++k)
          picks.push_back(static_cast<int>(rng.next(univ.size())));
        c.skip("sampled three subsets on the three-point carriers");
      }
      for (int i : picks) {
        auto v =
            is_finite_subset(univ[i], spec_.budgets.finite_probe,
                             spec_.budgets);
        if (!v.finite || !v.violation.empty())
          c.fail("finiteness oracle found a violation");
      }
    });

    run_case("Lemma-Fclosed-transfer", [&](CheckResult& c) {
      if (!need_sobr(c)) return;
      const auto& res = *sobr;
      const int nf = res.xf_space.carrier().size();
      if (nf > 4) {
        c.skip("2^|X^F| transfer sweep over budget");
        return;
      }
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nf); ++mask) {
        CrispSet z(nf, 0);
        CrispSet zcp(res.cp.members.size(), 0);
        for (int i = 0; i < nf; ++i) {
          z[i] = (mask >> i & 1) != 0;
          if (z[i]) zcp[res.xf_points[i]] = 1;
        }
        if (is_f_closed(res.xf_space, z, spec_.budgets) &&
            !is_f_closed(res.cpspace, zcp, spec_.budgets))
          c.fail("F-closedness does not transfer");
      }
    });
  }

  void map_checks(const std::vector<LConvexSpace>& all,
                  const std::vector<int>& reservoir) {
    if (all.empty()) return;
    const auto& car = all[0].carrier_ptr();
    std::vector<CarrierMap> maps;
    try {
      maps = enumerate_maps(car, car, spec_.budgets);
    } catch (const BudgetExceeded&) {
      ++chk("Lemma-cp-hull-char").skipped;
      ++chk("Prop-fcon").skipped;
      return;
    }
    const bool small = all.size() <= 40;
    const auto& idxs = [&]() -> std::vector<int> {
      if (small) {
        std::vector<int> v;
        for (std::size_t i = 0; i < all.size(); ++i)
          v.push_back(static_cast<int>(i));
        return v;
      }
      return reservoir;
    }();
    auto& charc = chk("Lemma-cp-hull-char");
    charc.skipped += static_cast<long>(all.size() - idxs.size());
    chk("Prop-fcon").skipped += static_cast<long>(all.size() - idxs.size());
    for (int ix : idxs)
      for (int iy : idxs) {
        const auto& sx = all[ix];
        const auto& sy = all[iy];
        run_case("Lemma-cp-hull-char", [&](CheckResult& c) {
          for (const auto& f : maps)
            if (hull_image_characterization(f, sx, sy, spec_.budgets) !=
                is_convexity_preserving(f, sx, sy)) {
              c.fail("hull characterization disagrees");
              return;
            }
        });
        run_case("Prop-fcon", [&](CheckResult& c) {
          const auto univ =
              enumerate_subsets(car, sx.lattice_ptr(), spec_.budgets);
          for (const auto& f : maps) {
            if (!is_convexity_preserving(f, sx, sy)) continue;
            // (1) hull-witness transport
            for (const auto& a : univ) {
              if (!is_nonempty(a)) continue;
              auto ha = hull(sx, a);
              for (int x0 = 0; x0 < car->size(); ++x0)
                if (ha == hull(sx, point(car, sx.lattice_ptr(), x0)) &&
                    !(hull(sy, zadeh_forward(f, a)) ==
                      hull(sy, point(car, sy.lattice_ptr(), f(x0)))))
                  c.fail("hull witness transport fails");
            }
            // (2) F-continuity
            if (!is_f_continuous(f, sx, sy, spec_.budgets))
              c.fail("cp map is not F-continuous");
            if (c.failed) return;
          }
          // (3) agreement transfer to the F-closure, S0 targets
          if (!is_s0(sy)) return;
          for (const auto& f : maps)
            for (const auto& g : maps) {
              if (!is_convexity_preserving(f, sx, sy) ||
                  !is_convexity_preserving(g, sx, sy))
                continue;
              CrispSet agree(car->size(), 0);
              for (int i = 0; i < car->size(); ++i)
                agree[i] = f(i) == g(i);
              auto cl = f_closure(sx, agree, spec_.budgets);
              for (int i = 0; i < car->size(); ++i)
                if (cl[i] && f(i) != g(i))
                  c.fail("agreement does not extend to the F-closure");
            }
        });
      }
  }

  // ---- per-order checks ----

  void order_loop() {
    for (const auto& lat : spec_lattices())
      for (int np = 1; np <= spec_.max_order_carrier; ++np) {
        auto car = default_carrier(np);
        std::vector<LOrderedSet> orders;
        try {
          enumerate_all_orders(car, lat, spec_.budgets,
                               [&](LOrderedSet p) {
                                 orders.push_back(std::move(p));
                               });
        } catch (const BudgetExceeded&) {
          for (const auto& id : order_check_ids()) ++chk(id).skipped;
          continue;
        }
        for (const auto& p : orders) process_order(p);
        // pair checks from a deterministic reservoir
        // all pairs when the census is small (covers every |P| <= 2
        // catalogue), otherwise a deterministic spread
        std::vector<int> idxs;
        const int rsize =
            static_cast<int>(std::min<std::size_t>(orders.size(), 12));
        for (int i = 0; i < rsize; ++i)
          idxs.push_back(static_cast<int>(i * orders.size() / rsize));
        std::vector<CarrierMap> maps;
        std::vector<LConvexSpace> sigma;
        try {
          maps = enumerate_maps(car, car, spec_.budgets);
          for (int i : idxs)
            sigma.push_back(scott_structure(orders[i], spec_.budgets));
        } catch (const BudgetExceeded&) {
          ++chk("Prop-scott-cp-equiv").skipped;
          continue;
        } catch (const Error& e) {
          auto& c = chk("Prop-scott-cp-equiv");
          c.fail(e.what());
          ++c.cases;
          continue;
        }
        chk("Prop-scott-cp-equiv").skipped +=
            static_cast<long>(orders.size() - idxs.size());
        for (std::size_t a = 0; a < idxs.size(); ++a)
          for (std::size_t b = 0; b < idxs.size(); ++b)
            run_case("Prop-scott-cp-equiv", [&](CheckResult& c) {
              const auto& p = orders[idxs[a]];
              const auto& q = orders[idxs[b]];
              for (const auto& f : maps) {
                const bool order_side =
                    is_scott_cp(f, p, q, spec_.budgets);
                const bool space_side =
                    is_convexity_preserving(f, sigma[a], sigma[b]);
                if (order_side != space_side) {
                  c.fail("bridge equivalence fails");
                  return;
                }
              }
            });
      }
  }

  void process_order(const LOrderedSet& p) {
    const auto& lat = p.lattice_ptr();
    run_case("Rem-lower-upper", [&](CheckResult& c) {
      for (int x = 0; x < p.size(); ++x) {
        if (!is_lower_set(p, down(p, x))) c.fail("down-set is not lower");
        if (!is_upper_set(p, up(p, x))) c.fail("up-set is not upper");
      }
      for (Deg a = 0; a < lat->size(); ++a) {
        auto cst = constant(p.carrier_ptr(), lat, a);
        if (!is_lower_set(p, cst) || !is_upper_set(p, cst))
          c.fail("constant is not both lower and upper");
      }
    });
    run_case("Rem-sup-unique", [&](CheckResult& c) {
      for (const auto& a :
           enumerate_subsets(p.carrier_ptr(), lat, spec_.budgets)) {
        supremum(p, a);  // throws InternalError on a uniqueness violation
        infimum(p, a);
      }
      for (int x = 0; x < p.size(); ++x) {
        auto s = supremum(p, point(p.carrier_ptr(), lat, x));
        auto i = infimum(p, point(p.carrier_ptr(), lat, x));
        if (!s || *s != x || !i || *i != x)
          c.fail("sup/inf of a point is not the point");
      }
    });
    std::optional<CompletionResult> comp;
    bool comp_budget = false;
    std::string comp_err;
    try {
      comp = completion(p, spec_.budgets);
    } catch (const BudgetExceeded&) {
      comp_budget = true;
    } catch (const Error& e) {
      comp_err = e.what();
    }
    auto need_comp = [&](CheckResult& c) -> bool {
      if (comp) return true;
      if (comp_budget) throw BudgetExceeded("completion over budget");
      c.fail(comp_err);
      return false;
    };
    run_case("Prop-scott-structure", [&](CheckResult& c) {
      const LConvexSpace& sp =
          comp ? comp->scott_space : scott_structure(p, spec_.budgets);
      if (!(specialization(sp) == p))
        c.fail("specialization does not recover the order");
    });
    run_case("Lemma-xi-scott-cp", [&](CheckResult& c) {
      if (!need_comp(c)) return;
      if (!comp->xi_scott_cp) c.fail("xi_P is not Scott cp");
    });
    run_case("Prop-c-sigma", [&](CheckResult& c) {
      if (!need_comp(c)) return;
      if (!comp->families_checked) {
        c.skip("|L|^(2|X^F|) sigma* scan over the scott budget");
        return;
      }
      if (!comp->families_equal) c.fail("C(P^F) != sigma*(P^F)");
    });
    run_case("Thm-completion", [&](CheckResult& c) {
      if (!need_comp(c)) return;
      const auto& res = *comp;
      if (res.join_semilattice_skipped) {
        // sampled tier: seeded nonempty subsets must still have suprema
        Rng rng(spec_.seed ^ 0x636f6d70u);
        const auto& q = res.completion_order;
        const std::uint64_t ucount =
            checked_pow(lat->size(), q.size());
        for (int k = 0; k < spec_.samples; ++k) {
          std::uint64_t pick = rng.next(ucount);
          std::vector<Deg> d(q.size());
          for (int x = q.size() - 1; x >= 0; --x) {
            d[x] = static_cast<Deg>(pick % lat->size());
            pick /= lat->size();
          }
          LSubset f(q.carrier_ptr(), lat, std::move(d));
          if (!is_nonempty(f)) continue;
          if (!supremum(q, f))
            c.fail("sampled subset of the completion has no supremum");
        }
        c.skip("|L|^|X^F| join-semilattice scan over budget; sampled");
        return;
      }
      if (!res.join_semilattice_verified)
        c.fail("completion is not a join-semilattice");
      // the completion order must be sub on the provenance sets
      for (int i = 0; i < res.completion_order.size(); ++i)
        for (int j = 0; j < res.completion_order.size(); ++j)
          if (res.completion_order.e(i, j) !=
              sub(res.underlying.provenance[i],
                  res.underlying.provenance[j]))
            c.fail("completion order is not sub");
    });
    if (p.size() <= 2 || (lat->size() == 2 && p.size() <= 3)) {
      run_case("Thm-completion-charact", [&](CheckResult& c) {
        if (!need_comp(c)) return;
        const auto& res = *comp;
        if (!verify_completion(p, res.completion_order, res.xi,
                               spec_.budgets))
          c.fail("canonical completion rejected");
        // non-Scott-cp units must be rejected; scan a couple of them
        int rejected_checked = 0;
        for (const auto& j :
             enumerate_maps(p.carrier_ptr(),
                            res.completion_order.carrier_ptr(),
                            spec_.budgets)) {
          if (rejected_checked >= 2) break;
          if (is_scott_cp(j, p, res.completion_order, spec_.budgets))
            continue;
          ++rejected_checked;
          if (verify_completion(p, res.completion_order, j, spec_.budgets))
            c.fail("non-Scott-cp unit accepted");
        }
      });
    } else {
      ++chk("Thm-completion-charact").skipped;
    }
  }

  // ---- universal property over generated pairs ----

  void universal_property_checks() {
    // exhaustive over Boolean spaces on carriers of size 1 and 2
    auto boolean = make_bool();
    std::vector<LConvexSpace> xs;
    try {
      for (int n = 1; n <= 2; ++n)
        enumerate_all_spaces(default_carrier(n), boolean, spec_.budgets,
                             [&](LConvexSpace sp) {
                               xs.push_back(std::move(sp));
                             });
    } catch (const BudgetExceeded&) {
      ++chk("Thm-sobrification").skipped;
      return;
    }
    for (const auto& x : xs)
      for (const auto& z : xs) {
        Budgets fast_only = spec_.budgets;
        fast_only.scan_cap = 0;
        if (!is_sober(z, fast_only).sober) continue;
        run_case("Thm-sobrification", [&](CheckResult& c) {
          auto sx = sobrify(x, spec_.budgets);
          for (const auto& f :
               enumerate_maps(x.carrier_ptr(), z.carrier_ptr(),
                              spec_.budgets)) {
            if (!is_convexity_preserving(f, x, z)) continue;
            auto ext = extend_to_sobrification(sx, z, f, spec_.budgets);
            if (!ext.commutes) c.fail("extension does not commute");
            if (ext.uniqueness_skipped)
              c.skip("uniqueness enumeration over the scan budget");
          }
        });
      }
    // seeded samples over the three-element lattices
    for (const auto& name : spec_.lattices) {
      auto lat = lattice_by_name(name);
      if (lat->size() != 3) continue;
      Rng rng(spec_.seed ^ 0x756e6976u);
      int produced = 0;
      while (produced < spec_.samples) {
        ++produced;
        run_case("Thm-sobrification", [&](CheckResult& c) {
          const int nx = 1 + static_cast<int>(rng.next(2));
          const int nz = 1 + static_cast<int>(rng.next(2));
          std::vector<LConvexSpace> gen;
          sample_spaces(default_carrier(nx), lat, 1, rng.gen(),
                        spec_.budgets,
                        [&](LConvexSpace sp) { gen.push_back(std::move(sp)); });
          sample_spaces(default_carrier(nz), lat, 1, rng.gen(),
                        spec_.budgets,
                        [&](LConvexSpace sp) { gen.push_back(std::move(sp)); });
          const auto& x = gen[0];
          auto zres = sobrify(gen[1], spec_.budgets);
          const auto& z = zres.xf_space;  // sober by construction
          auto sx = sobrify(x, spec_.budgets);
          for (const auto& f :
               enumerate_maps(x.carrier_ptr(), z.carrier_ptr(),
                              spec_.budgets)) {
            if (!is_convexity_preserving(f, x, z)) continue;
            auto ext = extend_to_sobrification(sx, z, f, spec_.budgets);
            if (!ext.commutes) c.fail("extension does not commute");
            if (ext.uniqueness_skipped)
              c.skip("uniqueness enumeration over the scan budget");
          }
        });
      }
    }
  }

  InstanceSpec spec_;
  std::vector<CheckResult> checks_;
  std::map<std::string, std::size_t> index_;
};

}  // namespace detail

inline TheoremMatrix run_suite(const InstanceSpec& spec) {
  detail::SuiteRunner runner(spec);
  return runner.run();
}

/// Deliberate-fault run: executes the suite with one mutation active.
inline TheoremMatrix run_suite_mutated(const InstanceSpec& spec,
                                       Mutation m) {
  MutationGuard guard(m);
  return run_suite(spec);
}

// ---- counterexample search ----

struct SearchReport {
  std::string target;
  long scanned = 0;
  std::vector<std::string> findings;
  std::string note;

  std::string to_text() const {
    std::ostringstream os;
    os << "search target: " << target << "\n";
    os << "instances scanned: " << scanned << "\n";
    os << "findings: " << findings.size() << "\n";
    for (const auto& f : findings) os << "  " << f << "\n";
    if (!note.empty()) os << "note: " << note << "\n";
    return os.str();
  }
  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["target"] = target;
    j["scanned"] = scanned;
    j["findings"] = findings;
    if (!note.empty()) j["note"] = note;
    return j;
  }
};

/// Streams generated instances hunting for counterexamples. Never asserts
/// nonexistence: an empty findings list only reports the scanned range.
inline SearchReport search_counterexamples(const std::string& target,
                                           const InstanceSpec& spec) {
  SearchReport rep;
  rep.target = target;
  if (target == "scott-inclusion") {
    rep.note =
        "hunting for a sober space with a Scott convex set outside C(X); "
        "inclusion sigma*(Omega X) <= C(X) holds classically at |L| = 2, "
        "and absence of findings proves nothing beyond the scanned range";
    for (const auto& name : spec.lattices) {
      auto lat = lattice_by_name(name);
      for (int nx = 1; nx <= spec.max_carrier; ++nx)
        enumerate_all_spaces(
            default_carrier(nx), lat, spec.budgets,
            [&](const LConvexSpace& sp) {
              Budgets fast_only = spec.budgets;
              fast_only.scan_cap = 0;
              if (!is_s0(sp) || !is_sober(sp, fast_only).sober) return;
              ++rep.scanned;
              auto omega = specialization(sp);
              auto sigma = scott_structure(omega, spec.budgets);
              for (const auto& a : sigma.members())
                if (!sp.contains(a))
                  rep.findings.push_back(
                      name + " |X|=" + std::to_string(nx) + " family " +
                      std::to_string(sp.member_count()) +
                      " members: Scott convex set " + a.to_string() +
                      " is not convex");
            });
    }
  } else if (target == "all-sober") {
    rep.note =
        "registered false hypothesis: every space is sober; findings are "
        "expected immediately";
    for (const auto& name : spec.lattices) {
      auto lat = lattice_by_name(name);
      for (int nx = 1; nx <= spec.max_carrier && rep.findings.size() < 5;
           ++nx)
        enumerate_all_spaces(default_carrier(nx), lat, spec.budgets,
                             [&](const LConvexSpace& sp) {
                               if (rep.findings.size() >= 5) return;
                               ++rep.scanned;
                               Budgets fast_only = spec.budgets;
                               fast_only.scan_cap = 0;
                               if (!is_sober(sp, fast_only).sober)
                                 rep.findings.push_back(
                                     name + " |X|=" + std::to_string(nx) +
                                     ": non-sober space with " +
                                     std::to_string(sp.member_count()) +
                                     " members");
                             });
    }
  } else if (target == "polytope-compact") {
    rep.note =
        "at finite scale polytopes and compact convex sets both collapse to "
        "the nonempty members, so no separating instance can exist here; "
        "the question stays open in the infinite case";
    for (const auto& name : spec.lattices) {
      auto lat = lattice_by_name(name);
      for (int nx = 1; nx <= spec.max_carrier; ++nx)
        enumerate_all_spaces(default_carrier(nx), lat, spec.budgets,
                             [&](const LConvexSpace& sp) {
                               ++rep.scanned;
                               for (const auto& m : sp.members())
                                 if (is_compact(sp, m) !=
                                     is_polytope(sp, m).polytope)
                                   rep.findings.push_back("collapse failed");
                             });
    }
  } else {
    throw ParseError("unknown search target '" + target +
                     "' (try scott-inclusion, all-sober, polytope-compact)");
  }
  return rep;
}

}  // namespace lconvex
