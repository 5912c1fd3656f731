#include <catch2/catch_amalgamated.hpp>

#include "lconvex/sober.hpp"

using namespace lconvex;

namespace {
const LatticePtr B = make_bool();
const LatticePtr G3 = make_chain(3, ChainKind::godel);
const LatticePtr L3 = make_chain(3, ChainKind::lukasiewicz);
const CarrierPtr AB = make_carrier({"a", "b"});

LConvexSpace bool_chi_a() { return build_space(AB, B, {point(AB, B, 0)}); }

std::vector<LConvexSpace> sample_spaces() {
  std::vector<LConvexSpace> out;
  out.push_back(bool_chi_a());
  out.push_back(indiscrete_space(AB, B));
  out.push_back(discrete_space(AB, B));
  out.push_back(build_space(AB, G3, {point(AB, G3, 0)}));
  out.push_back(build_space(AB, L3, {LSubset(AB, L3, {1, 2})}));
  auto c3 = make_carrier({"p", "q", "r"});
  out.push_back(build_space(c3, B, {point(c3, B, 0), point(c3, B, 1)}));
  out.push_back(build_space(c3, G3, {LSubset(c3, G3, {2, 1, 0})}));
  return out;
}
}  // namespace

TEST_CASE("compact family") {
  SECTION("chi_a space has two compact sets") {
    auto cf = compact_family(bool_chi_a());
    REQUIRE(cf.members.size() == 2);
    CHECK(cf.members[0] == point(AB, B, 0));
    CHECK(cf.members[1] == top_subset(AB, B));
  }
  SECTION("indiscrete space has only the top") {
    auto cf = compact_family(indiscrete_space(AB, B));
    REQUIRE(cf.members.size() == 1);
    CHECK(cf.members[0] == top_subset(AB, B));
  }
  SECTION("discrete one-point Boolean space") {
    auto one = make_carrier({"a"});
    auto cf = compact_family(discrete_space(one, B));
    REQUIRE(cf.members.size() == 1);
    CHECK(cf.members[0] == top_subset(one, B));
  }
}

TEST_CASE("phi") {
  auto x = bool_chi_a();
  auto cf = compact_family(x);
  CHECK(phi(cf, top_subset(AB, B)) == top_subset(cf.carrier, B));
  CHECK(phi(cf, bottom_subset(AB, B)) == bottom_subset(cf.carrier, B));
  auto pa = phi(cf, point(AB, B, 0));
  CHECK(pa.degrees() == std::vector<Deg>{1, 0});
  CHECK_THROWS_AS(phi(cf, point(AB, B, 1)), NotConvex);
}

TEST_CASE("phi laws hold on sample spaces") {
  for (const auto& x : sample_spaces()) {
    auto cf = compact_family(x);
    const auto& L = *x.lattice_ptr();
    // (1) constants for a = 0, 1
    CHECK(phi(cf, top_subset(x.carrier_ptr(), x.lattice_ptr())) ==
          top_subset(cf.carrier, x.lattice_ptr()));
    CHECK(phi(cf, bottom_subset(x.carrier_ptr(), x.lattice_ptr())) ==
          bottom_subset(cf.carrier, x.lattice_ptr()));
    // (3) meets over all pairs, (4) residuum scaling, (5) sub preservation
    for (const auto& a : x.members()) {
      for (const auto& b : x.members()) {
        CHECK(phi(cf, meet(a, b)) == meet(phi(cf, a), phi(cf, b)));
        CHECK(sub(a, b) == sub(phi(cf, a), phi(cf, b)));
      }
      for (Deg t = 0; t < L.size(); ++t)
        CHECK(phi(cf, scale_residuum(t, a)) == scale_residuum(t, phi(cf, a)));
    }
    // (2) directed joins of members, probing subfamilies up to size 3
    const auto& mem = x.members();
    detail::for_each_subset_upto(
        static_cast<int>(mem.size()), 3, [&](std::span<const int> pick) {
          if (!detail::is_directed(mem, pick)) return;
          LSubset dj = bottom_subset(x.carrier_ptr(), x.lattice_ptr());
          LSubset pj = bottom_subset(cf.carrier, x.lattice_ptr());
          for (int i : pick) {
            dj = join(dj, mem[i]);
            pj = join(pj, phi(cf, mem[i]));
          }
          CHECK(phi(cf, dj) == pj);
        });
  }
}

TEST_CASE("cp space is sober and phi gives its point hulls") {
  for (const auto& x : sample_spaces()) {
    auto cf = compact_family(x);
    auto cps = cp_space(cf);
    CHECK(verify_space_axioms(cps).all_pass());
    auto v = is_sober(cps);
    INFO("space with " << x.member_count() << " members");
    CHECK(v.sober);
    for (int i = 0; i < static_cast<int>(cf.members.size()); ++i) {
      auto ph = hull(cps, point(cf.carrier, x.lattice_ptr(), i));
      CHECK(ph == phi(cf, cf.members[i]));
    }
  }
}

TEST_CASE("sobriety verdicts") {
  SECTION("chi_a space is sober") {
    auto v = is_sober(bool_chi_a());
    CHECK(v.sober);
    CHECK(v.injective);
    CHECK(v.onto_nonempty);
    CHECK(v.oracle_ran);
    CHECK(v.oracle_cases == 3);  // nonempty F over Boolean on 2 points
  }
  SECTION("indiscrete two-point space is not sober") {
    auto v = is_sober(indiscrete_space(AB, B));
    CHECK_FALSE(v.sober);
    CHECK_FALSE(v.injective);
    REQUIRE(v.witness.has_value());
    // 1_a matches both point hulls
    CHECK(v.witness_points.size() == 2);
  }
  SECTION("one-point discrete space is sober") {
    auto one = make_carrier({"a"});
    CHECK(is_sober(discrete_space(one, B)).sober);
  }
  SECTION("oracle skipping under a tiny budget") {
    Budgets tiny;
    tiny.scan_cap = 0;
    auto v = is_sober(bool_chi_a(), tiny);
    CHECK(v.sober);
    CHECK_FALSE(v.oracle_ran);
  }
}

TEST_CASE("S0") {
  CHECK(is_s0(bool_chi_a()));
  CHECK_FALSE(is_s0(indiscrete_space(AB, B)));
  CHECK(is_s0(discrete_space(make_carrier({"a"}), B)));
  for (const auto& x : sample_spaces())
    if (is_sober(x).sober) CHECK(is_s0(x));
}

TEST_CASE("F-closed sets and F-closure") {
  auto x = bool_chi_a();
  SECTION("full and empty sets are F-closed") {
    CHECK(is_f_closed(x, full_set(2)));
    CHECK(is_f_closed(x, empty_set(2)));
  }
  SECTION("f_closure of {a} stays {a}") {
    CrispSet a = {1, 0};
    CHECK(f_closure(x, a) == a);
    CHECK(is_f_closed(x, a));
  }
  SECTION("on the indiscrete space {a} closes to everything") {
    auto ind = indiscrete_space(AB, B);
    CrispSet a = {1, 0};
    CHECK_FALSE(is_f_closed(ind, a));
    CHECK(f_closure(ind, a) == full_set(2));
  }
  SECTION("iteration agrees with the intersection oracle") {
    for (const auto& sp : sample_spaces()) {
      const int n = sp.carrier().size();
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        CrispSet b(n, 0);
        for (int i = 0; i < n; ++i) b[i] = (mask >> i & 1) != 0;
        CHECK(f_closure(sp, b) == f_closure_by_intersection(sp, b));
      }
    }
  }
}

TEST_CASE("F-continuity") {
  auto x = bool_chi_a();
  CHECK(is_f_continuous(identity_map(AB), x, x));
  // every convexity-preserving map between Boolean two-point spaces is
  // F-continuous
  std::vector<LConvexSpace> spaces = {x, indiscrete_space(AB, B),
                                      discrete_space(AB, B)};
  for (const auto& sx : spaces)
    for (const auto& sy : spaces)
      for (const auto& f : enumerate_maps(AB, AB))
        if (is_convexity_preserving(f, sx, sy))
          CHECK(is_f_continuous(f, sx, sy));
}

TEST_CASE("convexity-preserving maps transport hull witnesses") {
  // For convexity-preserving f and nonempty A with co(A) = co(1_x):
  // co(f->(A)) = co(1_{f(x)}).
  std::vector<LConvexSpace> spaces = {bool_chi_a(), indiscrete_space(AB, B),
                                      discrete_space(AB, B)};
  for (const auto& sx : spaces)
    for (const auto& sy : spaces)
      for (const auto& f : enumerate_maps(AB, AB)) {
        if (!is_convexity_preserving(f, sx, sy)) continue;
        for (const auto& a : enumerate_subsets(AB, B)) {
          if (!is_nonempty(a)) continue;
          auto ha = hull(sx, a);
          for (int x0 = 0; x0 < 2; ++x0)
            if (ha == hull(sx, point(AB, B, x0)))
              CHECK(hull(sy, zadeh_forward(f, a)) ==
                    hull(sy, point(AB, B, f(x0))));
        }
      }
}

TEST_CASE("maps agreeing on Z agree on its F-closure") {
  // S0 target; exhaustive over Boolean two-point spaces.
  std::vector<LConvexSpace> spaces = {bool_chi_a(), discrete_space(AB, B)};
  for (const auto& sx : spaces)
    for (const auto& sy : spaces) {
      if (!is_s0(sy)) continue;
      auto maps = enumerate_maps(AB, AB);
      for (const auto& f : maps)
        for (const auto& g : maps) {
          if (!is_convexity_preserving(f, sx, sy) ||
              !is_convexity_preserving(g, sx, sy))
            continue;
          for (std::uint64_t mask = 0; mask < 4; ++mask) {
            CrispSet z(2, 0);
            bool agree_on_z = true;
            for (int i = 0; i < 2; ++i) {
              z[i] = (mask >> i & 1) != 0;
              if (z[i] && f(i) != g(i)) agree_on_z = false;
            }
            if (!agree_on_z) continue;
            auto cl = f_closure(sx, z);
            for (int i = 0; i < 2; ++i)
              if (cl[i]) CHECK(f(i) == g(i));
          }
        }
    }
}

TEST_CASE("sobrification") {
  SECTION("indiscrete space collapses to one point") {
    auto res = sobrify(indiscrete_space(AB, B));
    CHECK(res.xf_points.size() == 1);
    CHECK(res.xi(0) == res.xi(1));
    CHECK(res.finite_collapse);
    CHECK(res.provenance[0] == top_subset(AB, B));
  }
  SECTION("sober space: xi is a convex-homeomorphism") {
    auto x = bool_chi_a();
    auto res = sobrify(x);
    CHECK(res.xf_points.size() == 2);
    CHECK(is_convex_homeomorphism(res.xi, x, res.xf_space));
  }
  SECTION("all three routes agree on the sample spaces") {
    for (const auto& x : sample_spaces()) {
      auto res = sobrify(x);
      CHECK(res.finite_collapse);
      CHECK(res.definitional_ran);
      CHECK(res.definitional_agrees);
      CHECK(res.exhaustive_ran);
      CHECK(res.exhaustive_agrees);
      // xi pullback: preimages of the X^F structure are exactly members
      for (const auto& va : res.xf_space.members())
        CHECK(x.contains(zadeh_backward(res.xi, va)));
    }
  }
  SECTION("sobrify is idempotent up to convex-homeomorphism") {
    for (const auto& x : sample_spaces()) {
      auto once = sobrify(x);
      auto twice = sobrify(once.xf_space);
      CHECK(is_convex_homeomorphism(twice.xi, once.xf_space, twice.xf_space));
    }
  }
}

TEST_CASE("F-closed subsets of X^F are F-closed in the cp space") {
  for (const auto& x : sample_spaces()) {
    auto res = sobrify(x);
    const int nf = res.xf_space.carrier().size();
    if (nf > 6) continue;
    // X^F = cp here (finite collapse), so subsets transfer index-to-index.
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nf); ++mask) {
      CrispSet z(nf, 0);
      CrispSet zcp(res.cp.members.size(), 0);
      for (int i = 0; i < nf; ++i) {
        z[i] = (mask >> i & 1) != 0;
        if (z[i]) zcp[res.xf_points[i]] = 1;
      }
      if (is_f_closed(res.xf_space, z)) CHECK(is_f_closed(res.cpspace, zcp));
    }
  }
}

TEST_CASE("universal extension") {
  SECTION("extending xi along itself gives the identity") {
    auto x = bool_chi_a();
    auto res = sobrify(x);
    auto ext = extend_to_sobrification(res, res.xf_space, res.xi);
    CHECK(ext.commutes);
    CHECK(ext.unique);
    for (int i = 0; i < res.xf_space.carrier().size(); ++i)
      CHECK(ext.fbar(i) == i);
  }
  SECTION("indiscrete source, one-point target") {
    auto one = make_carrier({"z"});
    auto z = discrete_space(one, B);
    auto res = sobrify(indiscrete_space(AB, B));
    CarrierMap f(AB, one, {0, 0});
    auto ext = extend_to_sobrification(res, z, f);
    CHECK(ext.commutes);
    CHECK(ext.unique);
    CHECK(ext.fbar.source().size() == 1);
  }
  SECTION("preconditions are enforced") {
    auto x = bool_chi_a();
    auto res = sobrify(x);
    CHECK_THROWS_AS(extend_to_sobrification(res, indiscrete_space(AB, B),
                                            identity_map(AB)),
                    NotSober);
    // the swap map into the chi_a space is not convexity-preserving
    CarrierMap swap(AB, AB, {1, 0});
    CHECK_THROWS_AS(extend_to_sobrification(res, x, swap),
                    NotConvexityPreserving);
  }
  SECTION("uniqueness skipping under a tiny budget") {
    auto x = bool_chi_a();
    auto res = sobrify(x);
    Budgets tiny;
    tiny.scan_cap = 2;
    auto ext = extend_to_sobrification(res, res.xf_space, res.xi, tiny);
    CHECK(ext.uniqueness_skipped);
    CHECK_FALSE(ext.unique);
  }
}
