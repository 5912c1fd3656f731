#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lconvex/convex.hpp"

using namespace lconvex;

namespace {
const LatticePtr B = make_bool();
const LatticePtr G3 = make_chain(3, ChainKind::godel);
const LatticePtr L3 = make_chain(3, ChainKind::lukasiewicz);
const CarrierPtr AB = make_carrier({"a", "b"});

// {0_X, chi_a, 1_X} over the Boolean lattice on {a,b}.
LConvexSpace bool_chi_a() { return build_space(AB, B, {point(AB, B, 0)}); }
}  // namespace

TEST_CASE("closure generation") {
  SECTION("no generators gives the indiscrete space") {
    auto x = build_space(AB, B, {});
    REQUIRE(x.member_count() == 2);
    CHECK(x.contains(bottom_subset(AB, B)));
    CHECK(x.contains(top_subset(AB, B)));
  }
  SECTION("one Boolean point generator") {
    auto x = bool_chi_a();
    REQUIRE(x.member_count() == 3);
    CHECK(x.contains(point(AB, B, 0)));
  }
  SECTION("all of L^X stays all of L^X") {
    auto x = build_space(AB, B, enumerate_subsets(AB, B));
    CHECK(x.member_count() == 4);
    CHECK(x == discrete_space(AB, B));
  }
  SECTION("family cap raises BudgetExceeded") {
    Budgets tiny;
    tiny.family_cap = 2;
    CHECK_THROWS_AS(build_space(AB, G3, {point(AB, G3, 0)}, tiny),
                    BudgetExceeded);
  }
}

TEST_CASE("closure is independent of pass order and generator order") {
  std::mt19937_64 rng(20240817);
  auto c3 = make_carrier({"x", "y", "z"});
  for (const auto& lat : {B, G3, L3}) {
    auto univ = enumerate_subsets(c3, lat);
    for (int round = 0; round < 20; ++round) {
      std::vector<LSubset> gens;
      const int k = 1 + static_cast<int>(rng() % 3);
      for (int i = 0; i < k; ++i)
        gens.push_back(univ[rng() % univ.size()]);
      Budgets bud;
      auto meets_first =
          detail::close_family(c3, lat, gens, bud, true);
      std::shuffle(gens.begin(), gens.end(), rng);
      auto residuum_first =
          detail::close_family(c3, lat, gens, bud, false);
      CHECK(meets_first == residuum_first);
    }
  }
}

TEST_CASE("axiom verification") {
  SECTION("generated spaces pass") {
    auto rep = verify_space_axioms(bool_chi_a());
    for (const auto& e : rep.entries) {
      INFO(e.axiom << " " << e.witness);
      CHECK(e.pass);
    }
  }
  SECTION("missing top fails C1") {
    LConvexSpace broken(AB, B, {bottom_subset(AB, B), point(AB, B, 0)});
    auto rep = verify_space_axioms(broken);
    CHECK_FALSE(rep.entries[0].pass);
  }
  SECTION("missing meet fails C3") {
    // {0, chi_a, chi_b, 1} over Boolean on {a,b} is meet-closed
    // (chi_a ^ chi_b = 0), so break C3 with a 3-point example instead:
    // chi_{ab} ^ chi_{bc} = chi_b missing.
    auto c3 = make_carrier({"a", "b", "c"});
    std::vector<int> ab = {0, 1}, bc = {1, 2};
    LConvexSpace broken(c3, B,
                        {bottom_subset(c3, B), top_subset(c3, B),
                         characteristic(c3, B, ab), characteristic(c3, B, bc)});
    auto rep = verify_space_axioms(broken);
    CHECK_FALSE(rep.all_pass());
  }
  SECTION("goedel constants space passes C4") {
    auto one = make_carrier({"x"});
    LConvexSpace x(one, G3,
                   {bottom_subset(one, G3), constant(one, G3, 1),
                    top_subset(one, G3)});
    auto rep = verify_space_axioms(x);
    for (const auto& e : rep.entries) {
      INFO(e.axiom << " " << e.witness);
      CHECK(e.pass);
    }
  }
  SECTION("goedel {0,1} on one point fails C4 via 1/2 -> 0") {
    // 1/2 -> 0_X = 0_X over goedel... so {0,1} IS closed; check that the
    // verifier agrees rather than asserting a failure blindly.
    auto one = make_carrier({"x"});
    LConvexSpace x(one, G3, {bottom_subset(one, G3), top_subset(one, G3)});
    CHECK(verify_space_axioms(x).all_pass());
    // over lukasiewicz, 1 -> (1/2)_X = 1/2 and 1/2 -> 0 = 1/2, so {0,1}
    // is not closed there either way:
    LConvexSpace y(one, L3, {bottom_subset(one, L3), top_subset(one, L3)});
    // members are 0_X and 1_X; a -> 0_X for a = 1/2 gives (1/2)_X
    CHECK_FALSE(verify_space_axioms(y).all_pass());
  }
}

TEST_CASE("hull operator") {
  auto x = bool_chi_a();
  SECTION("hull of a member is the member") {
    for (const auto& m : x.members()) CHECK(hull(x, m) == m);
  }
  SECTION("hull of 1_b is the top constant") {
    CHECK(hull(x, point(AB, B, 1)) == top_subset(AB, B));
  }
  SECTION("hull of the bottom constant is itself") {
    CHECK(hull(x, bottom_subset(AB, B)) == bottom_subset(AB, B));
  }
  SECTION("hull is a closure operator") {
    for (const auto& lat : {B, G3}) {
      auto sp = build_space(AB, lat, {point(AB, lat, 0)});
      for (const auto& a : enumerate_subsets(AB, lat)) {
        auto h = hull(sp, a);
        CHECK(pointwise_leq(a, h));
        CHECK(hull(sp, h) == h);
        CHECK(sp.contains(h));
        for (const auto& b : enumerate_subsets(AB, lat))
          if (pointwise_leq(a, b)) CHECK(pointwise_leq(h, hull(sp, b)));
      }
    }
  }
}

TEST_CASE("hull laws") {
  // a (x) co(A) <= co(a (x) A); co is sub-monotone; sub(A,B) = sub(co A, B)
  // for convex B.  Exhaustive at |X| = 2 over the three small lattices for
  // a handful of generated spaces.
  for (const auto& lat : {B, G3, L3}) {
    auto univ = enumerate_subsets(AB, lat);
    std::vector<LConvexSpace> spaces = {
        build_space(AB, lat, {}),
        build_space(AB, lat, {point(AB, lat, 0)}),
        build_space(AB, lat, {univ[1]}),
        discrete_space(AB, lat)};
    for (const auto& sp : spaces) {
      for (const auto& a : univ) {
        auto ha = hull(sp, a);
        for (Deg t = 0; t < lat->size(); ++t)
          CHECK(pointwise_leq(scale_tensor(t, ha), hull(sp, scale_tensor(t, a))));
        for (const auto& b : univ)
          CHECK(lat->leq(sub(a, b), sub(ha, hull(sp, b))));
        for (const auto& b : sp.members())
          CHECK(sub(a, b) == sub(ha, b));
      }
    }
  }
}

TEST_CASE("map classes") {
  auto x = bool_chi_a();
  SECTION("identity is a homeomorphism") {
    auto id = identity_map(AB);
    CHECK(is_convexity_preserving(id, x, x));
    CHECK(is_convex_to_convex(id, x, x));
    CHECK(is_convex_homeomorphism(id, x, x));
  }
  SECTION("inclusion of a discrete point into the chi_a space") {
    auto one = make_carrier({"a"});
    auto src = discrete_space(one, B);
    CarrierMap inc(one, AB, {0});
    CHECK(is_convexity_preserving(inc, src, x));
  }
  SECTION("constant-to-b map on the chi_a space") {
    CarrierMap cst(AB, AB, {1, 1});
    // preimages: 0 -> 0, chi_a -> 0, 1 -> 1; all members
    CHECK(is_convexity_preserving(cst, x, x));
    // forward image of chi_a is chi_b which is not a member
    CHECK_FALSE(is_convex_to_convex(cst, x, x));
    CHECK_FALSE(is_convex_homeomorphism(cst, x, x));
  }
}

TEST_CASE("SpaceMap caches match fresh recomputation") {
  auto x = bool_chi_a();
  CarrierMap cst(AB, AB, {1, 1});
  SpaceMap m(cst, x, x);
  CHECK(m.convexity_preserving() == is_convexity_preserving(cst, x, x));
  CHECK(m.convexity_preserving() == is_convexity_preserving(cst, x, x));
  CHECK(m.convex_to_convex() == is_convex_to_convex(cst, x, x));
  CHECK(m.convex_homeomorphism() == is_convex_homeomorphism(cst, x, x));
}

TEST_CASE("hull image characterization matches convexity preservation") {
  for (const auto& lat : {B, G3}) {
    std::vector<LConvexSpace> spaces = {
        build_space(AB, lat, {}),
        build_space(AB, lat, {point(AB, lat, 0)}),
        discrete_space(AB, lat)};
    for (const auto& sx : spaces)
      for (const auto& sy : spaces)
        for (const auto& f : enumerate_maps(AB, AB))
          CHECK(hull_image_characterization(f, sx, sy) ==
                is_convexity_preserving(f, sx, sy));
  }
}

TEST_CASE("compactness") {
  auto x = bool_chi_a();
  SECTION("top constant is compact, bottom is not") {
    CHECK(is_compact(x, top_subset(AB, B)));
    CHECK_FALSE(is_compact(x, bottom_subset(AB, B)));
  }
  SECTION("non-members are rejected") {
    CHECK_THROWS_AS(is_compact(x, point(AB, B, 1)), NotConvex);
  }
  SECTION("every nonempty member is compact, certified by the probe") {
    for (const auto& lat : {B, G3, L3}) {
      auto sp = build_space(AB, lat, {point(AB, lat, 0)});
      for (const auto& m : sp.members()) {
        CHECK(is_compact(sp, m) == is_nonempty(m));
        auto cert = certify_compact(sp, m);
        CHECK(cert.agrees);
        CHECK_FALSE(cert.probe_skipped);
        CHECK(cert.subfamilies_checked > 0);
      }
    }
  }
}

TEST_CASE("polytopes") {
  auto x = bool_chi_a();
  SECTION("nonempty members are their own witness") {
    auto v = is_polytope(x, point(AB, B, 0));
    REQUIRE(v.polytope);
    CHECK(*v.witness == point(AB, B, 0));
  }
  SECTION("bottom is not a polytope") {
    CHECK_FALSE(is_polytope(x, bottom_subset(AB, B)).polytope);
    CHECK_FALSE(polytope_witness_search(x, bottom_subset(AB, B)).polytope);
  }
  SECTION("hull(1_x) is a polytope with witness 1_x") {
    auto h = hull(x, point(AB, B, 1));
    auto v = polytope_witness_search(x, h);
    REQUIRE(v.polytope);
    CHECK(hull(x, *v.witness) == h);
  }
  SECTION("fast path agrees with the witness search on all members") {
    for (const auto& lat : {B, G3, L3}) {
      auto sp = build_space(AB, lat, {point(AB, lat, 0)});
      for (const auto& m : sp.members())
        CHECK(is_polytope(sp, m).polytope ==
              polytope_witness_search(sp, m).polytope);
    }
  }
}

TEST_CASE("finite collapse: polytope = compact = nonempty member") {
  for (const auto& lat : {B, G3, L3}) {
    auto sp = build_space(AB, lat, {point(AB, lat, 0), point(AB, lat, 1)});
    for (const auto& m : sp.members()) {
      const bool ne = is_nonempty(m);
      CHECK(is_compact(sp, m) == ne);
      CHECK(is_polytope(sp, m).polytope == ne);
    }
  }
}

TEST_CASE("subspace") {
  auto x = bool_chi_a();
  SECTION("full carrier gives the same members") {
    std::vector<int> all = {0, 1};
    auto s = subspace(x, all);
    CHECK(s.member_count() == x.member_count());
  }
  SECTION("restriction to {b} collapses chi_a") {
    std::vector<int> yb = {1};
    auto s = subspace(x, yb);
    CHECK(s.member_count() == 2);  // {0, 1}
  }
  SECTION("restriction to {a} collapses chi_a to the top") {
    std::vector<int> ya = {0};
    auto s = subspace(x, ya);
    CHECK(s.member_count() == 2);
    CHECK(verify_space_axioms(s).all_pass());
  }
  SECTION("empty carrier is rejected") {
    CHECK_THROWS_AS(subspace(x, std::vector<int>{}), InvalidSize);
  }
}
