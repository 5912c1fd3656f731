#include <catch2/catch_amalgamated.hpp>

#include "lconvex/order.hpp"

using namespace lconvex;

namespace {
const LatticePtr B = make_bool();
const LatticePtr G3 = make_chain(3, ChainKind::godel);
const LatticePtr L3 = make_chain(3, ChainKind::lukasiewicz);

// crisp two-element chain a < b
LOrderedSet chain2(const LatticePtr& lat) {
  return crisp_order(make_carrier({"a", "b"}), lat,
                     {{true, true}, {false, true}});
}
// crisp two-element antichain
LOrderedSet antichain2(const LatticePtr& lat) {
  return crisp_order(make_carrier({"p", "q"}), lat,
                     {{true, false}, {false, true}});
}

// Closed-form supremum on (L, e_L): join of A(a) (x) a.  Used as an oracle
// against the definitional candidate scan.
Deg el_sup_formula(const LatticePtr& lat, const LSubset& a) {
  Deg r = lat->bot();
  for (int x = 0; x < a.size(); ++x)
    r = lat->join(r, lat->tensor(a[x], static_cast<Deg>(x)));
  return r;
}
}  // namespace

TEST_CASE("build_order validates E1-E3 with witnesses") {
  auto car = make_carrier({"a", "b"});
  // E1 failure
  CHECK_THROWS_AS(build_order(car, B, {0, 0, 0, 1}), OrderAxiomViolation);
  // E3 failure: both directions top
  CHECK_THROWS_AS(build_order(car, B, {1, 1, 1, 1}), OrderAxiomViolation);
  try {
    build_order(car, B, {1, 1, 1, 1});
  } catch (const OrderAxiomViolation& e) {
    CHECK(e.axiom() == 3);
  }
  // E2 failure on a 3-point carrier over goedel-3: e(x,y)=1, e(y,z)=1 but
  // e(x,z)=0.
  auto c3 = make_carrier({"x", "y", "z"});
  CHECK_THROWS_AS(build_order(c3, G3, {2, 2, 0, 0, 2, 2, 0, 0, 2}),
                  OrderAxiomViolation);
}

TEST_CASE("e_L is an L-order and crisp orders embed") {
  for (const auto& lat : {B, G3, L3}) {
    auto p = lattice_order(lat);  // throws on axiom failure
    CHECK(p.size() == lat->size());
    for (int x = 0; x < p.size(); ++x)
      for (int y = 0; y < p.size(); ++y)
        CHECK(p.e(x, y) == lat->implies(x, y));
  }
  CHECK_NOTHROW(chain2(B));
  CHECK_NOTHROW(antichain2(L3));
}

TEST_CASE("down and up sets") {
  auto p = lattice_order(G3);
  SECTION("down(x)(x) = top always") {
    for (int x = 0; x < p.size(); ++x) CHECK(down(p, x)[x] == G3->top());
  }
  SECTION("down(1/2) over goedel-3 is (1, 1, 1/2)") {
    auto d = down(p, 1);
    CHECK(d.degrees() == std::vector<Deg>{2, 2, 1});
  }
  SECTION("up(a) on the crisp chain is chi_{a,b}") {
    auto c = chain2(B);
    CHECK(up(c, 0).degrees() == std::vector<Deg>{1, 1});
  }
}

TEST_CASE("lower and upper sets") {
  auto p = lattice_order(G3);
  for (int x = 0; x < p.size(); ++x) {
    CHECK(is_lower_set(p, down(p, x)));
    CHECK(is_upper_set(p, up(p, x)));
  }
  // constants are both
  for (Deg a = 0; a < G3->size(); ++a) {
    auto c = constant(p.carrier_ptr(), G3, a);
    CHECK(is_lower_set(p, c));
    CHECK(is_upper_set(p, c));
  }
  // chi_{b} on the crisp chain a<b is not a lower set
  auto c2 = chain2(B);
  CHECK_FALSE(is_lower_set(c2, point(c2.carrier_ptr(), B, 1)));
  CHECK(is_upper_set(c2, point(c2.carrier_ptr(), B, 1)));
}

TEST_CASE("supremum and infimum") {
  SECTION("supremum of a point is the point") {
    for (const auto& lat : {B, G3, L3}) {
      auto p = lattice_order(lat);
      for (int x = 0; x < p.size(); ++x) {
        auto s = supremum(p, point(p.carrier_ptr(), lat, x));
        REQUIRE(s.has_value());
        CHECK(*s == x);
        auto i = infimum(p, point(p.carrier_ptr(), lat, x));
        REQUIRE(i.has_value());
        CHECK(*i == x);
      }
    }
  }
  SECTION("on (L, e_L) every subset has the closed-form supremum") {
    for (const auto& lat : {B, G3, L3}) {
      auto p = lattice_order(lat);
      for (const auto& a : enumerate_subsets(p.carrier_ptr(), lat)) {
        auto s = supremum(p, a);
        REQUIRE(s.has_value());
        CHECK(*s == el_sup_formula(lat, a));
      }
    }
  }
  SECTION("two-point antichain has no supremum of chi_{p,q}") {
    auto p = antichain2(B);
    std::vector<int> both = {0, 1};
    CHECK_FALSE(supremum(p, characteristic(p.carrier_ptr(), B, both)));
  }
}

TEST_CASE("order-preserving maps") {
  auto c2 = chain2(B);
  auto id = identity_map(c2.carrier_ptr());
  CHECK(is_order_preserving(id, c2, c2));
  CHECK(is_order_isomorphism(id, c2, c2));
  CarrierMap swap(c2.carrier_ptr(), c2.carrier_ptr(), {1, 0});
  CHECK_FALSE(is_order_preserving(swap, c2, c2));
  CHECK_FALSE(is_order_isomorphism(swap, c2, c2));
  CarrierMap cst(c2.carrier_ptr(), c2.carrier_ptr(), {1, 1});
  CHECK(is_order_preserving(cst, c2, c2));
}

TEST_CASE("join-semilattice predicate") {
  // (L, e_L) is always a join-semilattice
  for (const auto& lat : {B, G3, L3}) CHECK(is_join_semilattice(lattice_order(lat)).ok);
  // the two-point antichain is not; the witness has no supremum
  auto p = antichain2(B);
  auto v = is_join_semilattice(p);
  REQUIRE_FALSE(v.ok);
  REQUIRE(v.witness.has_value());
  CHECK_FALSE(supremum(p, *v.witness));
  // one-point order
  auto one = crisp_order(make_carrier({"x"}), B, {{true}});
  CHECK(is_join_semilattice(one).ok);
}

TEST_CASE("inclusion order space") {
  SECTION("Boolean |X|=1 gives the 2-chain") {
    auto p = inclusion_order_space(make_carrier({"x"}), B);
    REQUIRE(p.size() == 2);
    CHECK(p.e(0, 1) == B->top());
    CHECK(p.e(1, 0) == B->bot());
  }
  SECTION("Boolean |X|=2 gives the diamond") {
    auto p = inclusion_order_space(make_carrier({"x", "y"}), B);
    REQUIRE(p.size() == 4);
    // 01 and 10 are incomparable; 00 below everything, 11 above
    int lo = 0, a = 1, b = 2, hi = 3;
    CHECK(p.e(lo, a) == B->top());
    CHECK(p.e(a, hi) == B->top());
    CHECK(p.e(a, b) == B->bot());
    CHECK(p.e(b, a) == B->bot());
  }
  SECTION("goedel 3-chain |X|=1 is the chain with residuum degrees") {
    auto p = inclusion_order_space(make_carrier({"x"}), G3);
    REQUIRE(p.size() == 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(p.e(i, j) == G3->implies(i, j));
  }
  SECTION("budget guard") {
    Budgets tiny;
    tiny.scan_cap = 2;
    CHECK_THROWS_AS(inclusion_order_space(make_carrier({"x", "y"}), B, tiny),
                    BudgetExceeded);
  }
}

TEST_CASE("supremum uniqueness holds on all generated orders") {
  // Exhaustive over all 2-point orders for the three small lattices: if a
  // supremum exists it is unique (the scan raises InternalError otherwise).
  for (const auto& lat : {B, G3, L3}) {
    auto car = make_carrier({"a", "b"});
    const int n = lat->size();
    for (Deg ab = 0; ab < n; ++ab)
      for (Deg ba = 0; ba < n; ++ba) {
        std::vector<Deg> e = {lat->top(), ab, ba, lat->top()};
        std::optional<LOrderedSet> p;
        try {
          p = build_order(car, lat, e);
        } catch (const OrderAxiomViolation&) {
          continue;
        }
        for (const auto& a : enumerate_subsets(car, lat))
          CHECK_NOTHROW(supremum(*p, a));
      }
  }
}
