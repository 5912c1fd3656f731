#include <catch2/catch_amalgamated.hpp>

#include "lconvex/lattice.hpp"

using namespace lconvex;

namespace {

// Independent brute-force residuum: the join of {c | a (x) c <= b}, computed
// from the raw tables without the Lattice helpers.
Deg brute_residuum(const Lattice& L, Deg a, Deg b) {
  Deg r = L.bot();
  for (Deg c = 0; c < L.size(); ++c)
    if (L.leq(L.tensor(a, c), b)) r = L.join(r, c);
  return r;
}

std::vector<std::vector<bool>> chain_leq(int n) {
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) leq[a][b] = a <= b;
  return leq;
}

}  // namespace

TEST_CASE("two-element chain is the Boolean lattice") {
  auto b = make_bool();
  REQUIRE(b->size() == 2);
  CHECK(b->bot() == 0);
  CHECK(b->top() == 1);
  // tensor = meet = classical conjunction, residuum = implication
  CHECK(b->tensor(1, 1) == 1);
  CHECK(b->tensor(1, 0) == 0);
  CHECK(b->implies(1, 0) == 0);
  CHECK(b->implies(0, 0) == 1);
  CHECK(b->implies(0, 1) == 1);
  CHECK(b->implies(1, 1) == 1);
  // both chain kinds coincide on {0,1}
  auto l = make_chain(2, ChainKind::lukasiewicz);
  for (Deg a = 0; a < 2; ++a)
    for (Deg c = 0; c < 2; ++c) {
      CHECK(b->tensor(a, c) == l->tensor(a, c));
      CHECK(b->implies(a, c) == l->implies(a, c));
    }
}

TEST_CASE("lukasiewicz 3-chain residuum values") {
  auto l = make_chain(3, ChainKind::lukasiewicz);
  // 1/2 (x) 1/2 = max(0, 1/2 + 1/2 - 1) = 0
  CHECK(l->tensor(1, 1) == 0);
  // residuum(1/2, 0): join{c | 1/2 (x) c <= 0} = 1/2
  CHECK(l->implies(1, 0) == 1);
  CHECK(l->implies(1, 0) == brute_residuum(*l, 1, 0));
  CHECK(brute_residuum(*l, 1, 0) == 1);  // index 1 is the middle element
  // residuum(1/2, 1/2) = 1
  CHECK(l->implies(1, 1) == 2);
}

TEST_CASE("godel 3-chain residuum values") {
  auto g = make_chain(3, ChainKind::godel);
  CHECK(g->tensor(1, 1) == 1);           // 1/2 (x) 1/2 = 1/2
  CHECK(g->implies(2, 1) == 1);          // residuum(1, 1/2) = 1/2
  CHECK(g->implies(1, 0) == 0);          // goedel implication drops to b
  CHECK(g->implies(0, 1) == g->top());   // a <= b gives top
  for (Deg a = 0; a < 3; ++a)
    for (Deg b = 0; b < 3; ++b) CHECK(g->implies(a, b) == brute_residuum(*g, a, b));
}

TEST_CASE("residuum basics hold on every builtin") {
  std::vector<LatticePtr> lats = {
      make_bool(), make_chain(3, ChainKind::godel),
      make_chain(3, ChainKind::lukasiewicz), make_chain(4, ChainKind::godel),
      make_product(make_bool(), make_bool())};
  for (const auto& l : lats) {
    // residuum(top, a) = a
    for (Deg a = 0; a < l->size(); ++a) CHECK(l->implies(l->top(), a) == a);
    // boolean-style: residuum(1,0) = 0
    CHECK(l->implies(l->top(), l->bot()) == l->bot());
    // adjunction exhaustively
    for (Deg a = 0; a < l->size(); ++a)
      for (Deg b = 0; b < l->size(); ++b)
        for (Deg c = 0; c < l->size(); ++c)
          CHECK(l->leq(l->tensor(a, c), b) == l->leq(c, l->implies(a, b)));
    // antitone in the first argument, monotone in the second
    for (Deg a = 0; a < l->size(); ++a)
      for (Deg b = 0; b < l->size(); ++b)
        for (Deg c = 0; c < l->size(); ++c) {
          if (l->leq(a, b))
            CHECK(l->leq(l->implies(b, c), l->implies(a, c)));
          if (l->leq(b, c))
            CHECK(l->leq(l->implies(a, b), l->implies(a, c)));
        }
    // a <= b iff residuum(a,b) = top
    for (Deg a = 0; a < l->size(); ++a)
      for (Deg b = 0; b < l->size(); ++b)
        CHECK(l->leq(a, b) == (l->implies(a, b) == l->top()));
  }
}

TEST_CASE("build_lattice rejects broken tables with witnesses") {
  // 3-chain table with 1/2 (x) 1/2 = 1 while 1 (x) 1/2 = 1/2: commutative,
  // associative and unital, but not monotone, so join-distribution fails
  // (1/2 (x) (1/2 v 1) = 1/2 yet (1/2 (x) 1/2) v (1/2 (x) 1) = 1).
  std::vector<std::vector<Deg>> bad = {{0, 0, 0}, {0, 2, 1}, {0, 1, 2}};
  CHECK_THROWS_AS(build_lattice("bad", chain_leq(3), bad), NotDistributive);

  // order with a missing join: two incomparable elements and no upper bound
  std::vector<std::vector<bool>> noJoin = {
      {true, false, false},
      {false, true, false},
      {false, false, true}};
  std::vector<std::vector<Deg>> tns = {{0, 0, 0}, {0, 1, 0}, {0, 0, 2}};
  CHECK_THROWS_AS(build_lattice("bad", noJoin, tns), NotALattice);

  // unit failure: tensor constant bottom
  std::vector<std::vector<Deg>> zero = {{0, 0}, {0, 0}};
  CHECK_THROWS_AS(build_lattice("bad", chain_leq(2), zero), NotAMonoid);

  CHECK_THROWS_AS(make_chain(1, ChainKind::godel), InvalidSize);
}

TEST_CASE("non-distributive tensor is rejected") {
  // Diamond M2: 0 < a,b < 1 with a join-breaking tensor.
  std::vector<std::vector<bool>> leq = {
      {true, true, true, true},
      {false, true, false, true},
      {false, false, true, true},
      {false, false, false, true}};
  // tensor: a (x) (a v b) should be a (x) 1 = a, but (a(x)a) v (a(x)b)
  // differs if a(x)a = 0 while a(x)1 = a.
  std::vector<std::vector<Deg>> tns = {
      {0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 2, 2}, {0, 1, 2, 3}};
  CHECK_THROWS_AS(build_lattice("m2bad", leq, tns), NotDistributive);
}

TEST_CASE("verify_lattice_laws passes on chains and products") {
  std::vector<LatticePtr> lats = {
      make_bool(),
      make_chain(3, ChainKind::godel),
      make_chain(3, ChainKind::lukasiewicz),
      make_chain(4, ChainKind::godel),
      make_chain(4, ChainKind::lukasiewicz),
      make_chain(5, ChainKind::godel),
      make_chain(5, ChainKind::lukasiewicz),
      make_product(make_bool(), make_chain(3, ChainKind::godel)),
  };
  for (const auto& l : lats) {
    auto rep = verify_lattice_laws(*l);
    REQUIRE(rep.entries.size() == 6);
    for (const auto& e : rep.entries) {
      INFO(l->name() << " " << e.law << " " << e.witness);
      CHECK(e.pass);
    }
  }
}

TEST_CASE("law (4) spot values on the goedel 4-chain") {
  auto g = make_chain(4, ChainKind::godel);
  for (Deg a = 0; a < 4; ++a)
    for (Deg b = 0; b < 4; ++b)
      for (Deg c = 0; c < 4; ++c)
        CHECK(g->implies(a, g->implies(b, c)) ==
              g->implies(g->tensor(a, b), c));
}

TEST_CASE("law (3) spot value on the lukasiewicz 3-chain") {
  auto l = make_chain(3, ChainKind::lukasiewicz);
  // 1/2 (x) (1/2 -> 0) = 1/2 (x) 1/2 = 0 <= 0
  Deg lhs = l->tensor(1, l->implies(1, 0));
  CHECK(lhs == 0);
  CHECK(l->leq(lhs, 0));
}

TEST_CASE("product lattice structure") {
  auto d = make_product(make_bool(), make_bool());
  REQUIRE(d->size() == 4);
  CHECK(d->bot() == 0);
  CHECK(d->top() == 3);
  // (1,0) and (0,1) are incomparable
  CHECK_FALSE(d->leq(2, 1));
  CHECK_FALSE(d->leq(1, 2));
  CHECK_FALSE(d->is_chain());
  // componentwise meet-tensor
  CHECK(d->tensor(2, 1) == 0);
  CHECK(d->tensor(3, 2) == 2);

  auto p6 = make_product(make_bool(), make_chain(3, ChainKind::godel));
  REQUIRE(p6->size() == 6);
  CHECK(p6->top() == 5);
  CHECK(p6->label(5) == "(1,1)");
}

TEST_CASE("degrees from different lattices are rejected") {
  auto a = make_bool();
  auto b = make_bool();
  CHECK(a->id() != b->id());
  CHECK_THROWS_AS(require_same_lattice(*a, *b), LatticeMismatch);
}

TEST_CASE("frame and chain flags") {
  CHECK(make_chain(3, ChainKind::godel)->is_frame());
  CHECK_FALSE(make_chain(3, ChainKind::lukasiewicz)->is_frame());
  CHECK(make_chain(5, ChainKind::godel)->is_chain());
  CHECK(make_product(make_bool(), make_bool())->is_frame());
}
