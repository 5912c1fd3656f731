#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "lconvex/generate.hpp"
#include "lconvex/sober.hpp"

using namespace lconvex;

namespace {
const LatticePtr B = make_bool();
const LatticePtr G3 = make_chain(3, ChainKind::godel);
const LatticePtr L3 = make_chain(3, ChainKind::lukasiewicz);
}  // namespace

// Census constants computed by the exhaustive generator in this repository
// (closure BFS over all generator sets, deduplicated); they are regression
// pins, not imported values.
TEST_CASE("space census per lattice and carrier") {
  struct Row {
    LatticePtr lat;
    int nx;
    long count;
  };
  const std::vector<Row> rows = {
      {B, 1, 1},     {B, 2, 4},     {B, 3, 45},
      {G3, 1, 2},    {G3, 2, 37},
      {L3, 1, 1},    {L3, 2, 16},
  };
  for (const auto& r : rows) {
    CAPTURE(r.lat->name(), r.nx);
    CHECK(space_census(default_carrier(r.nx), r.lat) == r.count);
  }
}

TEST_CASE("census at the largest envelope point", "[slow]") {
  CHECK(space_census(default_carrier(3), G3) == 10016);
  CHECK(space_census(default_carrier(3), L3) == 7218);
}

TEST_CASE("enumerated spaces are valid and deduplicated") {
  for (const auto& lat : {B, G3, L3}) {
    std::vector<LConvexSpace> all;
    enumerate_all_spaces(default_carrier(2), lat, Budgets{},
                         [&](LConvexSpace sp) { all.push_back(std::move(sp)); });
    for (std::size_t i = 0; i < all.size(); ++i) {
      CHECK(verify_space_axioms(all[i]).all_pass());
      for (std::size_t j = i + 1; j < all.size(); ++j)
        CHECK_FALSE(all[i] == all[j]);
    }
    // the indiscrete and discrete spaces always appear
    bool has_indiscrete = false, has_discrete = false;
    for (const auto& sp : all) {
      if (sp == indiscrete_space(default_carrier(2), lat))
        has_indiscrete = true;
      if (sp == discrete_space(default_carrier(2), lat)) has_discrete = true;
    }
    CHECK(has_indiscrete);
    CHECK(has_discrete);
  }
}

TEST_CASE("space streams are deterministic") {
  auto stream_digest = [&](const LatticePtr& lat) {
    std::ostringstream os;
    enumerate_all_spaces(default_carrier(2), lat, Budgets{},
                         [&](const LConvexSpace& sp) {
                           for (const auto& m : sp.members())
                             os << detail::degree_label(m) << ";";
                           os << "|";
                         });
    return os.str();
  };
  CHECK(stream_digest(G3) == stream_digest(G3));
  auto sample_digest = [&](std::uint64_t seed) {
    std::ostringstream os;
    sample_spaces(default_carrier(3), G3, 20, seed, Budgets{},
                  [&](const LConvexSpace& sp) {
                    os << sp.member_count() << ",";
                  });
    return os.str();
  };
  CHECK(sample_digest(7) == sample_digest(7));
  CHECK(sample_digest(7) != sample_digest(8));
}

TEST_CASE("order census") {
  // Boolean two-point carrier: discrete, a<b, b<a.
  CHECK(enumerate_all_orders(default_carrier(2), B, Budgets{},
                             [](const LOrderedSet&) {}) == 3);
  // one-point carrier over goedel-3: the single trivial order
  CHECK(enumerate_all_orders(default_carrier(1), G3, Budgets{},
                             [](const LOrderedSet&) {}) == 1);
  // three-point Boolean carrier: the 19 labelled posets
  CHECK(enumerate_all_orders(default_carrier(3), B, Budgets{},
                             [](const LOrderedSet&) {}) == 19);
}

TEST_CASE("sampled orders satisfy the axioms and reproduce per seed") {
  std::vector<std::string> sig1, sig2;
  auto collect = [&](std::vector<std::string>& sink) {
    return [&sink](const LOrderedSet& p) {
      std::string s;
      for (Deg d : p.matrix()) s += std::to_string(d);
      sink.push_back(s);
    };
  };
  sample_orders(default_carrier(3), L3, 25, 42, Budgets{}, collect(sig1));
  sample_orders(default_carrier(3), L3, 25, 42, Budgets{}, collect(sig2));
  CHECK(sig1 == sig2);
  CHECK(sig1.size() == 25);
}

TEST_CASE("lattice catalogue") {
  CHECK(lattice_by_name("bool")->size() == 2);
  CHECK(lattice_by_name("godel4")->size() == 4);
  CHECK(lattice_by_name("lukasiewicz5")->size() == 5);
  CHECK(lattice_by_name("luk3")->is_frame() == false);
  CHECK(lattice_by_name("diamond")->size() == 4);
  CHECK_THROWS_AS(lattice_by_name("nonsense"), ParseError);
  CHECK_THROWS_AS(lattice_by_name("godel1"), InvalidSize);
}
