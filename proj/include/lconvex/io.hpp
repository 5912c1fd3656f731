#pragma once

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "lconvex/generate.hpp"
#include "lconvex/scott.hpp"
#include "lconvex/sober.hpp"

namespace lconvex {

using Json = nlohmann::ordered_json;

namespace detail {

/// Lines of a file with '#' comments stripped and blanks dropped.
inline std::vector<std::vector<std::string>> tokenized_lines(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto pos = line.find('#'); pos != std::string::npos)
      line.erase(pos);
    std::istringstream is(line);
    std::vector<std::string> toks;
    std::string t;
    while (is >> t) toks.push_back(t);
    if (!toks.empty()) out.push_back(std::move(toks));
  }
  return out;
}

inline Deg parse_degree(const std::string& tok, const Lattice& lat) {
  for (Deg d = 0; d < lat.size(); ++d)
    if (lat.label(d) == tok) return d;
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used == tok.size() && v >= 0 && v < lat.size()) return v;
  } catch (...) {
  }
  throw ParseError("'" + tok + "' is neither a degree label nor an index");
}

}  // namespace detail

struct ParsedLattice {
  std::string name;
  LatticePtr lattice;
};

/// Lattice file: `lattice <name> <size>`, optional `labels ...`, `leq i j`
/// lines (covering pairs or the full relation; the reflexive-transitive
/// closure is taken), then `tensor` followed by <size> rows.
inline ParsedLattice parse_lattice_file(const std::string& path) {
  auto lines = detail::tokenized_lines(path);
  if (lines.empty() || lines[0].size() != 3 || lines[0][0] != "lattice")
    throw ParseError(path + ": expected header 'lattice <name> <size>'");
  const std::string name = lines[0][1];
  int n = 0;
  try {
    n = std::stoi(lines[0][2]);
  } catch (...) {
    throw ParseError(path + ": bad lattice size '" + lines[0][2] + "'");
  }
  if (n < 1 || n > 64) throw ParseError(path + ": lattice size out of range");

  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> pairs;
  std::size_t i = 1;
  auto elem_index = [&](const std::string& tok) -> int {
    for (std::size_t k = 0; k < labels.size(); ++k)
      if (labels[k] == tok) return static_cast<int>(k);
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used == tok.size() && v >= 0 && v < n) return v;
    } catch (...) {
    }
    throw ParseError(path + ": unknown element '" + tok + "'");
  };
  for (; i < lines.size() && lines[i][0] != "tensor"; ++i) {
    const auto& t = lines[i];
    if (t[0] == "labels") {
      if (static_cast<int>(t.size()) != n + 1)
        throw ParseError(path + ": labels line needs " + std::to_string(n) +
                         " entries");
      labels.assign(t.begin() + 1, t.end());
    } else if (t[0] == "leq") {
      if (t.size() != 3) throw ParseError(path + ": leq line needs two args");
      pairs.emplace_back(elem_index(t[1]), elem_index(t[2]));
    } else {
      throw ParseError(path + ": unexpected line '" + t[0] + "'");
    }
  }
  if (i >= lines.size())
    throw ParseError(path + ": missing 'tensor' block");
  ++i;
  if (lines.size() - i < static_cast<std::size_t>(n))
    throw ParseError(path + ": tensor block needs " + std::to_string(n) +
                     " rows");

  // reflexive-transitive closure of the listed pairs
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a) leq[a][a] = true;
  for (auto [a, b] : pairs) leq[a][b] = true;
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (leq[a][k] && leq[k][b]) leq[a][b] = true;

  std::vector<std::vector<Deg>> tensor(n, std::vector<Deg>(n));
  for (int r = 0; r < n; ++r) {
    const auto& row = lines[i + r];
    if (static_cast<int>(row.size()) != n)
      throw ParseError(path + ": tensor row " + std::to_string(r) + " needs " +
                       std::to_string(n) + " entries");
    for (int c = 0; c < n; ++c) tensor[r][c] = elem_index(row[c]);
  }
  return {name, build_lattice(name, leq, tensor, labels)};
}

/// A lattice reference is a file path (tried as given, then relative to the
/// referencing file) or a builtin name like bool, godel3, lukasiewicz4.
inline LatticePtr resolve_lattice_ref(const std::string& ref,
                                      const std::string& referencing_file) {
  namespace fs = std::filesystem;
  if (fs::exists(ref)) return parse_lattice_file(ref).lattice;
  const auto sibling = fs::path(referencing_file).parent_path() / ref;
  if (fs::exists(sibling)) return parse_lattice_file(sibling.string()).lattice;
  return lattice_by_name(ref);
}

struct ParsedOrder {
  std::string name;
  LOrderedSet order;
};

/// Order file: `order <name> over <lattice>`, `carrier <labels...>`, then
/// `e` followed by one row of degrees per element.
inline ParsedOrder parse_order_file(const std::string& path) {
  auto lines = detail::tokenized_lines(path);
  if (lines.empty() || lines[0].size() != 4 || lines[0][0] != "order" ||
      lines[0][2] != "over")
    throw ParseError(path + ": expected header 'order <name> over <lattice>'");
  auto lat = resolve_lattice_ref(lines[0][3], path);
  if (lines.size() < 2 || lines[1][0] != "carrier" || lines[1].size() < 2)
    throw ParseError(path + ": expected 'carrier <labels...>'");
  auto car =
      make_carrier({lines[1].begin() + 1, lines[1].end()});
  const int n = car->size();
  if (lines.size() < 3 || lines[2][0] != "e")
    throw ParseError(path + ": expected 'e' block");
  if (lines.size() - 3 < static_cast<std::size_t>(n))
    throw ParseError(path + ": e block needs " + std::to_string(n) + " rows");
  std::vector<Deg> e;
  for (int r = 0; r < n; ++r) {
    const auto& row = lines[3 + r];
    if (static_cast<int>(row.size()) != n)
      throw ParseError(path + ": e row " + std::to_string(r) + " needs " +
                       std::to_string(n) + " entries");
    for (const auto& tok : row) e.push_back(detail::parse_degree(tok, *lat));
  }
  return {lines[0][1], build_order(car, lat, std::move(e))};
}

struct ParsedSpace {
  std::string name;
  LConvexSpace space;
  bool closed = false;  // the file asserted the family is already closed
};

/// Space file: `space <name> over <lattice>`, `carrier <labels...>`, one
/// `subset <name>: x=d ...` line per generator (omitted points are bottom),
/// and an optional `closed` line asserting the listed family is complete
/// (then the family is taken as is and only verified).
inline ParsedSpace parse_space_file(const std::string& path,
                                    const Budgets& budgets = {},
                                    bool force_closed = false) {
  auto lines = detail::tokenized_lines(path);
  if (lines.empty() || lines[0].size() != 4 || lines[0][0] != "space" ||
      lines[0][2] != "over")
    throw ParseError(path + ": expected header 'space <name> over <lattice>'");
  auto lat = resolve_lattice_ref(lines[0][3], path);
  if (lines.size() < 2 || lines[1][0] != "carrier" || lines[1].size() < 2)
    throw ParseError(path + ": expected 'carrier <labels...>'");
  auto car = make_carrier({lines[1].begin() + 1, lines[1].end()});

  std::vector<LSubset> gens;
  bool closed = false;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const auto& t = lines[i];
    if (t[0] == "closed") {
      closed = true;
      continue;
    }
    if (t[0] != "subset")
      throw ParseError(path + ": unexpected line '" + t[0] + "'");
    // subset <name>: x=d ...   (the colon may stick to the name)
    std::size_t first;
    if (t.size() >= 2 && t[1].size() > 1 && t[1].back() == ':')
      first = 2;
    else if (t.size() >= 3 && t[2] == ":")
      first = 3;
    else
      throw ParseError(path + ": expected 'subset <name>: x=degree ...'");
    std::vector<Deg> d(car->size(), lat->bot());
    for (std::size_t k = first; k < t.size(); ++k) {
      const auto eq = t[k].find('=');
      if (eq == std::string::npos)
        throw ParseError(path + ": expected x=degree, got '" + t[k] + "'");
      const std::string lx = t[k].substr(0, eq);
      const int x = car->find(lx);
      if (x < 0) throw ParseError(path + ": unknown carrier label '" + lx + "'");
      d[x] = detail::parse_degree(t[k].substr(eq + 1), *lat);
    }
    gens.emplace_back(car, lat, std::move(d));
  }
  if (closed || force_closed)
    return {lines[0][1], LConvexSpace(car, lat, std::move(gens)), true};
  return {lines[0][1], build_space(car, lat, std::move(gens), budgets), false};
}

// -- report serialization -----------------------------------------------

inline Json lsubset_json(const LSubset& a) {
  Json arr = Json::array();
  for (int x = 0; x < a.size(); ++x)
    arr.push_back(a.carrier().label(x) + "=" + a.lattice().label(a[x]));
  return arr;
}

inline Json law_report_json(const LawReport& rep) {
  Json arr = Json::array();
  for (const auto& e : rep.entries) {
    Json j;
    j["law"] = e.law;
    j["pass"] = e.pass;
    if (!e.witness.empty()) j["witness"] = e.witness;
    arr.push_back(std::move(j));
  }
  return arr;
}

inline Json axiom_report_json(const AxiomReport& rep) {
  Json arr = Json::array();
  for (const auto& e : rep.entries) {
    Json j;
    j["axiom"] = e.axiom;
    j["pass"] = e.pass;
    if (!e.note.empty()) j["note"] = e.note;
    if (!e.witness.empty()) j["witness"] = e.witness;
    arr.push_back(std::move(j));
  }
  return arr;
}

inline Json sober_verdict_json(const SoberVerdict& v) {
  Json j;
  j["sober"] = v.sober;
  j["injective_point_hulls"] = v.injective;
  j["onto_nonempty_members"] = v.onto_nonempty;
  j["oracle"] = v.oracle_ran ? "ran" : "skipped (budget)";
  if (v.oracle_ran) j["oracle_cases"] = v.oracle_cases;
  if (v.witness) {
    j["witness"] = lsubset_json(*v.witness);
    j["witness_points"] = v.witness_points;
  }
  return j;
}

/// The structured sobrification report: verdicts, X^F points with
/// provenance, and the xi table.
inline Json sobrification_json(const std::string& space_name,
                               const LConvexSpace& x,
                               const SobrificationResult& res,
                               const SoberVerdict& sober_x) {
  Json j;
  j["space"] = space_name;
  j["lattice"] = x.lattice().name();
  j["carrier"] = x.carrier().labels();
  j["members"] = x.member_count();
  Json verdicts;
  verdicts["space_axioms_pass"] = verify_space_axioms(x).all_pass();
  verdicts["s0"] = is_s0(x);
  verdicts["sober"] = sober_verdict_json(sober_x);
  verdicts["xi_convexity_preserving"] = true;  // asserted by construction
  verdicts["xi_convex_homeomorphism"] =
      is_convex_homeomorphism(res.xi, x, res.xf_space);
  verdicts["finite_collapse_xf_equals_cp"] = res.finite_collapse;
  verdicts["definitional_closure"] =
      res.definitional_ran ? (res.definitional_agrees ? "agrees" : "DISAGREES")
                           : "skipped (budget)";
  verdicts["exhaustive_closure"] =
      res.exhaustive_ran ? (res.exhaustive_agrees ? "agrees" : "DISAGREES")
                         : "skipped (budget)";
  j["verdicts"] = std::move(verdicts);
  Json points = Json::array();
  for (std::size_t i = 0; i < res.provenance.size(); ++i) {
    Json p;
    p["label"] = res.xf_space.carrier().label(static_cast<int>(i));
    p["denotes"] = lsubset_json(res.provenance[i]);
    points.push_back(std::move(p));
  }
  j["xf_points"] = std::move(points);
  Json xi;
  for (int i = 0; i < x.carrier().size(); ++i)
    xi[x.carrier().label(i)] = res.xf_space.carrier().label(res.xi(i));
  j["xi"] = std::move(xi);
  return j;
}

inline Json order_json(const LOrderedSet& p) {
  Json j;
  j["lattice"] = p.lattice().name();
  j["carrier"] = p.carrier().labels();
  Json rows = Json::array();
  for (int x = 0; x < p.size(); ++x) {
    Json row = Json::array();
    for (int y = 0; y < p.size(); ++y)
      row.push_back(p.lattice().label(p.e(x, y)));
    rows.push_back(std::move(row));
  }
  j["e"] = std::move(rows);
  return j;
}

inline Json completion_json(const std::string& order_name,
                            const LOrderedSet& p,
                            const CompletionResult& res) {
  Json j;
  j["order"] = order_name;
  j["lattice"] = p.lattice().name();
  j["carrier"] = p.carrier().labels();
  j["scott_member_count"] = res.scott_space.member_count();
  Json verdicts;
  verdicts["xi_scott_convexity_preserving"] = res.xi_scott_cp;
  verdicts["join_semilattice"] =
      res.join_semilattice_skipped
          ? Json("skipped (budget)")
          : Json(res.join_semilattice_verified);
  verdicts["families_equal_c_equals_sigma"] =
      res.families_checked ? Json(res.families_equal)
                           : Json("skipped (budget)");
  verdicts["finite_collapse_xf_equals_cp"] = res.underlying.finite_collapse;
  j["verdicts"] = std::move(verdicts);
  Json points = Json::array();
  for (std::size_t i = 0; i < res.underlying.provenance.size(); ++i) {
    Json pt;
    pt["label"] =
        res.completion_order.carrier().label(static_cast<int>(i));
    pt["denotes"] = lsubset_json(res.underlying.provenance[i]);
    points.push_back(std::move(pt));
  }
  j["completion_points"] = std::move(points);
  Json xi;
  for (int i = 0; i < p.size(); ++i)
    xi[p.carrier().label(i)] =
        res.completion_order.carrier().label(res.xi(i));
  j["xi"] = std::move(xi);
  j["completion_order"] = order_json(res.completion_order);
  return j;
}

inline void write_text_file(const std::string& path,
                            const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << contents;
}

}  // namespace lconvex
