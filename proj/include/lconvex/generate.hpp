#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "lconvex/convex.hpp"
#include "lconvex/order.hpp"

namespace lconvex {

/// Deterministic RNG wrapper: the mt19937_64 stream is pinned by the
/// standard, and bounded draws use plain modulo so results are identical
/// across platforms.
struct Rng {
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  std::uint64_t next(std::uint64_t bound) { return gen() % bound; }
  std::mt19937_64 gen;
};

namespace detail {

/// Closure tables over an enumerated universe of L-subsets, for the
/// mask-based exhaustive space enumeration (universe size <= 64).
struct MaskTables {
  int usize = 0;
  int lsize = 0;
  std::vector<int> meet_idx;  // usize x usize
  std::vector<int> res_idx;   // lsize x usize
  std::uint64_t base = 0;     // bits of 0_X and 1_X

  std::uint64_t closure(std::uint64_t mask) const {
    mask |= base;
    bool grew = true;
    while (grew) {
      grew = false;
      for (int a = 0; a < lsize; ++a)
        for (int i = 0; i < usize; ++i) {
          if (!(mask >> i & 1)) continue;
          const int r = res_idx[a * usize + i];
          if (!(mask >> r & 1)) {
            mask |= std::uint64_t{1} << r;
            grew = true;
          }
        }
      for (int i = 0; i < usize; ++i) {
        if (!(mask >> i & 1)) continue;
        for (int j = i + 1; j < usize; ++j) {
          if (!(mask >> j & 1)) continue;
          const int m = meet_idx[i * usize + j];
          if (!(mask >> m & 1)) {
            mask |= std::uint64_t{1} << m;
            grew = true;
          }
        }
      }
    }
    return mask;
  }
};

inline MaskTables make_mask_tables(const std::vector<LSubset>& univ,
                                   const LatticePtr& lat) {
  MaskTables t;
  t.usize = static_cast<int>(univ.size());
  t.lsize = lat->size();
  auto index_of = [&](const std::vector<Deg>& d) {
    // the universe is in lexicographic order, so the index is the base-|L|
    // value of the degree vector
    int idx = 0;
    for (Deg v : d) idx = idx * lat->size() + v;
    return idx;
  };
  t.meet_idx.resize(static_cast<std::size_t>(t.usize) * t.usize);
  for (int i = 0; i < t.usize; ++i)
    for (int j = 0; j < t.usize; ++j)
      t.meet_idx[i * t.usize + j] = index_of(meet(univ[i], univ[j]).degrees());
  t.res_idx.resize(static_cast<std::size_t>(t.lsize) * t.usize);
  for (int a = 0; a < t.lsize; ++a)
    for (int i = 0; i < t.usize; ++i)
      t.res_idx[a * t.usize + i] =
          index_of(scale_residuum(a, univ[i]).degrees());
  const int bot = 0;
  const int top = t.usize - 1;  // all-top degree vector is last in lex order
  t.base = (std::uint64_t{1} << bot) | (std::uint64_t{1} << top);
  return t;
}

}  // namespace detail

/// Enumerates every L-convex structure on the carrier (universe <= 64
/// L-subsets) by closure BFS with dedup: each closed family is reached by
/// adjoining one generator at a time.  Spaces are delivered in canonical
/// mask order, so the stream is deterministic.  Returns the census count.
template <typename Fn>
long enumerate_all_spaces(const CarrierPtr& car, const LatticePtr& lat,
                          const Budgets& budgets, Fn&& fn) {
  const auto univ = enumerate_subsets(car, lat, budgets);
  if (univ.size() > 64)
    throw BudgetExceeded("space enumeration needs |L|^|X| <= 64, got " +
                         std::to_string(univ.size()));
  const auto tables = detail::make_mask_tables(univ, lat);
  std::set<std::uint64_t> seen;
  std::vector<std::uint64_t> frontier;
  const std::uint64_t start = tables.closure(0);
  seen.insert(start);
  frontier.push_back(start);
  while (!frontier.empty()) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t m : frontier)
      for (int i = 0; i < tables.usize; ++i) {
        if (m >> i & 1) continue;
        const std::uint64_t c = tables.closure(m | (std::uint64_t{1} << i));
        if (seen.insert(c).second) next.push_back(c);
      }
    if (seen.size() > budgets.scan_cap)
      throw BudgetExceeded("space enumeration exceeded the scan budget");
    frontier = std::move(next);
  }
  for (std::uint64_t m : seen) {
    std::vector<LSubset> fam;
    for (int i = 0; i < tables.usize; ++i)
      if (m >> i & 1) fam.push_back(univ[i]);
    fn(LConvexSpace(car, lat, std::move(fam)));
  }
  return static_cast<long>(seen.size());
}

/// Census count for one (lattice, carrier) configuration.
inline long space_census(const CarrierPtr& car, const LatticePtr& lat,
                         const Budgets& budgets = {}) {
  return enumerate_all_spaces(car, lat, budgets, [](const LConvexSpace&) {});
}

/// Seeded sampling: closures of random generator sets.  Identical streams
/// for identical seeds.
template <typename Fn>
void sample_spaces(const CarrierPtr& car, const LatticePtr& lat, int count,
                   std::uint64_t seed, const Budgets& budgets, Fn&& fn) {
  Rng rng(seed);
  const std::uint64_t univ_count =
      checked_pow(static_cast<std::uint64_t>(lat->size()),
                  static_cast<std::uint64_t>(car->size()));
  for (int i = 0; i < count; ++i) {
    const int k = 1 + static_cast<int>(rng.next(3));
    std::vector<LSubset> gens;
    for (int g = 0; g < k; ++g) {
      std::uint64_t pick = rng.next(univ_count);
      std::vector<Deg> d(car->size());
      for (int x = car->size() - 1; x >= 0; --x) {
        d[x] = static_cast<Deg>(pick % lat->size());
        pick /= lat->size();
      }
      gens.emplace_back(car, lat, std::move(d));
    }
    fn(build_space(car, lat, std::move(gens), budgets));
  }
}

/// Enumerates every L-order on the carrier by filtering all off-diagonal
/// degree assignments through the axioms.  Deterministic lexicographic
/// order; returns the census count.
template <typename Fn>
long enumerate_all_orders(const CarrierPtr& car, const LatticePtr& lat,
                          const Budgets& budgets, Fn&& fn) {
  const int n = car->size();
  const int off = n * n - n;
  const std::uint64_t scan =
      checked_pow(static_cast<std::uint64_t>(lat->size()),
                  static_cast<std::uint64_t>(off));
  if (scan > budgets.scan_cap)
    throw BudgetExceeded("order enumeration |L|^(|P|^2-|P|) over budget");
  long count = 0;
  std::vector<Deg> cells(off, 0);
  while (true) {
    std::vector<Deg> e(static_cast<std::size_t>(n) * n, lat->top());
    int c = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) e[i * n + j] = cells[c++];
    try {
      fn(build_order(car, lat, std::move(e)));
      ++count;
    } catch (const OrderAxiomViolation&) {
    }
    int i = off - 1;
    while (i >= 0 && cells[i] == lat->size() - 1) cells[i--] = 0;
    if (i < 0) break;
    ++cells[i];
  }
  return count;
}

/// Seeded sampling of L-orders: e(x,y) = meet over i of A_i(x) -> A_i(y)
/// for random L-subsets A_i (reflexive and transitive by construction),
/// retried until antisymmetry holds.
template <typename Fn>
void sample_orders(const CarrierPtr& car, const LatticePtr& lat, int count,
                   std::uint64_t seed, const Budgets& budgets, Fn&& fn) {
  Rng rng(seed);
  const Lattice& L = *lat;
  const int n = car->size();
  const std::uint64_t univ_count =
      checked_pow(static_cast<std::uint64_t>(lat->size()),
                  static_cast<std::uint64_t>(n));
  (void)budgets;
  int produced = 0;
  int attempts = 0;
  while (produced < count && attempts < count * 200) {
    ++attempts;
    const int k = 1 + static_cast<int>(rng.next(4));
    std::vector<LSubset> gens;
    for (int g = 0; g < k; ++g) {
      std::uint64_t pick = rng.next(univ_count);
      std::vector<Deg> d(n);
      for (int x = n - 1; x >= 0; --x) {
        d[x] = static_cast<Deg>(pick % L.size());
        pick /= L.size();
      }
      gens.emplace_back(car, lat, std::move(d));
    }
    std::vector<Deg> e(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        Deg m = L.top();
        for (const auto& a : gens) m = L.meet(m, L.implies(a[x], a[y]));
        e[x * n + y] = m;
      }
    try {
      fn(build_order(car, lat, std::move(e)));
      ++produced;
    } catch (const OrderAxiomViolation&) {
    }
  }
  if (produced < count)
    throw InternalError("sample_orders: too many antisymmetry rejections");
}

/// Builtin lattice catalogue used by the harness and the CLI.
inline LatticePtr lattice_by_name(const std::string& name) {
  if (name == "bool" || name == "godel2" || name == "lukasiewicz2")
    return make_bool();
  if (name == "diamond") return make_product(make_bool(), make_bool());
  auto chain = [&](const std::string& prefix,
                   ChainKind kind) -> LatticePtr {
    if (name.rfind(prefix, 0) != 0) return nullptr;
    const std::string num = name.substr(prefix.size());
    if (num.empty()) return nullptr;
    for (char ch : num)
      if (!std::isdigit(static_cast<unsigned char>(ch))) return nullptr;
    const int n = std::stoi(num);
    if (n < 2 || n > 64) throw InvalidSize("chain size out of range: " + name);
    return make_chain(n, kind);
  };
  if (auto l = chain("godel", ChainKind::godel)) return l;
  if (auto l = chain("lukasiewicz", ChainKind::lukasiewicz)) return l;
  if (auto l = chain("luk", ChainKind::lukasiewicz)) return l;
  throw ParseError("unknown lattice name '" + name +
                   "' (try bool, godelN, lukasiewiczN, diamond)");
}

/// Default carrier labels x0, x1, ... used by generated instances.
inline CarrierPtr default_carrier(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
  return make_carrier(std::move(labels));
}

}  // namespace lconvex
