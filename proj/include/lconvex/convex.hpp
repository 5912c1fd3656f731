#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "lconvex/fuzzy.hpp"
#include "lconvex/order.hpp"

namespace lconvex {

/// A stratified L-convex space on a finite carrier: the family of convex
/// sets is stored extensionally, deduplicated and canonically sorted, so
/// space equality is list equality.
///
/// Axioms: C1 both constants are members; C2 directed joins stay inside
/// (automatic for a finite family, certified by the probe in
/// verify_space_axioms); C3 all meets stay inside; C4 a->C stays inside.
class LConvexSpace {
 public:
  LConvexSpace(CarrierPtr car, LatticePtr lat, std::vector<LSubset> members)
      : car_(std::move(car)), lat_(std::move(lat)),
        members_(std::move(members)) {
    for (const auto& m : members_) {
      require_same_lattice(*lat_, m.lattice());
      require_same_carrier(*car_, m.carrier());
    }
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()),
                   members_.end());
  }

  const Carrier& carrier() const { return *car_; }
  const CarrierPtr& carrier_ptr() const { return car_; }
  const Lattice& lattice() const { return *lat_; }
  const LatticePtr& lattice_ptr() const { return lat_; }
  const std::vector<LSubset>& members() const { return members_; }
  int member_count() const { return static_cast<int>(members_.size()); }

  /// Index of a member with the same degree vector, -1 when absent.
  int member_index(const LSubset& s) const {
    auto it = std::lower_bound(
        members_.begin(), members_.end(), s,
        [](const LSubset& a, const LSubset& b) {
          return a.degrees() < b.degrees();
        });
    if (it != members_.end() && it->degrees() == s.degrees())
      return static_cast<int>(it - members_.begin());
    return -1;
  }
  bool contains(const LSubset& s) const { return member_index(s) >= 0; }

  friend bool operator==(const LConvexSpace& a, const LConvexSpace& b) {
    return a.lat_.get() == b.lat_.get() && *a.car_ == *b.car_ &&
           a.members_ == b.members_;
  }

 private:
  CarrierPtr car_;
  LatticePtr lat_;
  std::vector<LSubset> members_;
};

namespace detail {

/// Closure of a generator family under binary meets and residuum scaling,
/// with both constants adjoined.  Both steps are monotone and inflationary,
/// so the round order cannot change the fixpoint; `meets_first` exists for
/// the order-permutation regression test.
inline std::vector<LSubset> close_family(const CarrierPtr& car,
                                         const LatticePtr& lat,
                                         std::vector<LSubset> fam,
                                         const Budgets& budgets,
                                         bool meets_first = true) {
  fam.push_back(bottom_subset(car, lat));
  fam.push_back(top_subset(car, lat));
  std::sort(fam.begin(), fam.end());
  fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
  if (fam.size() > budgets.family_cap)
    throw BudgetExceeded("convex closure exceeded family cap " +
                         std::to_string(budgets.family_cap));

  auto contains = [&](const LSubset& s) {
    return std::binary_search(fam.begin(), fam.end(), s);
  };
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<LSubset> fresh;
    auto meets_pass = [&] {
      for (std::size_t i = 0; i < fam.size(); ++i)
        for (std::size_t j = i + 1; j < fam.size(); ++j) {
          LSubset m = meet(fam[i], fam[j]);
          if (!contains(m)) fresh.push_back(std::move(m));
        }
    };
    auto residuum_pass = [&] {
      for (Deg a = 0; a < lat->size(); ++a)
        for (const auto& c : fam) {
          LSubset r = scale_residuum(a, c);
          if (!contains(r)) fresh.push_back(std::move(r));
        }
    };
    if (meets_first) {
      meets_pass();
      residuum_pass();
    } else {
      residuum_pass();
      meets_pass();
    }
    if (!fresh.empty()) {
      grew = true;
      fam.insert(fam.end(), fresh.begin(), fresh.end());
      std::sort(fam.begin(), fam.end());
      fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
      if (fam.size() > budgets.family_cap)
        throw BudgetExceeded("convex closure exceeded family cap " +
                             std::to_string(budgets.family_cap));
    }
  }
  return fam;
}

}  // namespace detail

/// The smallest L-convex structure containing the generators: adjoins the
/// constants and closes under binary meets and a->(-) to fixpoint.
inline LConvexSpace build_space(const CarrierPtr& car, const LatticePtr& lat,
                                std::vector<LSubset> generators,
                                const Budgets& budgets = {}) {
  for (const auto& g : generators) {
    require_same_lattice(*lat, g.lattice());
    require_same_carrier(*car, g.carrier());
  }
  auto fam =
      detail::close_family(car, lat, std::move(generators), budgets, true);
  return LConvexSpace(car, lat, std::move(fam));
}

/// The indiscrete space {0_X, 1_X}.
inline LConvexSpace indiscrete_space(const CarrierPtr& car,
                                     const LatticePtr& lat) {
  return build_space(car, lat, {});
}

/// The discrete space: all of L^X.
inline LConvexSpace discrete_space(const CarrierPtr& car,
                                   const LatticePtr& lat,
                                   const Budgets& budgets = {}) {
  return LConvexSpace(car, lat, enumerate_subsets(car, lat, budgets));
}

struct AxiomEntry {
  std::string axiom;
  bool pass = true;
  std::string note;     // e.g. probe accounting
  std::string witness;  // nonempty on failure
};

struct AxiomReport {
  std::vector<AxiomEntry> entries;
  bool all_pass() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
};

/// Re-checks C1-C4 on an extensionally given family.  C2 is certified by
/// the finite-family maximum argument (every finite directed subfamily
/// contains its join) plus an exhaustive directed-subfamily probe up to
/// the configured size, skipped with a note when the subfamily count
/// exceeds the scan budget.
inline AxiomReport verify_space_axioms(const LConvexSpace& x,
                                       const Budgets& budgets = {}) {
  AxiomReport rep;
  const auto& mem = x.members();
  const Lattice& L = x.lattice();

  {
    AxiomEntry e{"C1 constants", true, "", ""};
    if (!x.contains(bottom_subset(x.carrier_ptr(), x.lattice_ptr()))) {
      e.pass = false;
      e.witness = "0_X missing";
    } else if (!x.contains(top_subset(x.carrier_ptr(), x.lattice_ptr()))) {
      e.pass = false;
      e.witness = "1_X missing";
    }
    rep.entries.push_back(std::move(e));
  }
  {
    AxiomEntry e{"C2 directed joins", true, "", ""};
    std::uint64_t count = 1, n = mem.size();
    for (int k = 1; k <= budgets.directed_probe; ++k) {
      std::uint64_t c = 1;
      for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
      count += c;
    }
    if (count > budgets.scan_cap) {
      e.note = "probe skipped (subfamily count " + std::to_string(count) +
               " over budget); maximum argument certifies C2";
    } else {
      long probed = 0;
      detail::for_each_subset_upto(
          static_cast<int>(mem.size()), budgets.directed_probe,
          [&](std::span<const int> pick) {
            if (!e.pass || !detail::is_directed(mem, pick)) return;
            ++probed;
            LSubset dj = bottom_subset(x.carrier_ptr(), x.lattice_ptr());
            for (int i : pick) dj = join(dj, mem[i]);
            // Finite directed families contain their join.
            bool is_member_of_pick = false;
            for (int i : pick)
              if (mem[i].degrees() == dj.degrees()) is_member_of_pick = true;
            if (!is_member_of_pick || !x.contains(dj)) {
              e.pass = false;
              e.witness = "directed subfamily of size " +
                          std::to_string(pick.size()) +
                          " with join outside the family";
            }
          });
      e.note = "probe over " + std::to_string(probed) +
               " directed subfamilies of size <= " +
               std::to_string(budgets.directed_probe);
    }
    rep.entries.push_back(std::move(e));
  }
  {
    AxiomEntry e{"C3 meets", true, "", ""};
    for (std::size_t i = 0; i < mem.size() && e.pass; ++i)
      for (std::size_t j = i; j < mem.size(); ++j)
        if (!x.contains(meet(mem[i], mem[j]))) {
          e.pass = false;
          e.witness = "meet of " + mem[i].to_string() + " and " +
                      mem[j].to_string() + " missing";
          break;
        }
    // Empty meet = top constant, already required by C1.
    rep.entries.push_back(std::move(e));
  }
  {
    AxiomEntry e{"C4 residuum scaling", true, "", ""};
    for (Deg a = 0; a < L.size() && e.pass; ++a)
      for (const auto& c : mem)
        if (!x.contains(scale_residuum(a, c))) {
          e.pass = false;
          e.witness = L.label(a) + " -> " + c.to_string() + " missing";
          break;
        }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

/// The hull operator: the meet of all members above A.  By C3 the result is
/// a member and it is the least convex superset.
inline LSubset hull(const LConvexSpace& x, const LSubset& a) {
  require_same_lattice(x.lattice(), a.lattice());
  require_same_carrier(x.carrier(), a.carrier());
  if (mutated(Mutation::hull_join_supersets)) {
    LSubset r = bottom_subset(x.carrier_ptr(), x.lattice_ptr());
    for (const auto& m : x.members())
      if (pointwise_leq(a, m)) r = join(r, m);
    return r;
  }
  LSubset r = top_subset(x.carrier_ptr(), x.lattice_ptr());
  for (const auto& m : x.members())
    if (pointwise_leq(a, m)) r = meet(r, m);
  return r;
}

/// f is convexity-preserving iff preimages of convex sets are convex.
inline bool is_convexity_preserving(const CarrierMap& f,
                                    const LConvexSpace& x,
                                    const LConvexSpace& y) {
  require_same_carrier(f.source(), x.carrier());
  require_same_carrier(f.target(), y.carrier());
  require_same_lattice(x.lattice(), y.lattice());
  for (const auto& b : y.members())
    if (!x.contains(zadeh_backward(f, b))) return false;
  return true;
}

/// f is convex-to-convex iff forward images of convex sets are convex.
inline bool is_convex_to_convex(const CarrierMap& f, const LConvexSpace& x,
                                const LConvexSpace& y) {
  require_same_carrier(f.source(), x.carrier());
  require_same_carrier(f.target(), y.carrier());
  require_same_lattice(x.lattice(), y.lattice());
  for (const auto& a : x.members())
    if (!y.contains(zadeh_forward(f, a))) return false;
  return true;
}

inline bool is_convex_homeomorphism(const CarrierMap& f,
                                    const LConvexSpace& x,
                                    const LConvexSpace& y) {
  return f.is_bijective() && is_convexity_preserving(f, x, y) &&
         is_convex_to_convex(f, x, y);
}

/// A carrier map bundled with its source and target spaces, with lazily
/// cached verdicts.  Cached verdicts always equal a fresh recomputation.
class SpaceMap {
 public:
  SpaceMap(CarrierMap map, LConvexSpace source, LConvexSpace target)
      : map_(std::move(map)), src_(std::move(source)),
        dst_(std::move(target)) {
    require_same_carrier(map_.source(), src_.carrier());
    require_same_carrier(map_.target(), dst_.carrier());
  }

  const CarrierMap& map() const { return map_; }
  const LConvexSpace& source() const { return src_; }
  const LConvexSpace& target() const { return dst_; }

  bool convexity_preserving() const {
    if (!cp_) cp_ = is_convexity_preserving(map_, src_, dst_);
    return *cp_;
  }
  bool convex_to_convex() const {
    if (!c2c_) c2c_ = is_convex_to_convex(map_, src_, dst_);
    return *c2c_;
  }
  bool convex_homeomorphism() const {
    return map_.is_bijective() && convexity_preserving() && convex_to_convex();
  }

 private:
  CarrierMap map_;
  LConvexSpace src_, dst_;
  mutable std::optional<bool> cp_, c2c_;
};

/// Hull characterization of convexity preservation:
/// f->(co_X(A)) <= co_Y(f->(A)) for every A in L^X.
inline bool hull_image_characterization(const CarrierMap& f,
                                        const LConvexSpace& x,
                                        const LConvexSpace& y,
                                        const Budgets& budgets = {}) {
  for (const auto& a :
       enumerate_subsets(x.carrier_ptr(), x.lattice_ptr(), budgets))
    if (!pointwise_leq(zadeh_forward(f, hull(x, a)),
                       hull(y, zadeh_forward(f, a))))
      return false;
  return true;
}

/// A convex set is compact iff it is nonempty and sub(K,-) commutes with
/// directed joins of convex sets.  Over a finite family every directed
/// subfamily contains its join, so compactness reduces to nonemptiness;
/// certify_compact runs the bounded directed-subfamily oracle.
inline bool is_compact(const LConvexSpace& x, const LSubset& k) {
  if (!x.contains(k))
    throw NotConvex("is_compact: " + k.to_string() + " is not convex");
  return is_nonempty(k);
}

struct CompactCertificate {
  bool agrees = true;
  long subfamilies_checked = 0;
  bool probe_skipped = false;
};

/// Cross-checks is_compact against the definitional directed-family
/// equation on all directed subfamilies of C(X) up to the probe size.
inline CompactCertificate certify_compact(const LConvexSpace& x,
                                          const LSubset& k,
                                          const Budgets& budgets = {}) {
  if (!x.contains(k))
    throw NotConvex("certify_compact: " + k.to_string() + " is not convex");
  CompactCertificate cert;
  const auto& mem = x.members();
  std::uint64_t count = 0, n = mem.size();
  for (int kk = 1; kk <= budgets.directed_probe; ++kk) {
    std::uint64_t c = 1;
    for (int i = 0; i < kk; ++i) c = c * (n - i) / (i + 1);
    count += c;
  }
  if (count > budgets.scan_cap) {
    cert.probe_skipped = true;
    return cert;
  }
  const Lattice& L = x.lattice();
  bool equation_ok = true;
  detail::for_each_subset_upto(
      static_cast<int>(mem.size()), budgets.directed_probe,
      [&](std::span<const int> pick) {
        if (!equation_ok || !detail::is_directed(mem, pick)) return;
        ++cert.subfamilies_checked;
        LSubset dj = bottom_subset(x.carrier_ptr(), x.lattice_ptr());
        Deg rhs = L.bot();
        for (int i : pick) {
          dj = join(dj, mem[i]);
          rhs = L.join(rhs, sub(k, mem[i]));
        }
        if (sub(k, dj) != rhs) equation_ok = false;
      });
  cert.agrees = is_compact(x, k) == (is_nonempty(k) && equation_ok);
  return cert;
}

struct PolytopeVerdict {
  bool polytope = false;
  std::optional<LSubset> witness;  // a nonempty F with hull(F) = C
};

/// A polytope is the hull of a nonempty finite L-subset.  Fast path: a
/// nonempty convex C is its own witness.  An empty C admits no witness,
/// since F <= hull(F) = C forces the join of F below the join of C.
inline PolytopeVerdict is_polytope(const LConvexSpace& x, const LSubset& c) {
  if (!x.contains(c))
    throw NotConvex("is_polytope: " + c.to_string() + " is not convex");
  if (is_nonempty(c)) return {true, c};
  return {false, std::nullopt};
}

/// Definitional witness search for is_polytope: scans all nonempty F in L^X
/// for hull(F) = C.  Oracle for the fast path.
inline PolytopeVerdict polytope_witness_search(const LConvexSpace& x,
                                               const LSubset& c,
                                               const Budgets& budgets = {}) {
  if (!x.contains(c))
    throw NotConvex("is_polytope: " + c.to_string() + " is not convex");
  for (const auto& f :
       enumerate_subsets(x.carrier_ptr(), x.lattice_ptr(), budgets))
    if (is_nonempty(f) && hull(x, f).degrees() == c.degrees())
      return {true, f};
  return {false, std::nullopt};
}

/// The subspace on a nonempty crisp subset Y: members are the restrictions
/// of the members of X, deduplicated.
inline LConvexSpace subspace(const LConvexSpace& x, std::span<const int> y) {
  if (y.empty()) throw InvalidSize("subspace carrier must be nonempty");
  std::vector<std::string> labels;
  for (int i : y) labels.push_back(x.carrier().label(i));
  auto car = make_carrier(std::move(labels));
  std::vector<LSubset> mem;
  mem.reserve(x.members().size());
  for (const auto& m : x.members()) {
    std::vector<Deg> d;
    d.reserve(y.size());
    for (int i : y) d.push_back(m[i]);
    mem.emplace_back(car, x.lattice_ptr(), std::move(d));
  }
  return LConvexSpace(car, x.lattice_ptr(), std::move(mem));
}

}  // namespace lconvex
