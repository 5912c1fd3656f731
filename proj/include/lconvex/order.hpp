#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lconvex/fuzzy.hpp"

namespace lconvex {

/// A finite L-ordered set: carrier plus an L-valued order matrix e
/// satisfying reflexivity (E1), tensor-transitivity (E2) and antisymmetry
/// (E3).  Built through build_order, which validates the axioms.
class LOrderedSet {
 public:
  const Carrier& carrier() const { return *car_; }
  const CarrierPtr& carrier_ptr() const { return car_; }
  const Lattice& lattice() const { return *lat_; }
  const LatticePtr& lattice_ptr() const { return lat_; }
  int size() const { return car_->size(); }

  Deg e(int x, int y) const { return e_[x * size() + y]; }
  const std::vector<Deg>& matrix() const { return e_; }

  friend bool operator==(const LOrderedSet& a, const LOrderedSet& b) {
    return a.lat_.get() == b.lat_.get() && *a.car_ == *b.car_ &&
           a.e_ == b.e_;
  }

 private:
  friend LOrderedSet build_order(CarrierPtr, LatticePtr, std::vector<Deg>);
  LOrderedSet(CarrierPtr car, LatticePtr lat, std::vector<Deg> e)
      : car_(std::move(car)), lat_(std::move(lat)), e_(std::move(e)) {}

  CarrierPtr car_;
  LatticePtr lat_;
  std::vector<Deg> e_;
};

/// Validates E1-E3 and wraps the matrix.  Throws OrderAxiomViolation with a
/// witness tuple.
inline LOrderedSet build_order(CarrierPtr car, LatticePtr lat,
                               std::vector<Deg> e) {
  const int n = car->size();
  if (static_cast<int>(e.size()) != n * n)
    throw InvalidSize("order matrix must be " + std::to_string(n) + "x" +
                      std::to_string(n));
  for (Deg d : e)
    if (d < 0 || d >= lat->size())
      throw LatticeMismatch("order matrix entry out of range");
  const Lattice& L = *lat;
  for (int x = 0; x < n; ++x)
    if (e[x * n + x] != L.top())
      throw OrderAxiomViolation(
          1, "E1 fails: e(" + car->label(x) + "," + car->label(x) + ") != 1");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (!L.leq(L.tensor(e[x * n + y], e[y * n + z]), e[x * n + z]))
          throw OrderAxiomViolation(
              2, "E2 fails at (" + car->label(x) + "," + car->label(y) + "," +
                     car->label(z) + ")");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y && L.meet(e[x * n + y], e[y * n + x]) == L.top())
        throw OrderAxiomViolation(
            3, "E3 fails: e(" + car->label(x) + "," + car->label(y) +
                   ") = e(" + car->label(y) + "," + car->label(x) + ") = 1");
  return LOrderedSet(std::move(car), std::move(lat), std::move(e));
}

/// A crisp partial order embedded as an L-order: top where related, bottom
/// elsewhere.
inline LOrderedSet crisp_order(const CarrierPtr& car, const LatticePtr& lat,
                               const std::vector<std::vector<bool>>& leq) {
  const int n = car->size();
  std::vector<Deg> e(n * n, lat->bot());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (leq.at(x).at(y)) e[x * n + y] = lat->top();
  return build_order(car, lat, std::move(e));
}

/// The lattice itself as an L-ordered set under e_L(x,y) = x->y.
inline LOrderedSet lattice_order(const LatticePtr& lat) {
  std::vector<std::string> labels;
  for (int i = 0; i < lat->size(); ++i) labels.push_back(lat->label(i));
  auto car = make_carrier(std::move(labels));
  const int n = lat->size();
  std::vector<Deg> e(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) e[x * n + y] = lat->implies(x, y);
  return build_order(std::move(car), lat, std::move(e));
}

/// The down-set of x: (down x)(y) = e(y,x).
inline LSubset down(const LOrderedSet& p, int x) {
  std::vector<Deg> d(p.size());
  for (int y = 0; y < p.size(); ++y) d[y] = p.e(y, x);
  return LSubset(p.carrier_ptr(), p.lattice_ptr(), std::move(d));
}

/// The up-set of x: (up x)(y) = e(x,y).
inline LSubset up(const LOrderedSet& p, int x) {
  std::vector<Deg> d(p.size());
  for (int y = 0; y < p.size(); ++y) d[y] = p.e(x, y);
  return LSubset(p.carrier_ptr(), p.lattice_ptr(), std::move(d));
}

/// S is a lower set iff S(x) (x) e(y,x) <= S(y) for all x,y.
inline bool is_lower_set(const LOrderedSet& p, const LSubset& s) {
  require_same_lattice(p.lattice(), s.lattice());
  require_same_carrier(p.carrier(), s.carrier());
  const Lattice& L = p.lattice();
  for (int x = 0; x < p.size(); ++x)
    for (int y = 0; y < p.size(); ++y)
      if (!L.leq(L.tensor(s[x], p.e(y, x)), s[y])) return false;
  return true;
}

/// S is an upper set iff S(x) (x) e(x,y) <= S(y) for all x,y.
inline bool is_upper_set(const LOrderedSet& p, const LSubset& s) {
  require_same_lattice(p.lattice(), s.lattice());
  require_same_carrier(p.carrier(), s.carrier());
  const Lattice& L = p.lattice();
  for (int x = 0; x < p.size(); ++x)
    for (int y = 0; y < p.size(); ++y)
      if (!L.leq(L.tensor(s[x], p.e(x, y)), s[y])) return false;
  return true;
}

/// The supremum of an L-subset: the unique x with e(x,y) = sub(A, down y)
/// for every y, when it exists.  Scans all candidates against the defining
/// equation; a second witness would contradict E3 and raises InternalError.
inline std::optional<int> supremum(const LOrderedSet& p, const LSubset& a) {
  require_same_lattice(p.lattice(), a.lattice());
  require_same_carrier(p.carrier(), a.carrier());
  std::vector<Deg> target(p.size());
  for (int y = 0; y < p.size(); ++y) target[y] = sub(a, down(p, y));
  std::optional<int> found;
  for (int x = 0; x < p.size(); ++x) {
    bool ok = true;
    for (int y = 0; y < p.size(); ++y)
      if (p.e(x, y) != target[y]) {
        ok = false;
        break;
      }
    if (mutated(Mutation::supremum_first_match))
      ok = p.e(x, x) == target[x];
    if (ok) {
      if (found && !mutated(Mutation::supremum_first_match))
        throw InternalError("two suprema found; E3 violated");
      if (!found) found = x;
    }
  }
  return found;
}

/// The infimum: the unique x with e(y,x) = sub(A, up y) for every y.
inline std::optional<int> infimum(const LOrderedSet& p, const LSubset& a) {
  require_same_lattice(p.lattice(), a.lattice());
  require_same_carrier(p.carrier(), a.carrier());
  std::vector<Deg> target(p.size());
  for (int y = 0; y < p.size(); ++y) target[y] = sub(a, up(p, y));
  std::optional<int> found;
  for (int x = 0; x < p.size(); ++x) {
    bool ok = true;
    for (int y = 0; y < p.size(); ++y)
      if (p.e(y, x) != target[y]) {
        ok = false;
        break;
      }
    if (ok) {
      if (found) throw InternalError("two infima found; E3 violated");
      found = x;
    }
  }
  return found;
}

/// f is L-order-preserving iff e_P(x,y) <= e_Q(f x, f y) for all pairs.
inline bool is_order_preserving(const CarrierMap& f, const LOrderedSet& p,
                                const LOrderedSet& q) {
  require_same_carrier(f.source(), p.carrier());
  require_same_carrier(f.target(), q.carrier());
  require_same_lattice(p.lattice(), q.lattice());
  for (int x = 0; x < p.size(); ++x)
    for (int y = 0; y < p.size(); ++y)
      if (!p.lattice().leq(p.e(x, y), q.e(f(x), f(y)))) return false;
  return true;
}

/// Bijective with equal degrees on all pairs.
inline bool is_order_isomorphism(const CarrierMap& f, const LOrderedSet& p,
                                 const LOrderedSet& q) {
  require_same_carrier(f.source(), p.carrier());
  require_same_carrier(f.target(), q.carrier());
  require_same_lattice(p.lattice(), q.lattice());
  if (!f.is_bijective()) return false;
  for (int x = 0; x < p.size(); ++x)
    for (int y = 0; y < p.size(); ++y)
      if (p.e(x, y) != q.e(f(x), f(y))) return false;
  return true;
}

struct JoinSemilatticeVerdict {
  bool ok = true;
  std::optional<LSubset> witness;  // a nonempty L-subset without a supremum
};

/// P is an L-join-semilattice iff every nonempty L-subset has a supremum
/// (finiteness of L-subsets is automatic at finite scale).  Enumerates all
/// |L|^|P| subsets with early exit; the scan budget guards the blow-up.
inline JoinSemilatticeVerdict is_join_semilattice(const LOrderedSet& p,
                                                  const Budgets& budgets = {}) {
  const auto univ =
      enumerate_subsets(p.carrier_ptr(), p.lattice_ptr(), budgets);
  for (const auto& a : univ) {
    if (!is_nonempty(a)) continue;
    if (!supremum(p, a)) return {false, a};
  }
  return {true, std::nullopt};
}

/// The L-ordered set of all of L^X under the inclusion order sub.
/// Element labels are the degree vectors joined by '.', in canonical order.
inline LOrderedSet inclusion_order_space(const CarrierPtr& car,
                                         const LatticePtr& lat,
                                         const Budgets& budgets = {}) {
  const auto univ = enumerate_subsets(car, lat, budgets);
  std::vector<std::string> labels;
  labels.reserve(univ.size());
  for (const auto& a : univ) {
    std::string l;
    for (int x = 0; x < a.size(); ++x) {
      if (x) l += ".";
      l += std::to_string(a[x]);
    }
    labels.push_back(std::move(l));
  }
  auto pc = make_carrier(std::move(labels));
  const int n = static_cast<int>(univ.size());
  std::vector<Deg> e(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) e[i * n + j] = sub(univ[i], univ[j]);
  return build_order(std::move(pc), lat, std::move(e));
}

}  // namespace lconvex
