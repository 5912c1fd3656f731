#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lconvex/budgets.hpp"
#include "lconvex/errors.hpp"
#include "lconvex/lattice.hpp"
#include "lconvex/mutation.hpp"

namespace lconvex {

/// A finite background set with distinct element labels.  Carriers compare
/// by label vector, so independently restricted copies stay compatible.
class Carrier {
 public:
  explicit Carrier(std::vector<std::string> labels)
      : labels_(std::move(labels)) {
    if (labels_.empty()) throw InvalidSize("carrier must be nonempty");
    for (std::size_t i = 0; i < labels_.size(); ++i)
      for (std::size_t j = i + 1; j < labels_.size(); ++j)
        if (labels_[i] == labels_[j])
          throw InvalidSize("duplicate carrier label '" + labels_[i] + "'");
  }

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Index of a label, -1 when absent.
  int find(const std::string& l) const {
    for (int i = 0; i < size(); ++i)
      if (labels_[i] == l) return i;
    return -1;
  }

  friend bool operator==(const Carrier& a, const Carrier& b) {
    return &a == &b || a.labels_ == b.labels_;
  }

 private:
  std::vector<std::string> labels_;
};

using CarrierPtr = std::shared_ptr<const Carrier>;

inline CarrierPtr make_carrier(std::vector<std::string> labels) {
  return std::make_shared<const Carrier>(std::move(labels));
}

inline void require_same_carrier(const Carrier& a, const Carrier& b) {
  if (!(a == b))
    throw CarrierMismatch("operation mixes carriers {" + a.label(0) +
                          ",...} (size " + std::to_string(a.size()) +
                          ") and {" + b.label(0) + ",...} (size " +
                          std::to_string(b.size()) + ")");
}

/// An L-subset: one degree per carrier element.  The universal currency of
/// the library.  Immutable value type; comparison is lexicographic on the
/// degree vector (used for canonical ordering of convex families).
class LSubset {
 public:
  LSubset(CarrierPtr car, LatticePtr lat, std::vector<Deg> degrees)
      : car_(std::move(car)), lat_(std::move(lat)), deg_(std::move(degrees)) {
    if (static_cast<int>(deg_.size()) != car_->size())
      throw CarrierMismatch("degree vector length " +
                            std::to_string(deg_.size()) +
                            " does not match carrier size " +
                            std::to_string(car_->size()));
    for (Deg d : deg_)
      if (d < 0 || d >= lat_->size())
        throw LatticeMismatch("degree index out of range");
  }

  Deg operator[](int x) const { return deg_[x]; }
  int size() const { return static_cast<int>(deg_.size()); }

  const Carrier& carrier() const { return *car_; }
  const CarrierPtr& carrier_ptr() const { return car_; }
  const Lattice& lattice() const { return *lat_; }
  const LatticePtr& lattice_ptr() const { return lat_; }
  const std::vector<Deg>& degrees() const { return deg_; }

  std::string to_string() const {
    std::string s = "{";
    for (int x = 0; x < size(); ++x) {
      if (x) s += ",";
      s += car_->label(x) + "=" + lat_->label(deg_[x]);
    }
    return s + "}";
  }

  friend bool operator==(const LSubset& a, const LSubset& b) {
    return a.lat_.get() == b.lat_.get() && *a.car_ == *b.car_ &&
           a.deg_ == b.deg_;
  }
  /// Canonical (lexicographic) order on degree vectors; callers guarantee a
  /// shared carrier and lattice.
  friend bool operator<(const LSubset& a, const LSubset& b) {
    return a.deg_ < b.deg_;
  }

 private:
  CarrierPtr car_;
  LatticePtr lat_;
  std::vector<Deg> deg_;
};

inline void require_compatible(const LSubset& a, const LSubset& b) {
  require_same_lattice(a.lattice(), b.lattice());
  require_same_carrier(a.carrier(), b.carrier());
}

// -- constructors ----------------------------------------------------------

inline LSubset constant(const CarrierPtr& car, const LatticePtr& lat, Deg a) {
  return LSubset(car, lat, std::vector<Deg>(car->size(), a));
}
inline LSubset bottom_subset(const CarrierPtr& car, const LatticePtr& lat) {
  return constant(car, lat, lat->bot());
}
inline LSubset top_subset(const CarrierPtr& car, const LatticePtr& lat) {
  return constant(car, lat, lat->top());
}
/// 1_x: top at x, bottom elsewhere.
inline LSubset point(const CarrierPtr& car, const LatticePtr& lat, int x) {
  std::vector<Deg> d(car->size(), lat->bot());
  d.at(x) = lat->top();
  return LSubset(car, lat, std::move(d));
}
/// chi_Z for a crisp subset Z given by indices.
inline LSubset characteristic(const CarrierPtr& car, const LatticePtr& lat,
                              std::span<const int> z) {
  std::vector<Deg> d(car->size(), lat->bot());
  for (int x : z) d.at(x) = lat->top();
  return LSubset(car, lat, std::move(d));
}

// -- pointwise algebra ------------------------------------------------------

/// Crisp pointwise order A <= B.
inline bool pointwise_leq(const LSubset& a, const LSubset& b) {
  require_compatible(a, b);
  const Lattice& L = a.lattice();
  for (int x = 0; x < a.size(); ++x)
    if (!L.leq(a[x], b[x])) return false;
  return true;
}

inline LSubset meet(const LSubset& a, const LSubset& b) {
  require_compatible(a, b);
  const Lattice& L = a.lattice();
  std::vector<Deg> d(a.size());
  for (int x = 0; x < a.size(); ++x) d[x] = L.meet(a[x], b[x]);
  return LSubset(a.carrier_ptr(), a.lattice_ptr(), std::move(d));
}

inline LSubset join(const LSubset& a, const LSubset& b) {
  require_compatible(a, b);
  const Lattice& L = a.lattice();
  std::vector<Deg> d(a.size());
  for (int x = 0; x < a.size(); ++x) d[x] = L.join(a[x], b[x]);
  return LSubset(a.carrier_ptr(), a.lattice_ptr(), std::move(d));
}

/// Meet of a family; the empty meet is the top constant.
inline LSubset meet_family(const CarrierPtr& car, const LatticePtr& lat,
                           std::span<const LSubset> fam) {
  LSubset r = top_subset(car, lat);
  for (const auto& f : fam) r = meet(r, f);
  return r;
}

/// Join of a family; the empty join is the bottom constant.
inline LSubset join_family(const CarrierPtr& car, const LatticePtr& lat,
                           std::span<const LSubset> fam) {
  LSubset r = bottom_subset(car, lat);
  for (const auto& f : fam) r = join(r, f);
  return r;
}

/// (a (x) A)(x) = a (x) A(x).
inline LSubset scale_tensor(Deg a, const LSubset& s) {
  const Lattice& L = s.lattice();
  std::vector<Deg> d(s.size());
  for (int x = 0; x < s.size(); ++x) d[x] = L.tensor(a, s[x]);
  return LSubset(s.carrier_ptr(), s.lattice_ptr(), std::move(d));
}

/// (a -> A)(x) = a -> A(x).
inline LSubset scale_residuum(Deg a, const LSubset& s) {
  const Lattice& L = s.lattice();
  std::vector<Deg> d(s.size());
  for (int x = 0; x < s.size(); ++x) d[x] = L.implies(a, s[x]);
  return LSubset(s.carrier_ptr(), s.lattice_ptr(), std::move(d));
}

/// A|_Y over a fresh carrier made of the selected labels (kept in order).
inline LSubset restrict_subset(const LSubset& a, std::span<const int> y) {
  std::vector<std::string> labels;
  std::vector<Deg> d;
  for (int x : y) {
    labels.push_back(a.carrier().label(x));
    d.push_back(a[x]);
  }
  return LSubset(make_carrier(std::move(labels)), a.lattice_ptr(),
                 std::move(d));
}

/// Extends a subset on a subcarrier back to the super carrier by bottom.
inline LSubset extend_by_bottom(const LSubset& a, const CarrierPtr& super,
                                std::span<const int> y) {
  std::vector<Deg> d(super->size(), a.lattice().bot());
  for (std::size_t i = 0; i < y.size(); ++i) d.at(y[i]) = a[int(i)];
  return LSubset(super, a.lattice_ptr(), std::move(d));
}

/// Nonempty means the degrees join to the top.
inline bool is_nonempty(const LSubset& a) {
  const Lattice& L = a.lattice();
  Deg j = L.bot();
  for (int x = 0; x < a.size(); ++x) j = L.join(j, a[x]);
  return j == L.top();
}

/// The inclusion L-order on L^X: sub(A,B) = meet_x A(x)->B(x).
inline Deg sub(const LSubset& a, const LSubset& b) {
  require_compatible(a, b);
  const Lattice& L = a.lattice();
  Deg m = L.top();
  for (int x = 0; x < a.size(); ++x) {
    Deg v = mutated(Mutation::sub_uses_tensor) ? L.tensor(a[x], b[x])
                                               : L.implies(a[x], b[x]);
    m = L.meet(m, v);
  }
  return m;
}

// -- mappings ---------------------------------------------------------------

/// A total function between two carriers, given by an index table.
class CarrierMap {
 public:
  CarrierMap(CarrierPtr src, CarrierPtr dst, std::vector<int> table)
      : src_(std::move(src)), dst_(std::move(dst)), tab_(std::move(table)) {
    if (static_cast<int>(tab_.size()) != src_->size())
      throw CarrierMismatch("map table length does not match source size");
    for (int v : tab_)
      if (v < 0 || v >= dst_->size())
        throw CarrierMismatch("map target index out of range");
  }

  int operator()(int x) const { return tab_[x]; }
  const Carrier& source() const { return *src_; }
  const Carrier& target() const { return *dst_; }
  const CarrierPtr& source_ptr() const { return src_; }
  const CarrierPtr& target_ptr() const { return dst_; }
  const std::vector<int>& table() const { return tab_; }

  bool is_injective() const {
    std::vector<char> seen(dst_->size(), 0);
    for (int v : tab_) {
      if (seen[v]) return false;
      seen[v] = 1;
    }
    return true;
  }
  bool is_surjective() const {
    std::vector<char> seen(dst_->size(), 0);
    for (int v : tab_) seen[v] = 1;
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c; });
  }
  bool is_bijective() const { return is_injective() && is_surjective(); }

 private:
  CarrierPtr src_, dst_;
  std::vector<int> tab_;
};

inline CarrierMap identity_map(const CarrierPtr& car) {
  std::vector<int> t(car->size());
  for (int i = 0; i < car->size(); ++i) t[i] = i;
  return CarrierMap(car, car, std::move(t));
}

inline CarrierMap compose(const CarrierMap& g, const CarrierMap& f) {
  require_same_carrier(f.target(), g.source());
  std::vector<int> t(f.source().size());
  for (int x = 0; x < f.source().size(); ++x) t[x] = g(f(x));
  return CarrierMap(f.source_ptr(), g.target_ptr(), std::move(t));
}

/// Zadeh forward image: f->(A)(y) = join over the fiber f^-1(y); an empty
/// fiber yields bottom (forced by the join formula).
inline LSubset zadeh_forward(const CarrierMap& f, const LSubset& a) {
  require_same_carrier(f.source(), a.carrier());
  const Lattice& L = a.lattice();
  std::vector<Deg> d(f.target().size(), L.bot());
  for (int x = 0; x < a.size(); ++x) {
    Deg& cell = d[f(x)];
    cell = mutated(Mutation::zadeh_forward_meet) ? L.meet(cell, a[x])
                                                 : L.join(cell, a[x]);
  }
  return LSubset(f.target_ptr(), a.lattice_ptr(), std::move(d));
}

/// Zadeh backward image: f<-(B) = B o f.
inline LSubset zadeh_backward(const CarrierMap& f, const LSubset& b) {
  require_same_carrier(f.target(), b.carrier());
  std::vector<Deg> d(f.source().size());
  for (int x = 0; x < f.source().size(); ++x) d[x] = b[f(x)];
  return LSubset(f.source_ptr(), b.lattice_ptr(), std::move(d));
}

// -- enumeration helpers ----------------------------------------------------

/// All of L^X in canonical (lexicographic degree vector) order.
/// Guarded by the scan budget.
inline std::vector<LSubset> enumerate_subsets(const CarrierPtr& car,
                                              const LatticePtr& lat,
                                              const Budgets& budgets = {}) {
  const std::uint64_t count =
      checked_pow(static_cast<std::uint64_t>(lat->size()),
                  static_cast<std::uint64_t>(car->size()));
  if (count > budgets.scan_cap)
    throw BudgetExceeded("|L|^|X| = " + std::to_string(count) +
                         " exceeds scan budget " +
                         std::to_string(budgets.scan_cap));
  std::vector<LSubset> out;
  out.reserve(count);
  std::vector<Deg> d(car->size(), 0);
  while (true) {
    out.emplace_back(car, lat, d);
    int i = car->size() - 1;
    while (i >= 0 && d[i] == lat->size() - 1) d[i--] = 0;
    if (i < 0) break;
    ++d[i];
  }
  return out;
}

/// All maps between two carriers, in lexicographic table order.
inline std::vector<CarrierMap> enumerate_maps(const CarrierPtr& src,
                                              const CarrierPtr& dst,
                                              const Budgets& budgets = {}) {
  const std::uint64_t count =
      checked_pow(static_cast<std::uint64_t>(dst->size()),
                  static_cast<std::uint64_t>(src->size()));
  if (count > budgets.scan_cap)
    throw BudgetExceeded("|Y|^|X| = " + std::to_string(count) +
                         " exceeds scan budget");
  std::vector<CarrierMap> out;
  out.reserve(count);
  std::vector<int> t(src->size(), 0);
  while (true) {
    out.emplace_back(src, dst, t);
    int i = src->size() - 1;
    while (i >= 0 && t[i] == dst->size() - 1) t[i--] = 0;
    if (i < 0) break;
    ++t[i];
  }
  return out;
}

namespace detail {

/// Visits every subset of {0..n-1} of size 1..k as a sorted index vector.
template <typename Fn>
void for_each_subset_upto(int n, int k, Fn&& fn) {
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int from) {
    if (!pick.empty()) fn(std::span<const int>(pick));
    if (static_cast<int>(pick.size()) == k) return;
    for (int i = from; i < n; ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
}

/// Directedness of a family of L-subsets under the crisp pointwise order:
/// nonempty, and every two members have an upper bound in the family.
inline bool is_directed(std::span<const LSubset> fam,
                        std::span<const int> pick) {
  if (pick.empty()) return false;
  for (std::size_t i = 0; i < pick.size(); ++i)
    for (std::size_t j = i + 1; j < pick.size(); ++j) {
      bool bounded = false;
      for (int u : pick)
        if (pointwise_leq(fam[pick[i]], fam[u]) &&
            pointwise_leq(fam[pick[j]], fam[u])) {
          bounded = true;
          break;
        }
      if (!bounded) return false;
    }
  return true;
}

}  // namespace detail

// -- finiteness -------------------------------------------------------------

struct FinitenessVerdict {
  bool finite = true;
  std::string justification;
  long families_checked = 0;
  std::string violation;  // nonempty only on a certified library bug
};

/// Finiteness of an L-subset: sub(F, directed join) must equal the directed
/// join of the subs.  Over a finite lattice and finite carrier every
/// directed family in L^X contains its join as a member, so every L-subset
/// is finite; the verdict states that theorem and additionally runs a
/// bounded oracle over all directed subfamilies of L^X of size <=
/// probe_bound, returning any violation as a certified bug.
inline FinitenessVerdict is_finite_subset(const LSubset& f, int probe_bound,
                                          const Budgets& budgets = {}) {
  FinitenessVerdict v;
  v.finite = true;
  v.justification =
      "finite-instance theorem: every directed family in L^X over a finite "
      "lattice and carrier contains its join";
  const auto univ =
      enumerate_subsets(f.carrier_ptr(), f.lattice_ptr(), budgets);
  const Lattice& L = f.lattice();
  const int n = static_cast<int>(univ.size());
  detail::for_each_subset_upto(n, probe_bound, [&](std::span<const int> pick) {
    if (!detail::is_directed(univ, pick)) return;
    ++v.families_checked;
    LSubset dj = bottom_subset(f.carrier_ptr(), f.lattice_ptr());
    Deg rhs = L.bot();
    for (int i : pick) {
      dj = join(dj, univ[i]);
      rhs = L.join(rhs, sub(f, univ[i]));
    }
    if (sub(f, dj) != rhs && v.violation.empty())
      v.violation = "sub(F, directed join) != join of subs for family of " +
                    std::to_string(pick.size()) + " members";
  });
  return v;
}

}  // namespace lconvex
