#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lconvex/order.hpp"
#include "lconvex/sober.hpp"

namespace lconvex {

/// The specialization L-order of an S0 space:
/// e(x,y) = meet over members A of A(y) -> A(x), which equals hull(1_y)(x);
/// both are computed and compared.
inline LOrderedSet specialization(const LConvexSpace& x) {
  if (!is_s0(x))
    throw NotS0("specialization: the space is not S0, E3 would fail");
  const Lattice& L = x.lattice();
  const int n = x.carrier().size();
  std::vector<Deg> e(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Deg m = L.top();
      for (const auto& a : x.members()) m = L.meet(m, L.implies(a[j], a[i]));
      e[i * n + j] = m;
    }
  for (int j = 0; j < n; ++j) {
    auto h = hull(x, point(x.carrier_ptr(), x.lattice_ptr(), j));
    for (int i = 0; i < n; ++i)
      if (h[i] != e[i * n + j])
        throw EquivalenceViolation(
            "specialization: meet formula and point-hull formula disagree "
            "at (" + x.carrier().label(i) + "," + x.carrier().label(j) + ")");
  }
  if (mutated(Mutation::specialization_flip)) {
    std::vector<Deg> t(e.size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t[i * n + j] = e[j * n + i];
    e = std::move(t);
  }
  return build_order(x.carrier_ptr(), x.lattice_ptr(), std::move(e));
}

/// Scott convexity of an L-subset: a lower set that absorbs suprema, i.e.
/// sub(F, A) <= A(sup F) for every nonempty F whose supremum exists.
inline bool is_scott_convex(const LOrderedSet& p, const LSubset& a,
                            const Budgets& budgets = {}) {
  require_same_lattice(p.lattice(), a.lattice());
  require_same_carrier(p.carrier(), a.carrier());
  if (!mutated(Mutation::scott_skip_lower) && !is_lower_set(p, a))
    return false;
  const Lattice& L = p.lattice();
  for (const auto& f :
       enumerate_subsets(p.carrier_ptr(), p.lattice_ptr(), budgets)) {
    if (!is_nonempty(f)) continue;
    auto s = supremum(p, f);
    if (s && !L.leq(sub(f, a), a[*s])) return false;
  }
  return true;
}

/// sigma*(P): the space of all Scott convex sets.  Asserts the structural
/// facts: C1/C3/C4, S0, and specialization(sigma*(P)) = P degree-for-degree.
inline LConvexSpace scott_structure(const LOrderedSet& p,
                                    const Budgets& budgets = {}) {
  const std::uint64_t double_scan =
      checked_pow(static_cast<std::uint64_t>(p.lattice().size()),
                  2 * static_cast<std::uint64_t>(p.size()));
  if (double_scan > budgets.scott_cap)
    throw BudgetExceeded("scott_structure: |L|^(2|P|) = " +
                         std::to_string(double_scan) + " over budget");
  const auto univ = enumerate_subsets(p.carrier_ptr(), p.lattice_ptr(),
                                      budgets);
  const Lattice& L = p.lattice();
  // supremum table over all of L^P
  std::vector<std::optional<int>> sup_of(univ.size());
  for (std::size_t i = 0; i < univ.size(); ++i)
    if (is_nonempty(univ[i])) sup_of[i] = supremum(p, univ[i]);

  std::vector<LSubset> members;
  for (const auto& a : univ) {
    if (!mutated(Mutation::scott_skip_lower) && !is_lower_set(p, a)) continue;
    bool ok = true;
    for (std::size_t i = 0; i < univ.size() && ok; ++i)
      if (sup_of[i] && !L.leq(sub(univ[i], a), a[*sup_of[i]])) ok = false;
    if (ok) members.push_back(a);
  }
  LConvexSpace sp(p.carrier_ptr(), p.lattice_ptr(), std::move(members));

  // Structural postconditions (cheap; the directed-join probe lives in
  // verify_space_axioms).
  if (!sp.contains(bottom_subset(p.carrier_ptr(), p.lattice_ptr())) ||
      !sp.contains(top_subset(p.carrier_ptr(), p.lattice_ptr())))
    throw EquivalenceViolation("scott_structure: constants missing");
  for (const auto& a : sp.members())
    for (const auto& b : sp.members())
      if (!sp.contains(meet(a, b)))
        throw EquivalenceViolation("scott_structure: not meet-closed");
  for (Deg t = 0; t < L.size(); ++t)
    for (const auto& a : sp.members())
      if (!sp.contains(scale_residuum(t, a)))
        throw EquivalenceViolation("scott_structure: not residuum-closed");
  if (!is_s0(sp)) throw EquivalenceViolation("scott_structure: not S0");
  if (!(specialization(sp) == p))
    throw EquivalenceViolation(
        "scott_structure: specialization does not recover the order");
  return sp;
}

/// Scott convexity preservation of a map: order-preserving, and
/// f(sup F) = sup f->(F) whenever the supremum of a nonempty F exists.
inline bool is_scott_cp(const CarrierMap& f, const LOrderedSet& p,
                        const LOrderedSet& q, const Budgets& budgets = {}) {
  require_same_carrier(f.source(), p.carrier());
  require_same_carrier(f.target(), q.carrier());
  require_same_lattice(p.lattice(), q.lattice());
  if (!is_order_preserving(f, p, q)) return false;
  for (const auto& k :
       enumerate_subsets(p.carrier_ptr(), p.lattice_ptr(), budgets)) {
    if (!is_nonempty(k)) continue;
    auto s = supremum(p, k);
    if (!s) continue;
    auto qs = supremum(q, zadeh_forward(f, k));
    if (!qs || *qs != f(*s)) return false;
  }
  return true;
}

/// The bridge equivalence: f is Scott convexity-preserving iff f is
/// convexity-preserving between the sigma* spaces.  Both sides are
/// computed; disagreement is a library bug.
inline bool scott_cp_equivalence(const CarrierMap& f, const LOrderedSet& p,
                                 const LOrderedSet& q,
                                 const Budgets& budgets = {}) {
  const bool order_side = is_scott_cp(f, p, q, budgets);
  const bool space_side = is_convexity_preserving(
      f, scott_structure(p, budgets), scott_structure(q, budgets));
  if (order_side != space_side)
    throw EquivalenceViolation(
        "scott_cp_equivalence: order route says " +
        std::string(order_side ? "true" : "false") +
        ", space route says the opposite");
  return order_side;
}

struct SoberJoinVerdict {
  bool sober = false;
  bool join_semilattice = false;
  bool members_scott_convex = false;
  bool agree = false;  // sober == (join_semilattice && members_scott_convex)
};

/// The order-theoretic characterization of sobriety for S0 spaces:
/// sober iff the specialization order is an L-join-semilattice and every
/// convex set is Scott convex in it.  Both sides computed and compared.
inline SoberJoinVerdict sober_join_characterization(const LConvexSpace& x,
                                                    const Budgets& budgets =
                                                        {}) {
  SoberJoinVerdict v;
  v.sober = is_sober(x, budgets).sober;
  auto omega = specialization(x);
  v.join_semilattice = is_join_semilattice(omega, budgets).ok;
  v.members_scott_convex = true;
  for (const auto& a : x.members())
    if (!is_scott_convex(omega, a, budgets)) {
      v.members_scott_convex = false;
      break;
    }
  v.agree = (v.sober == (v.join_semilattice && v.members_scott_convex));
  if (!v.agree)
    throw EquivalenceViolation(
        "sober_join_characterization: the equivalence failed");
  return v;
}

/// The join-semilattice completion of an L-ordered set: sobrify the Scott
/// space, carry the inclusion order sub on the X^F points, and transport
/// the unit.
struct CompletionResult {
  LOrderedSet completion_order;  // carrier X^F with e = sub
  CarrierMap xi;                 // P -> X^F, x -> hull of 1_x
  LConvexSpace scott_space;      // sigma*(P), the space that was sobrified
  SobrificationResult underlying;

  bool xi_scott_cp = false;
  bool join_semilattice_verified = false;  // exhaustive check ran and passed
  bool join_semilattice_skipped = false;   // |L|^|X^F| over budget
  bool families_equal = false;             // C(P^F) = sigma*(P^F)
  bool families_checked = false;           // sigma*(P^F) fit the budget
};

inline CompletionResult completion(const LOrderedSet& p,
                                   const Budgets& budgets = {}) {
  auto sp = scott_structure(p, budgets);
  auto sres = sobrify(sp, budgets);

  // e = sub on the X^F points (each point names a convex set of P).
  const int nf = static_cast<int>(sres.provenance.size());
  std::vector<Deg> e(static_cast<std::size_t>(nf) * nf);
  for (int i = 0; i < nf; ++i)
    for (int j = 0; j < nf; ++j)
      e[i * nf + j] = sub(sres.provenance[i], sres.provenance[j]);
  auto order = build_order(sres.xf_space.carrier_ptr(), p.lattice_ptr(),
                           std::move(e));

  // The specialization order of X^F must be exactly this sub matrix.
  {
    auto spec = specialization(sres.xf_space);
    if (!(spec == order))
      throw EquivalenceViolation(
          "completion: specialization of X^F is not the inclusion order");
  }

  CompletionResult res{std::move(order), sres.xi, std::move(sp),
                       std::move(sres)};

  res.xi_scott_cp = is_scott_cp(res.xi, p, res.completion_order, budgets);
  if (!res.xi_scott_cp)
    throw EquivalenceViolation("completion: xi is not Scott cp");

  const std::uint64_t jscan =
      checked_pow(static_cast<std::uint64_t>(p.lattice().size()),
                  static_cast<std::uint64_t>(nf));
  if (jscan <= budgets.scan_cap) {
    auto v = is_join_semilattice(res.completion_order, budgets);
    res.join_semilattice_verified = v.ok;
    if (!v.ok)
      throw EquivalenceViolation(
          "completion: X^F is not a join-semilattice; witness " +
          v.witness->to_string());
  } else {
    res.join_semilattice_skipped = true;
  }

  const std::uint64_t sscan =
      checked_pow(static_cast<std::uint64_t>(p.lattice().size()),
                  2 * static_cast<std::uint64_t>(nf));
  if (sscan <= budgets.scott_cap) {
    res.families_checked = true;
    auto sigma_xf = scott_structure(res.completion_order, budgets);
    res.families_equal =
        sigma_xf.members() == res.underlying.xf_space.members();
    if (!res.families_equal)
      throw EquivalenceViolation(
          "completion: C(P^F) and sigma*(P^F) differ as families");
  }
  return res;
}

/// Does (Q, j) present an L-join-semilattice completion of P?  Verified by
/// the canonical construction: Q must be a join-semilattice, j Scott cp,
/// and the induced comparison map P^F -> Q (the universal extension of j)
/// must be a convex-homeomorphism of the Scott spaces and an order
/// isomorphism onto (Q, e_Q).
inline bool verify_completion(const LOrderedSet& p, const LOrderedSet& q,
                              const CarrierMap& j,
                              const Budgets& budgets = {}) {
  require_same_carrier(j.source(), p.carrier());
  require_same_carrier(j.target(), q.carrier());
  if (!is_join_semilattice(q, budgets).ok) return false;
  if (!is_scott_cp(j, p, q, budgets)) return false;

  auto canonical = completion(p, budgets);
  auto zq = scott_structure(q, budgets);
  auto ext = extend_to_sobrification(canonical.underlying, zq, j, budgets);
  if (!is_convex_homeomorphism(ext.fbar, canonical.underlying.xf_space, zq))
    return false;
  return is_order_isomorphism(ext.fbar, canonical.completion_order, q);
}

}  // namespace lconvex
