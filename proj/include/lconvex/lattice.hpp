#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lconvex/errors.hpp"

namespace lconvex {

/// A truth degree: an index into the element table of one fixed lattice.
/// Degrees from different lattices must never meet in one operation; the
/// lattice identity tag is checked wherever two degree-valued structures
/// are combined.
using Deg = int;

enum class ChainKind { godel, lukasiewicz };

/// A finite complete residuated lattice given by tables.  Immutable after
/// construction; all operations are pure lookups, safe for concurrent reads.
///
/// The residuum is always derived from the tensor (never user supplied), so
/// the adjunction a(x)b <= c  <=>  a <= b->c holds by construction.
class Lattice {
 public:
  int size() const { return n_; }
  const std::string& name() const { return name_; }
  std::uint64_t id() const { return id_; }

  bool leq(Deg a, Deg b) const { return leq_[idx(a, b)] != 0; }
  Deg join(Deg a, Deg b) const { return join_[idx(a, b)]; }
  Deg meet(Deg a, Deg b) const { return meet_[idx(a, b)]; }
  Deg tensor(Deg a, Deg b) const { return tensor_[idx(a, b)]; }
  /// Residuum a->b: the largest c with a(x)c <= b.
  Deg implies(Deg a, Deg b) const { return res_[idx(a, b)]; }

  Deg bot() const { return bot_; }
  Deg top() const { return top_; }

  /// True when the tensor coincides with the meet (the lattice is a frame).
  bool is_frame() const { return frame_; }
  bool is_chain() const { return chain_; }

  const std::string& label(Deg a) const { return labels_[a]; }

  template <typename It>
  Deg join_all(It first, It last) const {
    Deg r = bot_;
    for (; first != last; ++first) r = join(r, *first);
    return r;
  }
  template <typename It>
  Deg meet_all(It first, It last) const {
    Deg r = top_;
    for (; first != last; ++first) r = meet(r, *first);
    return r;
  }

 private:
  friend std::shared_ptr<const Lattice> build_lattice(
      std::string name, const std::vector<std::vector<bool>>& leq,
      const std::vector<std::vector<Deg>>& tensor,
      std::vector<std::string> labels);

  Lattice() = default;
  int idx(Deg a, Deg b) const { return a * n_ + b; }

  int n_ = 0;
  std::vector<char> leq_;
  std::vector<Deg> join_, meet_, tensor_, res_;
  Deg bot_ = 0, top_ = 0;
  bool frame_ = false, chain_ = false;
  std::uint64_t id_ = 0;
  std::string name_;
  std::vector<std::string> labels_;
};

using LatticePtr = std::shared_ptr<const Lattice>;

inline void require_same_lattice(const Lattice& a, const Lattice& b) {
  if (&a != &b)
    throw LatticeMismatch("degrees from lattice '" + a.name() +
                          "' (id " + std::to_string(a.id()) +
                          ") mixed with lattice '" + b.name() + "' (id " +
                          std::to_string(b.id()) + ")");
}

namespace detail {
inline std::uint64_t next_lattice_id() {
  static std::atomic<std::uint64_t> c{1};
  return c.fetch_add(1);
}
}  // namespace detail

/// Builds and fully validates a lattice from a leq relation and a tensor
/// table.  The residuum is derived as a->b = join{c | a(x)c <= b}.
///
/// Throws NotALattice / NotAMonoid / NotDistributive with the first
/// (lexicographically minimal) witness tuple on any violation.
inline LatticePtr build_lattice(std::string name,
                                const std::vector<std::vector<bool>>& leq,
                                const std::vector<std::vector<Deg>>& tensor,
                                std::vector<std::string> labels = {}) {
  const int n = static_cast<int>(leq.size());
  if (n < 1) throw InvalidSize("lattice must have at least one element");
  auto square = [n](const auto& t) {
    if (static_cast<int>(t.size()) != n) return false;
    for (const auto& row : t)
      if (static_cast<int>(row.size()) != n) return false;
    return true;
  };
  if (!square(leq) || !square(tensor))
    throw InvalidSize("leq/tensor tables must be " + std::to_string(n) + "x" +
                      std::to_string(n));
  for (const auto& row : tensor)
    for (Deg v : row)
      if (v < 0 || v >= n) throw InvalidSize("tensor entry out of range");

  auto lat = std::shared_ptr<Lattice>(new Lattice());
  Lattice& L = *lat;
  L.n_ = n;
  L.id_ = detail::next_lattice_id();
  L.name_ = std::move(name);
  if (labels.empty()) {
    for (int i = 0; i < n; ++i) labels.push_back("d" + std::to_string(i));
  }
  if (static_cast<int>(labels.size()) != n)
    throw InvalidSize("label count does not match lattice size");
  L.labels_ = std::move(labels);

  L.leq_.assign(n * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) L.leq_[a * n + b] = leq[a][b] ? 1 : 0;

  auto le = [&](Deg a, Deg b) { return L.leq_[a * n + b] != 0; };
  auto wit2 = [&](Deg a, Deg b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
  };
  auto wit3 = [&](Deg a, Deg b, Deg c) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," +
           std::to_string(c) + ")";
  };

  // Partial order axioms.
  for (int a = 0; a < n; ++a)
    if (!le(a, a)) throw NotALattice("leq not reflexive at " + wit2(a, a));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && le(a, b) && le(b, a))
        throw NotALattice("leq not antisymmetric at " + wit2(a, b));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (le(a, b) && le(b, c) && !le(a, c))
          throw NotALattice("leq not transitive at " + wit3(a, b, c));

  // Binary joins and meets must exist; by finiteness this gives completeness.
  L.join_.assign(n * n, -1);
  L.meet_.assign(n * n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Deg j = -1, m = -1;
      for (int c = 0; c < n; ++c) {
        if (le(a, c) && le(b, c) && (j < 0 || le(c, j))) j = c;
        if (le(c, a) && le(c, b) && (m < 0 || le(m, c))) m = c;
      }
      // The candidate found is least/greatest only if comparable to every
      // other bound; re-scan to confirm.
      if (j >= 0)
        for (int c = 0; c < n; ++c)
          if (le(a, c) && le(b, c) && !le(j, c)) j = -1;
      if (m >= 0)
        for (int c = 0; c < n; ++c)
          if (le(c, a) && le(c, b) && !le(c, m)) m = -1;
      if (j < 0) throw NotALattice("missing join of " + wit2(a, b));
      if (m < 0) throw NotALattice("missing meet of " + wit2(a, b));
      L.join_[a * n + b] = j;
      L.meet_[a * n + b] = m;
    }

  // Bottom and top.
  L.bot_ = 0;
  L.top_ = 0;
  for (int c = 0; c < n; ++c) {
    if (le(c, L.bot_)) L.bot_ = c;
    if (le(L.top_, c)) L.top_ = c;
  }
  for (int c = 0; c < n; ++c) {
    if (!le(L.bot_, c)) throw NotALattice("no bottom element");
    if (!le(c, L.top_)) throw NotALattice("no top element");
  }

  // Commutative monoid with top as unit.
  L.tensor_.assign(n * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) L.tensor_[a * n + b] = tensor[a][b];
  auto tns = [&](Deg a, Deg b) { return L.tensor_[a * n + b]; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (tns(a, b) != tns(b, a))
        throw NotAMonoid("tensor not commutative at " + wit2(a, b));
  for (int a = 0; a < n; ++a)
    if (tns(a, L.top_) != a)
      throw NotAMonoid("top is not a unit at (" + std::to_string(a) + ")");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (tns(tns(a, b), c) != tns(a, tns(b, c)))
          throw NotAMonoid("tensor not associative at " + wit3(a, b, c));

  // Distribution over binary joins and over the empty join; finiteness then
  // gives distribution over arbitrary joins.
  for (int a = 0; a < n; ++a)
    if (tns(a, L.bot_) != L.bot_)
      throw NotDistributive("a(x)0 != 0 at (" + std::to_string(a) + ")");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (tns(a, L.join_[b * n + c]) != L.join_[tns(a, b) * n + tns(a, c)])
          throw NotDistributive("tensor/join distribution fails at " +
                                wit3(a, b, c));

  // Derived residuum: a->b = join{c | a(x)c <= b}.
  L.res_.assign(n * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Deg r = L.bot_;
      for (int c = 0; c < n; ++c)
        if (le(tns(a, c), b)) r = L.join_[r * n + c];
      L.res_[a * n + b] = r;
    }
  // The adjunction is forced by join-distributivity; assert it anyway.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (le(tns(a, c), b) != le(c, L.res_[a * n + b]))
          throw InternalError("residuum adjunction failed at " +
                              wit3(a, b, c));

  L.frame_ = (L.tensor_ == L.meet_);
  L.chain_ = true;
  for (int a = 0; a < n && L.chain_; ++a)
    for (int b = 0; b < n; ++b)
      if (!le(a, b) && !le(b, a)) {
        L.chain_ = false;
        break;
      }
  return lat;
}

/// The n-element chain 0 = d0 < ... < d(n-1) = 1 with either the minimum
/// tensor (goedel) or truncated addition on equally spaced values
/// (lukasiewicz).
inline LatticePtr make_chain(int n, ChainKind kind) {
  if (n < 2) throw InvalidSize("chain needs at least 2 elements");
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  std::vector<std::vector<Deg>> tns(n, std::vector<Deg>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      leq[a][b] = a <= b;
      tns[a][b] = kind == ChainKind::godel ? std::min(a, b)
                                           : std::max(0, a + b - (n - 1));
    }
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    if (i == 0)
      labels.push_back("0");
    else if (i == n - 1)
      labels.push_back("1");
    else
      labels.push_back(std::to_string(i) + "/" + std::to_string(n - 1));
  }
  std::string name =
      (kind == ChainKind::godel ? "godel" : "lukasiewicz") + std::to_string(n);
  if (n == 2) name = "bool";
  return build_lattice(name, leq, tns, labels);
}

inline LatticePtr make_bool() { return make_chain(2, ChainKind::godel); }

/// Componentwise product of two lattices; index of (a1,a2) is a1*|L2|+a2.
inline LatticePtr make_product(const LatticePtr& l1, const LatticePtr& l2) {
  const int n1 = l1->size(), n2 = l2->size(), n = n1 * n2;
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  std::vector<std::vector<Deg>> tns(n, std::vector<Deg>(n));
  std::vector<std::string> labels(n);
  for (int a = 0; a < n; ++a) {
    const int a1 = a / n2, a2 = a % n2;
    labels[a] = "(" + l1->label(a1) + "," + l2->label(a2) + ")";
    for (int b = 0; b < n; ++b) {
      const int b1 = b / n2, b2 = b % n2;
      leq[a][b] = l1->leq(a1, b1) && l2->leq(a2, b2);
      tns[a][b] = l1->tensor(a1, b1) * n2 + l2->tensor(a2, b2);
    }
  }
  return build_lattice(l1->name() + "*" + l2->name(), leq, tns, labels);
}

/// One entry of the residuation-law report.
struct LawEntry {
  std::string law;      // short identifier, e.g. "(3) a(x)(a->b) <= b"
  bool pass = true;
  std::string witness;  // empty when pass
};

struct LawReport {
  std::vector<LawEntry> entries;
  bool all_pass() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
};

/// Exhaustively re-checks the six residuation laws on a built lattice,
/// quantifying over all subsets where the law joins or meets a family.
/// Failures are report entries, not exceptions: build_lattice should make
/// them unreachable, so the report is a regression artifact.
inline LawReport verify_lattice_laws(const Lattice& L) {
  const int n = L.size();
  LawReport rep;
  auto record = [&](std::string law, bool pass, std::string wit) {
    rep.entries.push_back({std::move(law), pass, std::move(wit)});
  };

  // (1) 1 = a->b  <=>  a <= b
  {
    bool ok = true;
    std::string wit;
    for (Deg a = 0; a < n && ok; ++a)
      for (Deg b = 0; b < n && ok; ++b)
        if ((L.implies(a, b) == L.top()) != L.leq(a, b)) {
          ok = false;
          wit = "(a=" + std::to_string(a) + ",b=" + std::to_string(b) + ")";
        }
    record("(1) 1 = a->b iff a <= b", ok, wit);
  }
  // (2) 1->a = a
  {
    bool ok = true;
    std::string wit;
    for (Deg a = 0; a < n && ok; ++a)
      if (L.implies(L.top(), a) != a) {
        ok = false;
        wit = "(a=" + std::to_string(a) + ")";
      }
    record("(2) 1->a = a", ok, wit);
  }
  // (3) a(x)(a->b) <= b
  {
    bool ok = true;
    std::string wit;
    for (Deg a = 0; a < n && ok; ++a)
      for (Deg b = 0; b < n && ok; ++b)
        if (!L.leq(L.tensor(a, L.implies(a, b)), b)) {
          ok = false;
          wit = "(a=" + std::to_string(a) + ",b=" + std::to_string(b) + ")";
        }
    record("(3) a(x)(a->b) <= b", ok, wit);
  }
  // (4) a->(b->c) = (a(x)b)->c
  {
    bool ok = true;
    std::string wit;
    for (Deg a = 0; a < n && ok; ++a)
      for (Deg b = 0; b < n && ok; ++b)
        for (Deg c = 0; c < n; ++c)
          if (L.implies(a, L.implies(b, c)) != L.implies(L.tensor(a, b), c)) {
            ok = false;
            wit = "(a=" + std::to_string(a) + ",b=" + std::to_string(b) +
                  ",c=" + std::to_string(c) + ")";
            break;
          }
    record("(4) a->(b->c) = (a(x)b)->c", ok, wit);
  }
  // (5) (join a_i)->b = meet (a_i->b), over all subsets {a_i}.
  {
    bool ok = true;
    std::string wit;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n) && ok; ++mask)
      for (Deg b = 0; b < n; ++b) {
        Deg j = L.bot(), m = L.top();
        for (Deg a = 0; a < n; ++a)
          if (mask >> a & 1) {
            j = L.join(j, a);
            m = L.meet(m, L.implies(a, b));
          }
        if (L.implies(j, b) != m) {
          ok = false;
          wit = "(subset mask=" + std::to_string(mask) +
                ",b=" + std::to_string(b) + ")";
          break;
        }
      }
    record("(5) (join a_i)->b = meet(a_i->b)", ok, wit);
  }
  // (6) a->(meet b_j) = meet (a->b_j), over all subsets {b_j}.
  {
    bool ok = true;
    std::string wit;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n) && ok; ++mask)
      for (Deg a = 0; a < n; ++a) {
        Deg mj = L.top(), m = L.top();
        for (Deg b = 0; b < n; ++b)
          if (mask >> b & 1) {
            mj = L.meet(mj, b);
            m = L.meet(m, L.implies(a, b));
          }
        if (L.implies(a, mj) != m) {
          ok = false;
          wit = "(a=" + std::to_string(a) +
                ",subset mask=" + std::to_string(mask) + ")";
          break;
        }
      }
    record("(6) a->(meet b_j) = meet(a->b_j)", ok, wit);
  }
  return rep;
}

}  // namespace lconvex
