#pragma once

#include <array>
#include <string_view>

namespace lconvex {

/// Deliberate fault injection for sensitivity testing of the theorem suite.
/// Exactly one mutation can be active at a time; every registered mutation
/// must flip at least one suite check to Fail.  Not thread-safe while active.
enum class Mutation {
  none,
  hull_join_supersets,   // hull joins the supersets instead of meeting them
  sub_uses_tensor,       // sub uses a(x) (x) b(x) instead of a(x) -> b(x)
  zadeh_forward_meet,    // forward image meets over fibers instead of joining
  supremum_first_match,  // supremum skips the defining-equation scan on y
  specialization_flip,   // specialization order transposed
  scott_skip_lower,      // Scott convexity test drops the lower-set condition
};

inline Mutation& active_mutation() {
  static Mutation m = Mutation::none;
  return m;
}

inline bool mutated(Mutation m) { return active_mutation() == m; }

/// RAII scope for one mutation run.
struct MutationGuard {
  explicit MutationGuard(Mutation m) { active_mutation() = m; }
  ~MutationGuard() { active_mutation() = Mutation::none; }
  MutationGuard(const MutationGuard&) = delete;
  MutationGuard& operator=(const MutationGuard&) = delete;
};

inline constexpr std::array<std::pair<Mutation, std::string_view>, 6>
    kRegisteredMutations{{
        {Mutation::hull_join_supersets, "hull"},
        {Mutation::sub_uses_tensor, "sub"},
        {Mutation::zadeh_forward_meet, "zadeh-forward"},
        {Mutation::supremum_first_match, "supremum"},
        {Mutation::specialization_flip, "specialization"},
        {Mutation::scott_skip_lower, "scott-convex"},
    }};

}  // namespace lconvex
