#pragma once

#include <cstddef>
#include <cstdint>

namespace lconvex {

/// Caps for the exhaustive scans.  Exceeding a cap raises BudgetExceeded
/// rather than silently sampling; suites that can fall back to seeded
/// sampling do so explicitly and report the skip.
struct Budgets {
  /// Maximum size of a convex family produced by closure generation.
  std::size_t family_cap = 5000;
  /// Cap on |L|^|X|-style pointwise scans (subset enumerations).
  std::uint64_t scan_cap = 1'000'000;
  /// Cap on the |L|^(2|P|) double scan in scott_structure.
  std::uint64_t scott_cap = 10'000'000;
  /// Size bound for the exhaustive directed-subfamily oracles.
  int directed_probe = 4;
  /// Family-size bound for the is_finite_subset oracle.
  int finite_probe = 3;
};

/// checked_pow(b, e) with saturation at 2^63; used for budget guards.
inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > (std::uint64_t{1} << 62) / base)
      return std::uint64_t{1} << 63;
    r *= base;
  }
  return r;
}

}  // namespace lconvex
