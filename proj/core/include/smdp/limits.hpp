#pragma once

#include <cstddef>

namespace smdp {

/// Enumeration bounds. Operations that would exceed them throw LimitError
/// instead of approximating.
struct Limits {
  std::size_t max_states = std::size_t{1} << 20;
  std::size_t max_trajectories = std::size_t{1} << 22;
  /// Largest circuit size searched exhaustively by bounded_policy_exists.
  std::size_t max_search_gates = 6;
  /// Largest variable count accepted by the brute-force SAT-family oracles.
  std::size_t max_oracle_vars = 20;

  /// Defaults, with max_states overridden by SMDP_LIMIT_STATES when set.
  static Limits from_environment();
};

}  // namespace smdp
