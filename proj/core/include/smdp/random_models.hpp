#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "smdp/circuit.hpp"
#include "smdp/cnf.hpp"
#include "smdp/mdp.hpp"
#include "smdp/policy.hpp"

namespace smdp {

using Rng = std::mt19937_64;

struct RandomMdpOptions {
  std::size_t min_vars = 1;
  std::size_t max_vars = 4;
  std::size_t max_actions = 3;
  /// Largest number of successors per (s, a); also the successor circuits' branching.
  std::size_t max_support = 4;
  std::int64_t min_reward = -2;
  std::int64_t max_reward = 3;
};

/// Random MDP with explicit tables compiled to circuits. The base model is a
/// valid SuccinctMdp on its own; the successor circuits list each support in
/// a random slot order.
BoundedActionMdp random_mdp(Rng& rng, const RandomMdpOptions& options = {});

/// Random circuit; each gate draws its operands from the inputs and earlier gates.
Circuit random_circuit(Rng& rng, std::size_t num_inputs, std::size_t num_gates, std::size_t num_outputs);

/// Clauses of `width` literals (width 0: random 1..3), variables drawn uniformly.
Cnf random_cnf(Rng& rng, std::size_t num_vars, std::size_t num_clauses, std::size_t width);

StationaryPolicy random_stationary_policy(Rng& rng, std::size_t num_vars, std::size_t action_count);

/// History policy whose action depends on s_0, the current state and the time.
HistoryPolicy random_history_policy(Rng& rng, std::size_t num_vars, std::size_t action_count, std::size_t horizon);

}  // namespace smdp
