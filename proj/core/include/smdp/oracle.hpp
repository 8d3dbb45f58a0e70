#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "smdp/cnf.hpp"
#include "smdp/explicit_mdp.hpp"
#include "smdp/limits.hpp"
#include "smdp/mdp.hpp"
#include "smdp/policy.hpp"
#include "smdp/rational.hpp"
#include "smdp/value_function.hpp"

namespace smdp {

/// Finite-horizon optimum by backward induction over an expansion.
struct OptimalSolution {
  /// value[s][i] = V*(s, i) for i = 0..steps_available(s).
  ValueTable value;
  /// optimal[s][i]: every action attaining the maximum (empty for i = 0).
  std::vector<std::vector<std::vector<std::size_t>>> optimal;
  /// Lowest-index optimal action per (s, i).
  MarkovPolicy greedy;
};

OptimalSolution solve_optimal(const ExplicitMdp& m);

/// Actions optimal at `s` with `steps_to_go` steps left, found by expanding
/// the MDP from s with that horizon. Throws Error when steps_to_go is 0.
std::vector<std::size_t> best_next_action(MdpView m, const BitVector& s, std::size_t steps_to_go,
                                          const Limits& limits = {});

struct BoundedPolicyResult {
  bool exists = false;
  /// Witness circuit (size <= z) when one exists.
  std::optional<StationaryPolicy> witness;
  /// Exact reward of the witness.
  std::optional<Rational> reward;
  /// Number of stationary action maps with reward >= k.
  std::size_t good_maps = 0;
};

/// Is there a stationary policy circuit with at most z gates whose exact
/// expected reward from s0 over horizon T is >= k? Enumerates every action
/// map over the decision states (depth < T), then searches circuits by gate
/// count over those states. Throws LimitError beyond tiny scale.
BoundedPolicyResult bounded_policy_exists(MdpView m, std::size_t horizon, std::size_t z, const Rational& k,
                                          const Limits& limits = {});

/// Gate count at which compile_explicit always fits: width * 2^n * 2n.
std::size_t compile_bound(std::size_t num_vars, std::size_t action_count);

bool sat_oracle(const Cnf& f, const Limits& limits = {});
std::uint64_t model_count(const Cnf& f, const Limits& limits = {});
/// Fraction of Y-extensions of the best X-assignment (X = first x_count variables).
Rational best_extension_fraction(const Cnf& f, std::size_t x_count, const Limits& limits = {});
/// Some X-assignment has at least half of its Y-extensions satisfying f.
bool emajsat_oracle(const Cnf& f, std::size_t x_count, const Limits& limits = {});
/// Some X-assignment has all of its Y-extensions satisfying f.
bool forall_exists_oracle(const Cnf& f, std::size_t x_count, const Limits& limits = {});
/// Lowest X-assignment (bit i = x_{i+1}) attaining best_extension_fraction.
std::uint64_t best_x_assignment(const Cnf& f, std::size_t x_count, const Limits& limits = {});

}  // namespace smdp
