#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "smdp/cnf.hpp"
#include "smdp/mdp.hpp"
#include "smdp/policy.hpp"
#include "smdp/rational.hpp"
#include "smdp/sequence_layout.hpp"
#include "smdp/value_function.hpp"

namespace smdp {

struct NamedPolicy {
  std::string name;
  Policy policy;
  /// State the policy is meant to start from; the initial state when empty.
  std::optional<BitVector> start;
  std::size_t horizon = 0;
};

/// MDP plus the companion objects of a decision problem built from a formula.
struct ReductionInstance {
  std::string kind;
  Cnf formula;
  BoundedActionMdp mdp;
  std::optional<SequenceLayout> layout;
  std::size_t horizon = 0;
  std::optional<BitVector> state;
  std::optional<std::size_t> steps_to_go;
  std::optional<std::size_t> action;
  std::optional<std::size_t> size_bound;
  std::optional<Rational> reward_bound;
  std::optional<ValueCircuit> value;
  std::vector<NamedPolicy> policies;
  std::vector<std::string> notes;
  /// How the expected answer is obtained by brute force.
  std::string oracle;
};

enum class SatNextMode { Compact, Faithful };

/// Sequence codes for literals over n variables: x_i -> 2(i-1), not x_i -> 2(i-1)+1.
std::uint32_t literal_code(const Literal& lit) noexcept;

/// Satisfiability to next action. Sequences range over the literals plus
/// `sat` (code 2n) and `unsat` (code 2n+1); the instance state holds the
/// clause block of 3m literals encoding the formula, and the action is S.
/// Compact mode uses m = |clauses|; faithful mode pads to m = (2n)^3 by
/// repeating the last clause (or a tautology when there are none).
/// Companion policies "U" and "S" run U (resp. S), a_1, ..., a_n from the state.
ReductionInstance sat_to_next_action(const Cnf& f, SatNextMode mode);

/// MAJSAT to policy evaluation: actions a_i append x_i or not x_i with
/// probability 1/2, reward 1 on sequences that mention every variable once
/// and form a model. Horizon n, policy "sequential" (a_{len+1}), k = 1/2.
ReductionInstance majsat_to_eval(const Cnf& f);

/// E-MAJSAT to bounded policy existence over X = x_1..x_n, Y = x_{n+1}..x_{2n}.
/// Actions a_1..a_n (random y_i), b_1..b_n (x_i), c_1..c_n (not x_i); reward 1
/// on x_1..x_n, y_1..y_n sequences that satisfy Q. The "reference" policy
/// picks the X-literals of `reference_x` (bit i set = x_{i+1} true) and then
/// a_1..a_n; z is the largest gate count over all 2^n such policies.
ReductionInstance emajsat_to_bounded_policy(const Cnf& f, std::size_t x_count, const Rational& threshold,
                                            std::uint64_t reference_x = 0);

/// UNSAT to value-function consistency: one action flipping a uniformly
/// chosen variable, reward 1 on models, E identically 0.
ReductionInstance unsat_to_consistency(const Cnf& f);

/// Forall-exists to value-function existence; same MDP as the E-MAJSAT
/// construction, k = 1. A value circuit of the reference policy is attached
/// when the state space has at most 2^max_value_vars states.
ReductionInstance forallexists_to_valuefn(const Cnf& f, std::size_t x_count, std::uint64_t reference_x = 0,
                                          std::size_t max_value_vars = 12);

/// Stationary policy whose action depends only on the sequence length:
/// by_length[len], or by_length.back() for longer sequences.
StationaryPolicy length_policy(const SequenceLayout& layout, const std::vector<std::size_t>& by_length,
                               std::size_t action_count, const std::string& name);

/// Sequential policy of the E-MAJSAT / forall-exists MDP: b_i or c_i at
/// length i - 1 according to bit i - 1 of x, then a_1..a_n.
StationaryPolicy xy_policy(const SequenceLayout& layout, std::size_t x_count, std::uint64_t x);

}  // namespace smdp
