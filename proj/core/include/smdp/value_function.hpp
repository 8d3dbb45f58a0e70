#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "smdp/circuit.hpp"
#include "smdp/explicit_mdp.hpp"
#include "smdp/limits.hpp"
#include "smdp/mdp.hpp"
#include "smdp/policy.hpp"
#include "smdp/rational.hpp"

namespace smdp {

/// Circuit from [s | step index] to a two's-complement numerator over
/// `denominator`. The step index is index_width(horizon + 1) bits wide.
struct ValueCircuit {
  Circuit circuit;
  std::size_t horizon = 0;
  std::uint64_t denominator = 1;

  std::size_t step_width() const noexcept { return index_width(horizon + 1); }
  std::size_t state_width() const noexcept { return circuit.num_inputs() - step_width(); }
  std::size_t value_width() const noexcept { return circuit.num_outputs(); }
};

Rational value_at(const ValueCircuit& e, const BitVector& s, std::size_t i);

/// Exact values E(s, i) for i = 0 .. values[k].size() - 1.
struct ValueTable {
  std::vector<BitVector> states;
  std::unordered_map<BitVector, std::size_t> index;
  std::vector<std::vector<Rational>> values;

  std::size_t size() const noexcept { return states.size(); }
  std::size_t find(const BitVector& s) const;
  const Rational* lookup(const BitVector& s, std::size_t i) const;
  friend bool operator==(const ValueTable& a, const ValueTable& b);
};

/// Value recursion E(s, 0) = r(s), E(s, i) = r(s) + sum_s' t(s, s', P) E(s', i - 1),
/// for every state of `m` and i up to its available steps.
ValueTable value_of_policy(const ExplicitMdp& m, const ExplicitPolicy& p);
ValueTable value_of_policy(const ExplicitMdp& m, const StationaryPolicy& p);
ValueTable value_of_policy(const ExplicitMdp& m, const MarkovPolicy& p);

/// Values keyed by history s_0..s_j, holding E(h, T - j). Only histories
/// reachable with positive probability under the policy appear.
struct HistoryValueTable {
  std::map<std::vector<BitVector>, Rational> values;
  std::size_t horizon = 0;
};

HistoryValueTable value_of_history_policy(MdpView m, const Policy& p, std::size_t horizon,
                                          const std::optional<BitVector>& start = std::nullopt,
                                          const Limits& limits = {});

/// Every E(s, i) of a value circuit over all 2^n states and i = 0..horizon.
ValueTable tabulate(const ValueCircuit& e, const Limits& limits = {});

/// Smallest fixed-point circuit reproducing `table`; the table must cover all
/// 2^n states for every i = 0..horizon. Throws LimitError above 24 inputs.
ValueCircuit value_circuit_from_table(const ValueTable& table, std::size_t horizon,
                                      const std::string& name = "value");

struct ConsistencyResult {
  bool consistent = false;
  /// Witness action per table state (0 where no action is needed).
  std::vector<BitVector> states;
  std::vector<std::size_t> witness;
  std::optional<BitVector> counterexample;
  std::string reason;
};

/// For every state: E(s, 0) = r(s) and one action satisfies the value
/// equation for all i = 1..min(T, last index). Reports the first failing state.
ConsistencyResult check_consistency(const BoundedActionMdp& m, const ValueTable& e, std::size_t horizon,
                                    const Limits& limits = {});
/// Circuit form: checks all 2^n states.
ConsistencyResult check_consistency(const BoundedActionMdp& m, const ValueCircuit& e,
                                    const Limits& limits = {});

struct HistoryConsistencyResult {
  bool consistent = false;
  std::optional<std::vector<BitVector>> counterexample;
  std::string reason;
};

HistoryConsistencyResult check_consistency(const BoundedActionMdp& m, const HistoryValueTable& e,
                                           const Limits& limits = {});

/// First action, in declared order, whose successor-weighted sum equals
/// E(s, i) - r(s). Requires i >= 1. Throws InconsistentValueError otherwise.
std::size_t extract_policy(const BoundedActionMdp& m, const ValueTable& e, const BitVector& s,
                           std::size_t i, const Limits& limits = {});
std::size_t extract_policy(const BoundedActionMdp& m, const ValueCircuit& e, const BitVector& s,
                           std::size_t i, const Limits& limits = {});

/// extract_policy at every (state, steps-to-go) of an expansion.
MarkovPolicy extract_markov(const BoundedActionMdp& m, const ExplicitMdp& x, const ValueTable& e,
                            const Limits& limits = {});

}  // namespace smdp
