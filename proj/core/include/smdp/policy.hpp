#pragma once

#include <cstddef>
#include <span>
#include <unordered_map>
#include <variant>
#include <vector>

#include "smdp/bitvector.hpp"
#include "smdp/circuit.hpp"
#include "smdp/explicit_mdp.hpp"

namespace smdp {

/// Circuit from a state to an action index.
struct StationaryPolicy {
  Circuit circuit;
  std::size_t action_count = 1;

  std::size_t state_width() const noexcept { return circuit.num_inputs(); }
};

/// Circuit from [slot_0 | ... | slot_T | time] to an action index, where the
/// time field is index_width(T + 1) bits wide. Slots past the current time
/// are zero-filled by decide_h.
struct HistoryPolicy {
  Circuit circuit;
  std::size_t action_count = 1;
  std::size_t horizon = 0;
  std::size_t state_width = 0;

  std::size_t time_width() const noexcept { return index_width(horizon + 1); }
  std::size_t input_width() const noexcept { return (horizon + 1) * state_width + time_width(); }
};

using Policy = std::variant<StationaryPolicy, HistoryPolicy>;

/// Decoded action. Throws PolicyError when the index is >= action_count.
std::size_t decide(const StationaryPolicy& p, const BitVector& s);
/// Action after history[0..j]; only the first j + 1 entries are read.
std::size_t decide_h(const HistoryPolicy& p, std::span<const BitVector> history, std::size_t j);
/// Dispatches on the policy kind; the current time is history.size() - 1.
std::size_t decide(const Policy& p, std::span<const BitVector> history);

std::size_t action_count(const Policy& p) noexcept;

/// Action per state index of an ExplicitMdp.
struct ExplicitPolicy {
  std::vector<std::size_t> action;
};

/// Action per (state index, steps to go); entry [s][0] is unused.
struct MarkovPolicy {
  std::vector<std::vector<std::size_t>> action;
};

/// Evaluates a stationary circuit on every acting state of `m`.
ExplicitPolicy tabulate(const StationaryPolicy& p, const ExplicitMdp& m);

/// Compiles a total state -> action map over all 2^n states into a DNF-based
/// circuit with at most 2^n terms per output. Throws PolicyError on a partial
/// map or an out-of-range action.
StationaryPolicy compile_explicit(const std::unordered_map<BitVector, std::size_t>& map,
                                  std::size_t num_vars, std::size_t action_count);

/// History circuit reproducing a Markov policy of `m`: the action depends on
/// the state in the current slot and on T - j. Requires m to be an expansion
/// of every state (expand_all), so the map is total.
HistoryPolicy compile_markov(const MarkovPolicy& p, const ExplicitMdp& m);

/// History policy that only reads the current slot.
HistoryPolicy lift_to_history(const StationaryPolicy& p, std::size_t horizon);

}  // namespace smdp
