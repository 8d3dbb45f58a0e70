#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "smdp/bitvector.hpp"
#include "smdp/circuit.hpp"
#include "smdp/limits.hpp"
#include "smdp/rational.hpp"

namespace smdp {

/// MDP whose states are assignments to Boolean variables.
///
/// `transition` has input layout [s | s' | action index] and outputs the
/// probability numerator as an unsigned integer over `prob_denominator`.
/// `reward` has input layout [s] and outputs a two's-complement integer.
/// Action indices are zero-based, MSB first, index_width(|actions|) bits wide.
struct SuccinctMdp {
  std::string name;
  std::vector<std::string> variables;
  BitVector initial_state;
  std::vector<std::string> actions;
  Circuit transition;
  Circuit reward;
  std::uint64_t prob_denominator = 1;
  std::optional<std::size_t> horizon;

  std::size_t num_vars() const noexcept { return variables.size(); }
  std::size_t action_width() const noexcept { return index_width(actions.size()); }
  std::size_t prob_width() const noexcept { return transition.num_outputs(); }
  std::size_t reward_width() const noexcept { return reward.num_outputs(); }
};

/// Enumerator of the positive-probability successors of one action.
/// Input [s | slot index], output [valid | s'].
struct SuccessorCircuit {
  Circuit circuit;
  std::size_t branching = 1;

  std::size_t slot_width() const noexcept { return index_width(branching); }
};

struct BoundedActionMdp {
  SuccinctMdp base;
  std::vector<SuccessorCircuit> successors;  // one per action, in action order

  std::size_t max_branching() const noexcept;
};

using AnyMdp = std::variant<SuccinctMdp, BoundedActionMdp>;

/// Non-owning view over either MDP flavour.
class MdpView {
 public:
  MdpView(const SuccinctMdp& m) : base_(&m) {}  // NOLINT(google-explicit-constructor)
  MdpView(const BoundedActionMdp& m) : base_(&m.base), bounded_(&m) {}  // NOLINT
  MdpView(const AnyMdp& m);  // NOLINT

  const SuccinctMdp& base() const noexcept { return *base_; }
  const BoundedActionMdp* bounded() const noexcept { return bounded_; }
  const SuccinctMdp* operator->() const noexcept { return base_; }

 private:
  const SuccinctMdp* base_;
  const BoundedActionMdp* bounded_ = nullptr;
};

/// Two's-complement reading of a bit vector of width 1..64, MSB first.
std::int64_t read_signed(const BitVector& bits);
/// Inverse of read_signed. Throws Error when the value does not fit.
BitVector write_signed(std::int64_t value, std::size_t width);

BitVector action_bits(const SuccinctMdp& m, std::size_t action);

/// Raw numerator of t(s, s2, a). Throws ModelError if it exceeds the denominator.
std::uint64_t transition_numerator(const SuccinctMdp& m, const BitVector& s, const BitVector& s2,
                                   std::size_t action);
Rational transition_prob(const SuccinctMdp& m, const BitVector& s, const BitVector& s2,
                         std::size_t action);
std::int64_t reward(const SuccinctMdp& m, const BitVector& s);

struct Successor {
  BitVector state;
  Rational prob;
  std::uint64_t numerator = 0;
};

/// Positive-probability successors of (s, a), ordered by slot for bounded
/// MDPs and by state value otherwise. Throws LimitError when a plain MDP has
/// more than limits.max_states candidate successors, and ModelError on a
/// duplicate slot or when the probabilities do not sum to 1.
std::vector<Successor> successors(MdpView m, const BitVector& s, std::size_t action,
                                  const Limits& limits = {});

struct ValidationReport {
  std::vector<std::string> violations;
  std::size_t checked_pairs = 0;
  bool exhaustive = false;

  bool ok() const noexcept { return violations.empty(); }
};

/// Checks widths, the numerator bound, normalization and (for bounded MDPs)
/// successor-list fidelity. Exhaustive over all states when n <= exhaustive_vars,
/// otherwise over states reachable from s0 plus a seeded random sample.
ValidationReport validate(MdpView m, const Limits& limits = {}, std::size_t exhaustive_vars = 8,
                          std::size_t sample_states = 64, std::uint64_t seed = 0);

}  // namespace smdp
