#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smdp/bitvector.hpp"
#include "smdp/circuit_builder.hpp"
#include "smdp/mdp.hpp"

namespace smdp {

/// State encoding of a sequence of at most `max_length` elements drawn from
/// {0, ..., alphabet_size - 1}: a length counter of index_width(L + 1) bits
/// followed by L slots of index_width(alphabet_size) bits. Unused slots are zero.
struct SequenceLayout {
  std::size_t alphabet_size = 1;
  std::size_t max_length = 0;

  std::size_t element_width() const noexcept { return index_width(alphabet_size); }
  std::size_t counter_width() const noexcept { return index_width(max_length + 1); }
  std::size_t state_width() const noexcept { return counter_width() + max_length * element_width(); }
  std::size_t slot_offset(std::size_t j) const noexcept { return counter_width() + j * element_width(); }

  BitVector encode(std::span<const std::uint32_t> sequence) const;
  /// Throws ModelError when the counter exceeds L or an element is outside the alphabet.
  std::vector<std::uint32_t> decode(const BitVector& state) const;
  std::size_t length(const BitVector& state) const;
  /// Decodes and also requires zero-filled unused slots.
  bool is_canonical(const BitVector& state) const;

  /// Variable names: q1.. for the counter, v<bit>_<slot> for the elements (1-based).
  std::vector<std::string> variable_names() const;
};

/// Wires of a sequence encoded at `offset` within a builder's inputs.
struct SequenceWires {
  Word counter;
  std::vector<Word> slots;
};

SequenceWires sequence_wires(const CircuitBuilder& b, const SequenceLayout& layout, std::size_t offset = 0);

struct AppendOutcome {
  std::uint32_t code = 0;
  std::uint64_t numerator = 0;
};

/// When an append action is active. Room for one more element is always required.
enum class AppendGuard { Always, NoTerminator, ExactlyOneTerminator };

/// Action that appends one of `outcomes` (numerators summing to the model
/// denominator) when its guard holds, and leaves the state unchanged otherwise.
struct AppendRule {
  std::string name;
  std::vector<AppendOutcome> outcomes;
  AppendGuard guard = AppendGuard::Always;
};

struct AppendModelSpec {
  std::string name;
  SequenceLayout layout;
  std::uint64_t denominator = 1;
  std::vector<AppendRule> rules;
  /// Terminator codes for the NoTerminator / ExactlyOneTerminator guards.
  std::uint32_t sat_code = 0;
  std::uint32_t unsat_code = 0;
  Circuit reward;
  std::optional<std::size_t> horizon;
};

/// Bounded-action MDP over the sequence encoding, starting from the empty
/// sequence. Throws ModelError on malformed rules.
BoundedActionMdp build_append_mdp(const AppendModelSpec& model);

}  // namespace smdp
