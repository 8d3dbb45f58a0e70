#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smdp/bitvector.hpp"

namespace smdp {

enum class GateKind : std::uint8_t { And, Or, Not, Xor, Const0, Const1 };

std::size_t arity(GateKind kind) noexcept;
std::string_view to_string(GateKind kind) noexcept;

/// Operand or output reference: either a primary input or an earlier gate.
struct Ref {
  enum class Source : std::uint8_t { Input, Gate };

  Source source = Source::Input;
  std::uint32_t index = 0;

  static constexpr Ref input(std::size_t i) { return {Source::Input, static_cast<std::uint32_t>(i)}; }
  static constexpr Ref gate(std::size_t i) { return {Source::Gate, static_cast<std::uint32_t>(i)}; }

  bool is_input() const noexcept { return source == Source::Input; }
  bool is_gate() const noexcept { return source == Source::Gate; }

  friend bool operator==(const Ref&, const Ref&) = default;
  friend auto operator<=>(const Ref&, const Ref&) = default;
};

struct Gate {
  GateKind kind = GateKind::Const0;
  std::array<Ref, 2> operands{};

  friend bool operator==(const Gate& a, const Gate& b);
};

/// Immutable Boolean circuit over {AND, OR, NOT, XOR, CONST0, CONST1}.
///
/// Gates are stored in topological order: every operand of gate j refers to an
/// input or to a gate with index < j. Binary gates have fan-in exactly 2.
/// The constructor enforces these invariants and throws CircuitError otherwise.
class Circuit {
 public:
  Circuit() = default;
  Circuit(std::string name, std::size_t num_inputs, std::vector<Gate> gates,
          std::vector<Ref> outputs);

  const std::string& name() const noexcept { return name_; }
  std::size_t num_inputs() const noexcept { return num_inputs_; }
  std::size_t num_outputs() const noexcept { return outputs_.size(); }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  const std::vector<Ref>& outputs() const noexcept { return outputs_; }

  /// Gate count.
  std::size_t size() const noexcept { return gates_.size(); }

  /// Outputs in declared order. Throws WidthError if input.size() != num_inputs().
  BitVector eval(const BitVector& input) const;

  /// Evaluates 64 input vectors at once. inputs[k] holds input bit k of every
  /// lane; outputs[k] receives output bit k of every lane.
  void eval_lanes(std::span<const std::uint64_t> inputs, std::span<std::uint64_t> outputs) const;

  /// Evaluates any number of input vectors, batching 64 per pass.
  std::vector<BitVector> eval_batch(std::span<const BitVector> inputs) const;

  Circuit renamed(std::string name) const;

  /// Structural equality; the name is ignored.
  friend bool operator==(const Circuit& a, const Circuit& b);

 private:
  std::string name_;
  std::size_t num_inputs_ = 0;
  std::vector<Gate> gates_;
  std::vector<Ref> outputs_;
};

/// Exhaustive input-output comparison over all 2^n inputs. Throws WidthError
/// on mismatched input or output counts and LimitError when n > max_inputs.
bool equivalent(const Circuit& a, const Circuit& b, std::size_t max_inputs);

/// Identity on one input (output = input 0), zero gates.
Circuit identity_circuit(std::string name = "id");

}  // namespace smdp
