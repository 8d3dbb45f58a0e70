#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "smdp/circuit.hpp"

namespace smdp {

/// Bundle of wires read as an unsigned integer, most significant wire first.
using Word = std::vector<Ref>;

/// Incremental circuit construction with constant folding and structural
/// hashing. Gates that do not reach an output are dropped by build().
class CircuitBuilder {
 public:
  explicit CircuitBuilder(std::size_t num_inputs);

  std::size_t num_inputs() const noexcept { return num_inputs_; }
  Ref input(std::size_t i) const;
  Word inputs(std::size_t offset, std::size_t width) const;

  Ref constant(bool value);
  bool is_constant(Ref r, bool value) const;

  Ref and_(Ref a, Ref b);
  Ref or_(Ref a, Ref b);
  Ref xor_(Ref a, Ref b);
  Ref not_(Ref a);
  Ref xnor(Ref a, Ref b) { return not_(xor_(a, b)); }
  Ref mux(Ref sel, Ref if_true, Ref if_false);
  Ref and_all(std::span<const Ref> refs);
  Ref or_all(std::span<const Ref> refs);

  Word constant_word(std::uint64_t value, std::size_t width);
  Ref equal(const Word& a, const Word& b);
  Ref equal_const(const Word& a, std::uint64_t value);
  Ref less_than_const(const Word& a, std::uint64_t value);
  /// a + 1 truncated to a.size() bits.
  Word increment(const Word& a);
  Word mux_word(Ref sel, const Word& if_true, const Word& if_false);
  Word and_word(Ref gate, const Word& w);
  Word or_word(const Word& a, const Word& b);
  /// Exactly one wire of `bits` is high.
  Ref exactly_one(std::span<const Ref> bits);

  /// Inlines `c` with its inputs bound to `inputs`; returns its outputs.
  std::vector<Ref> instantiate(const Circuit& c, std::span<const Ref> inputs);

  Circuit build(std::string name, const std::vector<Ref>& outputs) const;

 private:
  struct Key {
    GateKind kind;
    Ref a;
    Ref b;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  Ref add(GateKind kind, Ref a, Ref b);

  std::size_t num_inputs_;
  std::vector<Gate> gates_;
  std::unordered_map<Key, Ref, KeyHash> table_;
  Ref const0_{};
  Ref const1_{};
  bool has_const0_ = false;
  bool has_const1_ = false;
};

/// Synthesizes a circuit for an arbitrary function given as a truth table by
/// memoized Shannon expansion on input 0, then input 1, and so on. `table`
/// maps an assignment index (input 0 most significant) to the output bits
/// (output 0 most significant, read from a `num_outputs`-bit integer).
Circuit circuit_from_table(std::string name, std::size_t num_inputs, std::size_t num_outputs,
                           const std::function<std::uint64_t(std::uint64_t)>& table);

}  // namespace smdp
