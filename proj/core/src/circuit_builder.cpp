#include "smdp/circuit_builder.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "smdp/errors.hpp"

namespace smdp {

std::size_t CircuitBuilder::KeyHash::operator()(const Key& k) const noexcept {
  auto enc = [](Ref r) {
    return (static_cast<std::uint64_t>(r.index) << 1) | (r.is_gate() ? 1u : 0u);
  };
  std::uint64_t h = static_cast<std::uint64_t>(k.kind);
  h = h * 0x9e3779b97f4a7c15ull ^ enc(k.a);
  h = h * 0x9e3779b97f4a7c15ull ^ enc(k.b);
  return static_cast<std::size_t>(h ^ (h >> 29));
}

CircuitBuilder::CircuitBuilder(std::size_t num_inputs) : num_inputs_(num_inputs) {}

Ref CircuitBuilder::input(std::size_t i) const {
  if (i >= num_inputs_) throw WidthError("builder input " + std::to_string(i) + " out of range");
  return Ref::input(i);
}

Word CircuitBuilder::inputs(std::size_t offset, std::size_t width) const {
  Word w;
  w.reserve(width);
  for (std::size_t i = 0; i < width; ++i) w.push_back(input(offset + i));
  return w;
}

Ref CircuitBuilder::constant(bool value) {
  if (value) {
    if (!has_const1_) {
      gates_.push_back(Gate{GateKind::Const1, {}});
      const1_ = Ref::gate(gates_.size() - 1);
      has_const1_ = true;
    }
    return const1_;
  }
  if (!has_const0_) {
    gates_.push_back(Gate{GateKind::Const0, {}});
    const0_ = Ref::gate(gates_.size() - 1);
    has_const0_ = true;
  }
  return const0_;
}

bool CircuitBuilder::is_constant(Ref r, bool value) const {
  return value ? (has_const1_ && r == const1_) : (has_const0_ && r == const0_);
}

Ref CircuitBuilder::add(GateKind kind, Ref a, Ref b) {
  if (arity(kind) == 2 && b < a) std::swap(a, b);
  const Key key{kind, a, b};
  if (auto it = table_.find(key); it != table_.end()) return it->second;
  Gate g{kind, {a, b}};
  gates_.push_back(g);
  const Ref r = Ref::gate(gates_.size() - 1);
  table_.emplace(key, r);
  return r;
}

Ref CircuitBuilder::not_(Ref a) {
  if (is_constant(a, false)) return constant(true);
  if (is_constant(a, true)) return constant(false);
  if (a.is_gate() && gates_[a.index].kind == GateKind::Not) return gates_[a.index].operands[0];
  return add(GateKind::Not, a, Ref{});
}

Ref CircuitBuilder::and_(Ref a, Ref b) {
  if (is_constant(a, false) || is_constant(b, false)) return constant(false);
  if (is_constant(a, true)) return b;
  if (is_constant(b, true)) return a;
  if (a == b) return a;
  return add(GateKind::And, a, b);
}

Ref CircuitBuilder::or_(Ref a, Ref b) {
  if (is_constant(a, true) || is_constant(b, true)) return constant(true);
  if (is_constant(a, false)) return b;
  if (is_constant(b, false)) return a;
  if (a == b) return a;
  return add(GateKind::Or, a, b);
}

Ref CircuitBuilder::xor_(Ref a, Ref b) {
  if (is_constant(a, false)) return b;
  if (is_constant(b, false)) return a;
  if (is_constant(a, true)) return not_(b);
  if (is_constant(b, true)) return not_(a);
  if (a == b) return constant(false);
  return add(GateKind::Xor, a, b);
}

Ref CircuitBuilder::mux(Ref sel, Ref if_true, Ref if_false) {
  if (is_constant(sel, true)) return if_true;
  if (is_constant(sel, false)) return if_false;
  if (if_true == if_false) return if_true;
  return or_(and_(sel, if_true), and_(not_(sel), if_false));
}

Ref CircuitBuilder::and_all(std::span<const Ref> refs) {
  Ref acc = constant(true);
  for (Ref r : refs) acc = and_(acc, r);
  return acc;
}

Ref CircuitBuilder::or_all(std::span<const Ref> refs) {
  Ref acc = constant(false);
  for (Ref r : refs) acc = or_(acc, r);
  return acc;
}

Word CircuitBuilder::constant_word(std::uint64_t value, std::size_t width) {
  Word w;
  w.reserve(width);
  for (std::size_t i = 0; i < width; ++i) w.push_back(constant((value >> (width - 1 - i)) & 1u));
  return w;
}

Ref CircuitBuilder::equal(const Word& a, const Word& b) {
  if (a.size() != b.size()) throw WidthError("word width mismatch in equality");
  std::vector<Ref> bits;
  bits.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) bits.push_back(xnor(a[i], b[i]));
  return and_all(bits);
}

Ref CircuitBuilder::equal_const(const Word& a, std::uint64_t value) {
  const std::size_t w = a.size();
  if (w < 64 && (value >> w) != 0) return constant(false);
  std::vector<Ref> bits;
  bits.reserve(w);
  for (std::size_t i = 0; i < w; ++i) {
    const bool bit = (value >> (w - 1 - i)) & 1u;
    bits.push_back(bit ? a[i] : not_(a[i]));
  }
  return and_all(bits);
}

Ref CircuitBuilder::less_than_const(const Word& a, std::uint64_t value) {
  const std::size_t w = a.size();
  if (w < 64 && (value >> w) != 0) return constant(true);
  // Scan from the MSB: a < value iff at the first differing bit a has 0 and value has 1.
  Ref result = constant(false);
  Ref prefix_equal = constant(true);
  for (std::size_t i = 0; i < w; ++i) {
    const bool bit = (value >> (w - 1 - i)) & 1u;
    if (bit) {
      result = or_(result, and_(prefix_equal, not_(a[i])));
      prefix_equal = and_(prefix_equal, a[i]);
    } else {
      prefix_equal = and_(prefix_equal, not_(a[i]));
    }
  }
  return result;
}

Word CircuitBuilder::increment(const Word& a) {
  Word out(a.size());
  Ref carry = constant(true);
  for (std::size_t k = a.size(); k-- > 0;) {
    out[k] = xor_(a[k], carry);
    carry = and_(a[k], carry);
  }
  return out;
}

Word CircuitBuilder::mux_word(Ref sel, const Word& if_true, const Word& if_false) {
  if (if_true.size() != if_false.size()) throw WidthError("word width mismatch in mux");
  Word out;
  out.reserve(if_true.size());
  for (std::size_t i = 0; i < if_true.size(); ++i) out.push_back(mux(sel, if_true[i], if_false[i]));
  return out;
}

Word CircuitBuilder::and_word(Ref gate, const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Ref r : w) out.push_back(and_(gate, r));
  return out;
}

Word CircuitBuilder::or_word(const Word& a, const Word& b) {
  if (a.size() != b.size()) throw WidthError("word width mismatch in or");
  Word out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(or_(a[i], b[i]));
  return out;
}

Ref CircuitBuilder::exactly_one(std::span<const Ref> bits) {
  Ref seen = constant(false);
  Ref twice = constant(false);
  for (Ref b : bits) {
    twice = or_(twice, and_(seen, b));
    seen = or_(seen, b);
  }
  return and_(seen, not_(twice));
}

std::vector<Ref> CircuitBuilder::instantiate(const Circuit& c, std::span<const Ref> inputs) {
  if (inputs.size() != c.num_inputs()) {
    throw WidthError("instantiating '" + c.name() + "' with " + std::to_string(inputs.size()) +
                     " inputs, expected " + std::to_string(c.num_inputs()));
  }
  std::vector<Ref> gate_refs(c.size());
  auto map = [&](Ref r) { return r.is_input() ? inputs[r.index] : gate_refs[r.index]; };
  for (std::size_t j = 0; j < c.size(); ++j) {
    const Gate& g = c.gates()[j];
    switch (g.kind) {
      case GateKind::And: gate_refs[j] = and_(map(g.operands[0]), map(g.operands[1])); break;
      case GateKind::Or: gate_refs[j] = or_(map(g.operands[0]), map(g.operands[1])); break;
      case GateKind::Xor: gate_refs[j] = xor_(map(g.operands[0]), map(g.operands[1])); break;
      case GateKind::Not: gate_refs[j] = not_(map(g.operands[0])); break;
      case GateKind::Const0: gate_refs[j] = constant(false); break;
      case GateKind::Const1: gate_refs[j] = constant(true); break;
    }
  }
  std::vector<Ref> outs;
  outs.reserve(c.num_outputs());
  for (Ref r : c.outputs()) outs.push_back(map(r));
  return outs;
}

Circuit CircuitBuilder::build(std::string name, const std::vector<Ref>& outputs) const {
  std::vector<bool> live(gates_.size(), false);
  std::vector<std::size_t> stack;
  for (Ref r : outputs) {
    if (r.is_gate()) stack.push_back(r.index);
  }
  while (!stack.empty()) {
    const std::size_t j = stack.back();
    stack.pop_back();
    if (live[j]) continue;
    live[j] = true;
    for (std::size_t k = 0; k < arity(gates_[j].kind); ++k) {
      const Ref op = gates_[j].operands[k];
      if (op.is_gate() && !live[op.index]) stack.push_back(op.index);
    }
  }
  std::vector<std::uint32_t> renumber(gates_.size(), 0);
  std::vector<Gate> kept;
  auto remap = [&](Ref r) { return r.is_gate() ? Ref::gate(renumber[r.index]) : r; };
  for (std::size_t j = 0; j < gates_.size(); ++j) {
    if (!live[j]) continue;
    Gate g = gates_[j];
    for (std::size_t k = 0; k < arity(g.kind); ++k) g.operands[k] = remap(g.operands[k]);
    renumber[j] = static_cast<std::uint32_t>(kept.size());
    kept.push_back(g);
  }
  std::vector<Ref> outs;
  outs.reserve(outputs.size());
  for (Ref r : outputs) outs.push_back(remap(r));
  return Circuit(std::move(name), num_inputs_, std::move(kept), std::move(outs));
}

namespace {


class ShannonSynth {
 public:
  ShannonSynth(CircuitBuilder& b, std::size_t n) : b_(b), n_(n) {}

  Ref build(const std::vector<bool>& bits, std::size_t offset, std::size_t level) {
    const std::size_t len = std::size_t{1} << (n_ - level);
    bool all0 = true, all1 = true;
    for (std::size_t i = 0; i < len; ++i) {
      if (bits[offset + i]) {
        all0 = false;
      } else {
        all1 = false;
      }
      if (!all0 && !all1) break;
    }
    if (all0) return b_.constant(false);
    if (all1) return b_.constant(true);
    std::vector<bool> key(bits.begin() + static_cast<std::ptrdiff_t>(offset),
                          bits.begin() + static_cast<std::ptrdiff_t>(offset + len));
    auto& memo = memo_[level];
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const std::size_t half = len / 2;
    const Ref low = build(bits, offset, level + 1);
    const Ref high = build(bits, offset + half, level + 1);
    const Ref r = b_.mux(b_.input(level), high, low);
    memo.emplace(std::move(key), r);
    return r;
  }

 private:
  CircuitBuilder& b_;
  std::size_t n_;
  std::map<std::size_t, std::unordered_map<std::vector<bool>, Ref>> memo_;
};

}  // namespace

Circuit circuit_from_table(std::string name, std::size_t num_inputs, std::size_t num_outputs,
                           const std::function<std::uint64_t(std::uint64_t)>& table) {
  if (num_inputs > 24) throw LimitError("truth-table synthesis limited to 24 inputs");
  if (num_outputs > 64) throw WidthError("truth-table synthesis limited to 64 outputs");
  const std::uint64_t rows = std::uint64_t{1} << num_inputs;
  std::vector<std::uint64_t> values(rows);
  for (std::uint64_t r = 0; r < rows; ++r) values[r] = table(r);
  CircuitBuilder b(num_inputs);
  ShannonSynth synth(b, num_inputs);
  std::vector<Ref> outputs;
  outputs.reserve(num_outputs);
  std::vector<bool> bits(rows);
  for (std::size_t o = 0; o < num_outputs; ++o) {
    const std::size_t shift = num_outputs - 1 - o;
    for (std::uint64_t r = 0; r < rows; ++r) bits[r] = (values[r] >> shift) & 1u;
    outputs.push_back(synth.build(bits, 0, 0));
  }
  return b.build(std::move(name), outputs);
}

}  // namespace smdp
