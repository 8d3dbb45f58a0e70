#include "smdp/circuit.hpp"

#include <algorithm>
#include <utility>

#include "smdp/errors.hpp"

namespace smdp {

std::size_t arity(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::And:
    case GateKind::Or:
    case GateKind::Xor:
      return 2;
    case GateKind::Not:
      return 1;
    case GateKind::Const0:
    case GateKind::Const1:
      return 0;
  }
  return 0;
}

std::string_view to_string(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::And: return "AND";
    case GateKind::Or: return "OR";
    case GateKind::Not: return "NOT";
    case GateKind::Xor: return "XOR";
    case GateKind::Const0: return "CONST0";
    case GateKind::Const1: return "CONST1";
  }
  return "?";
}

bool operator==(const Gate& a, const Gate& b) {
  if (a.kind != b.kind) return false;
  for (std::size_t k = 0; k < arity(a.kind); ++k) {
    if (a.operands[k] != b.operands[k]) return false;
  }
  return true;
}

Circuit::Circuit(std::string name, std::size_t num_inputs, std::vector<Gate> gates,
                 std::vector<Ref> outputs)
    : name_(std::move(name)),
      num_inputs_(num_inputs),
      gates_(std::move(gates)),
      outputs_(std::move(outputs)) {
  auto valid = [&](Ref r, std::size_t bound) {
    return r.is_input() ? r.index < num_inputs_ : r.index < bound;
  };
  for (std::size_t j = 0; j < gates_.size(); ++j) {
    auto& g = gates_[j];
    const std::size_t n = arity(g.kind);
    for (std::size_t k = 0; k < n; ++k) {
      if (!valid(g.operands[k], j)) {
        throw CircuitError("gate g" + std::to_string(j) + " operand " + std::to_string(k) +
                           " is not an input or an earlier gate");
      }
    }
    for (std::size_t k = n; k < 2; ++k) g.operands[k] = Ref{};
  }
  for (std::size_t o = 0; o < outputs_.size(); ++o) {
    if (!valid(outputs_[o], gates_.size())) {
      throw CircuitError("output " + std::to_string(o) + " refers to a missing input or gate");
    }
  }
}

namespace {

template <typename Word, typename Fetch>
void run_gates(const std::vector<Gate>& gates, std::vector<Word>& values, Fetch fetch) {
  for (std::size_t j = 0; j < gates.size(); ++j) {
    const Gate& g = gates[j];
    switch (g.kind) {
      case GateKind::And: values[j] = fetch(g.operands[0]) & fetch(g.operands[1]); break;
      case GateKind::Or: values[j] = fetch(g.operands[0]) | fetch(g.operands[1]); break;
      case GateKind::Xor: values[j] = fetch(g.operands[0]) ^ fetch(g.operands[1]); break;
      case GateKind::Not: values[j] = ~fetch(g.operands[0]); break;
      case GateKind::Const0: values[j] = Word{0}; break;
      case GateKind::Const1: values[j] = ~Word{0}; break;
    }
  }
}

}  // namespace

void Circuit::eval_lanes(std::span<const std::uint64_t> inputs,
                         std::span<std::uint64_t> outputs) const {
  if (inputs.size() != num_inputs_) {
    throw WidthError("circuit '" + name_ + "' expects " + std::to_string(num_inputs_) +
                     " inputs, got " + std::to_string(inputs.size()));
  }
  if (outputs.size() != outputs_.size()) throw WidthError("output buffer width mismatch");
  thread_local std::vector<std::uint64_t> values;
  values.resize(gates_.size());
  auto fetch = [&](Ref r) -> std::uint64_t {
    return r.is_input() ? inputs[r.index] : values[r.index];
  };
  run_gates(gates_, values, fetch);
  for (std::size_t o = 0; o < outputs_.size(); ++o) outputs[o] = fetch(outputs_[o]);
}

BitVector Circuit::eval(const BitVector& input) const {
  if (input.size() != num_inputs_) {
    throw WidthError("circuit '" + name_ + "' expects " + std::to_string(num_inputs_) +
                     " inputs, got " + std::to_string(input.size()));
  }
  thread_local std::vector<std::uint8_t> values;
  values.resize(gates_.size());
  auto fetch = [&](Ref r) -> std::uint8_t {
    return r.is_input() ? static_cast<std::uint8_t>(input[r.index]) : values[r.index];
  };
  for (std::size_t j = 0; j < gates_.size(); ++j) {
    const Gate& g = gates_[j];
    switch (g.kind) {
      case GateKind::And: values[j] = fetch(g.operands[0]) & fetch(g.operands[1]); break;
      case GateKind::Or: values[j] = fetch(g.operands[0]) | fetch(g.operands[1]); break;
      case GateKind::Xor: values[j] = fetch(g.operands[0]) ^ fetch(g.operands[1]); break;
      case GateKind::Not: values[j] = fetch(g.operands[0]) ^ 1u; break;
      case GateKind::Const0: values[j] = 0; break;
      case GateKind::Const1: values[j] = 1; break;
    }
  }
  BitVector out(outputs_.size());
  for (std::size_t o = 0; o < outputs_.size(); ++o) out.set(o, fetch(outputs_[o]) != 0);
  return out;
}

std::vector<BitVector> Circuit::eval_batch(std::span<const BitVector> inputs) const {
  std::vector<BitVector> results;
  results.reserve(inputs.size());
  std::vector<std::uint64_t> in(num_inputs_);
  std::vector<std::uint64_t> out(outputs_.size());
  for (std::size_t base = 0; base < inputs.size(); base += 64) {
    const std::size_t lanes = std::min<std::size_t>(64, inputs.size() - base);
    std::fill(in.begin(), in.end(), 0);
    for (std::size_t lane = 0; lane < lanes; ++lane) {
      const BitVector& v = inputs[base + lane];
      if (v.size() != num_inputs_) {
        throw WidthError("circuit '" + name_ + "' expects " + std::to_string(num_inputs_) +
                         " inputs, got " + std::to_string(v.size()));
      }
      for (std::size_t k = 0; k < num_inputs_; ++k) {
        if (v[k]) in[k] |= std::uint64_t{1} << lane;
      }
    }
    eval_lanes(in, out);
    for (std::size_t lane = 0; lane < lanes; ++lane) {
      BitVector r(outputs_.size());
      for (std::size_t o = 0; o < outputs_.size(); ++o) r.set(o, (out[o] >> lane) & 1u);
      results.push_back(std::move(r));
    }
  }
  return results;
}

Circuit Circuit::renamed(std::string name) const {
  Circuit c = *this;
  c.name_ = std::move(name);
  return c;
}

bool operator==(const Circuit& a, const Circuit& b) {
  return a.num_inputs_ == b.num_inputs_ && a.gates_ == b.gates_ && a.outputs_ == b.outputs_;
}

bool equivalent(const Circuit& a, const Circuit& b, std::size_t max_inputs) {
  if (a.num_inputs() != b.num_inputs()) throw WidthError("circuits differ in input count");
  if (a.num_outputs() != b.num_outputs()) throw WidthError("circuits differ in output count");
  const std::size_t n = a.num_inputs();
  if (n > max_inputs || n > 40) {
    throw LimitError("exhaustive equivalence refused for " + std::to_string(n) + " inputs");
  }
  // Lane-parallel sweep: the low six input bits vary across lanes.
  const std::size_t lane_bits = std::min<std::size_t>(n, 6);
  const std::uint64_t blocks = std::uint64_t{1} << (n - lane_bits);
  const std::uint64_t lanes_used = std::uint64_t{1} << lane_bits;
  const std::uint64_t lane_mask = lanes_used == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << lanes_used) - 1;
  std::vector<std::uint64_t> in(n), out_a(a.num_outputs()), out_b(b.num_outputs());
  for (std::uint64_t block = 0; block < blocks; ++block) {
    // Input k is bit (n-1-k) of the assignment index (input 0 most significant).
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t bit = n - 1 - k;
      if (bit < lane_bits) {
        std::uint64_t w = 0;
        for (std::uint64_t lane = 0; lane < lanes_used; ++lane) {
          if ((lane >> bit) & 1u) w |= std::uint64_t{1} << lane;
        }
        in[k] = w;
      } else {
        in[k] = ((block >> (bit - lane_bits)) & 1u) ? ~std::uint64_t{0} : 0;
      }
    }
    a.eval_lanes(in, out_a);
    b.eval_lanes(in, out_b);
    for (std::size_t o = 0; o < out_a.size(); ++o) {
      if (((out_a[o] ^ out_b[o]) & lane_mask) != 0) return false;
    }
  }
  return true;
}

Circuit identity_circuit(std::string name) {
  return Circuit(std::move(name), 1, {}, {Ref::input(0)});
}

}  // namespace smdp
