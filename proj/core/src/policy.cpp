#include "smdp/policy.hpp"

#include "smdp/circuit_builder.hpp"
#include "smdp/dnf.hpp"
#include "smdp/errors.hpp"

namespace smdp {
namespace {

std::size_t decode_action(const BitVector& out, std::size_t action_count, const std::string& name) {
  if (out.size() > 64) throw PolicyError("policy '" + name + "' output wider than 64 bits");
  const std::uint64_t a = out.to_uint();
  if (a >= action_count) {
    throw PolicyError("policy '" + name + "' chose action index " + std::to_string(a) + " but only " +
                      std::to_string(action_count) + " actions exist");
  }
  return static_cast<std::size_t>(a);
}

// Wires of the slot selected by the time field, zero when time > horizon.
Word select_slot(CircuitBuilder& b, std::size_t horizon, std::size_t n) {
  const std::size_t tw = index_width(horizon + 1);
  const Word time = b.inputs((horizon + 1) * n, tw);
  Word current = b.constant_word(0, n);
  for (std::size_t j = 0; j <= horizon; ++j) {
    const Ref at = b.equal_const(time, j);
    current = b.or_word(current, b.and_word(at, b.inputs(j * n, n)));
  }
  return current;
}

}  // namespace

std::size_t decide(const StationaryPolicy& p, const BitVector& s) {
  return decode_action(p.circuit.eval(s), p.action_count, p.circuit.name());
}

std::size_t decide_h(const HistoryPolicy& p, std::span<const BitVector> history, std::size_t j) {
  if (j > p.horizon) {
    throw PolicyError("time " + std::to_string(j) + " is past the horizon " + std::to_string(p.horizon));
  }
  if (history.size() < j + 1) throw PolicyError("history shorter than the current time");
  BitVector input;
  for (std::size_t k = 0; k <= p.horizon; ++k) {
    if (k <= j) {
      if (history[k].size() != p.state_width) {
        throw WidthError("history slot " + std::to_string(k) + " has " +
                         std::to_string(history[k].size()) + " bits, expected " +
                         std::to_string(p.state_width));
      }
      input.append(history[k]);
    } else {
      input.append(BitVector(p.state_width));
    }
  }
  input.append(BitVector::from_uint(j, p.time_width()));
  return decode_action(p.circuit.eval(input), p.action_count, p.circuit.name());
}

std::size_t decide(const Policy& p, std::span<const BitVector> history) {
  if (history.empty()) throw PolicyError("empty history");
  if (const auto* s = std::get_if<StationaryPolicy>(&p)) return decide(*s, history.back());
  return decide_h(std::get<HistoryPolicy>(p), history, history.size() - 1);
}

std::size_t action_count(const Policy& p) noexcept {
  return std::visit([](const auto& q) { return q.action_count; }, p);
}

ExplicitPolicy tabulate(const StationaryPolicy& p, const ExplicitMdp& m) {
  ExplicitPolicy e;
  e.action.assign(m.size(), 0);
  for (std::size_t s = 0; s < m.size(); ++s) {
    if (m.acts(s)) e.action[s] = decide(p, m.states[s]);
  }
  return e;
}

StationaryPolicy compile_explicit(const std::unordered_map<BitVector, std::size_t>& map,
                                  std::size_t num_vars, std::size_t action_count) {
  if (action_count == 0) throw PolicyError("policy needs at least one action");
  if (num_vars > 24) throw LimitError("compile_explicit supports at most 24 state variables");
  const std::uint64_t total = std::uint64_t{1} << num_vars;
  std::vector<std::uint64_t> table(total);
  for (std::uint64_t v = 0; v < total; ++v) {
    const auto it = map.find(BitVector::from_uint(v, num_vars));
    if (it == map.end()) {
      throw PolicyError("explicit policy has no action for state " +
                        BitVector::from_uint(v, num_vars).to_string());
    }
    if (it->second >= action_count) {
      throw PolicyError("explicit policy maps a state to action " + std::to_string(it->second));
    }
    table[v] = it->second;
  }
  const std::size_t width = index_width(action_count);
  return {dnf_from_table("explicit_policy", num_vars, width, [&](std::uint64_t v) { return table[v]; }),
          action_count};
}

HistoryPolicy compile_markov(const MarkovPolicy& p, const ExplicitMdp& m) {
  const std::size_t n = m.states.empty() ? 0 : m.states.front().size();
  const std::size_t horizon = m.horizon;
  const std::size_t tw = index_width(horizon + 1);
  const std::size_t aw = index_width(m.action_count());
  if (n + tw > 24) throw LimitError("compile_markov supports at most 24 state and time bits");
  // f(s, j) = action at s with horizon - j steps to go.
  const Circuit f = dnf_from_table("markov_core", n + tw, aw, [&](std::uint64_t v) -> std::uint64_t {
    const std::uint64_t j = v & ((std::uint64_t{1} << tw) - 1);
    if (j >= horizon) return 0;
    const std::size_t s = m.find(BitVector::from_uint(v >> tw, n));
    if (s == m.size()) throw PolicyError("Markov policy is not total over the state space");
    const std::size_t to_go = horizon - j;
    if (to_go > m.steps_available(s)) throw PolicyError("Markov policy lacks a step index");
    return p.action.at(s).at(to_go);
  });
  CircuitBuilder b((horizon + 1) * n + tw);
  Word inputs = select_slot(b, horizon, n);
  const Word time = b.inputs((horizon + 1) * n, tw);
  inputs.insert(inputs.end(), time.begin(), time.end());
  const auto outs = b.instantiate(f, inputs);
  return {b.build("markov_policy", outs), m.action_count(), horizon, n};
}

HistoryPolicy lift_to_history(const StationaryPolicy& p, std::size_t horizon) {
  const std::size_t n = p.state_width();
  const std::size_t tw = index_width(horizon + 1);
  CircuitBuilder b((horizon + 1) * n + tw);
  const Word current = select_slot(b, horizon, n);
  const auto outs = b.instantiate(p.circuit, current);
  return {b.build(p.circuit.name() + "_history", outs), p.action_count, horizon, n};
}

}  // namespace smdp
