#include "smdp/random_models.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "smdp/circuit_builder.hpp"

namespace smdp {
namespace {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

BoundedActionMdp random_mdp(Rng& rng, const RandomMdpOptions& options) {
  const std::size_t n = uniform(rng, options.min_vars, options.max_vars);
  const std::size_t actions = uniform(rng, 1, options.max_actions);
  const std::size_t states = std::size_t{1} << n;
  const std::size_t max_support = std::min(options.max_support, states);
  static constexpr std::uint64_t kDenominators[] = {4, 6, 8, 12};
  std::uint64_t denom = kDenominators[uniform(rng, 0, 3)];
  while (denom < max_support) denom *= 2;

  // support[s][a] = (target, numerator) in slot order.
  std::vector<std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>>> support(
      states, std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>>(actions));
  std::vector<std::uint64_t> all(states);
  std::iota(all.begin(), all.end(), 0);
  for (std::size_t s = 0; s < states; ++s) {
    for (std::size_t a = 0; a < actions; ++a) {
      const std::size_t k = uniform(rng, 1, max_support);
      std::shuffle(all.begin(), all.end(), rng);
      // Random composition of denom into k positive parts.
      std::vector<std::uint64_t> cuts;
      std::vector<std::uint64_t> points(denom - 1);
      std::iota(points.begin(), points.end(), 1);
      std::shuffle(points.begin(), points.end(), rng);
      cuts.assign(points.begin(), points.begin() + static_cast<std::ptrdiff_t>(k - 1));
      cuts.push_back(0);
      cuts.push_back(denom);
      std::sort(cuts.begin(), cuts.end());
      for (std::size_t j = 0; j < k; ++j) support[s][a].emplace_back(all[j], cuts[j + 1] - cuts[j]);
    }
  }

  BoundedActionMdp m;
  SuccinctMdp& base = m.base;
  base.name = "random";
  for (std::size_t i = 0; i < n; ++i) base.variables.push_back("v" + std::to_string(i + 1));
  base.initial_state = BitVector::from_uint(uniform(rng, 0, states - 1), n);
  for (std::size_t a = 0; a < actions; ++a) base.actions.push_back("act" + std::to_string(a));
  base.prob_denominator = denom;
  const std::size_t aw = base.action_width();
  std::vector<std::uint64_t> t_table(std::size_t{1} << (2 * n + aw), 0);
  for (std::size_t s = 0; s < states; ++s) {
    for (std::size_t a = 0; a < actions; ++a) {
      for (const auto& [target, num] : support[s][a]) t_table[(((s << n) | target) << aw) | a] = num;
    }
  }
  base.transition = circuit_from_table("random_t", 2 * n + aw, value_width(denom),
                                       [&](std::uint64_t v) { return t_table[v]; });
  const std::size_t rw = 4;
  std::vector<std::uint64_t> r_table(states);
  for (auto& r : r_table) {
    const auto value = std::uniform_int_distribution<std::int64_t>(options.min_reward, options.max_reward)(rng);
    r = write_signed(value, rw).to_uint();
  }
  base.reward = circuit_from_table("random_r", n, rw, [&](std::uint64_t v) { return r_table[v]; });

  const std::size_t branching = max_support;
  const std::size_t sw = index_width(branching);
  for (std::size_t a = 0; a < actions; ++a) {
    Circuit c = circuit_from_table("random_n" + std::to_string(a), n + sw, n + 1, [&](std::uint64_t v) -> std::uint64_t {
      const std::size_t s = v >> sw;
      const std::size_t slot = v & ((std::uint64_t{1} << sw) - 1);
      const auto& list = support[s][a];
      if (slot >= list.size()) return 0;
      return (std::uint64_t{1} << n) | list[slot].first;
    });
    m.successors.push_back({std::move(c), branching});
  }
  return m;
}

Circuit random_circuit(Rng& rng, std::size_t num_inputs, std::size_t num_gates, std::size_t num_outputs) {
  static constexpr GateKind kKinds[] = {GateKind::And, GateKind::Or, GateKind::Xor, GateKind::Not,
                                        GateKind::And, GateKind::Or, GateKind::Const0, GateKind::Const1};
  std::vector<Gate> gates;
  auto random_ref = [&](std::size_t j) {
    const std::size_t pool = num_inputs + j;
    const std::size_t pick = uniform(rng, 0, pool - 1);
    return pick < num_inputs ? Ref::input(pick) : Ref::gate(pick - num_inputs);
  };
  for (std::size_t j = 0; j < num_gates; ++j) {
    GateKind kind = kKinds[uniform(rng, 0, 7)];
    const bool constant = kind == GateKind::Const0 || kind == GateKind::Const1;
    if (num_inputs + j == 0) {
      kind = GateKind::Const1;
    } else if (constant && uniform(rng, 0, 3) != 0) {
      kind = GateKind::And;
    }
    Gate g{kind, {}};
    for (std::size_t k = 0; k < arity(kind); ++k) g.operands[k] = random_ref(j);
    gates.push_back(g);
  }
  std::vector<Ref> outputs;
  for (std::size_t o = 0; o < num_outputs; ++o) {
    if (num_inputs + num_gates == 0) break;
    // Prefer late gates so most of the circuit is live.
    const std::size_t pool = num_inputs + num_gates;
    const std::size_t pick = uniform(rng, pool > 4 ? pool - 4 : 0, pool - 1);
    outputs.push_back(pick < num_inputs ? Ref::input(pick) : Ref::gate(pick - num_inputs));
  }
  return Circuit("random", num_inputs, std::move(gates), std::move(outputs));
}

Cnf random_cnf(Rng& rng, std::size_t num_vars, std::size_t num_clauses, std::size_t width) {
  Cnf f;
  f.num_vars = num_vars;
  for (std::size_t c = 0; c < num_clauses; ++c) {
    const std::size_t k = width == 0 ? uniform(rng, 1, 3) : width;
    Clause clause;
    for (std::size_t i = 0; i < k; ++i) clause.push_back({uniform(rng, 0, num_vars - 1), uniform(rng, 0, 1) == 1});
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

StationaryPolicy random_stationary_policy(Rng& rng, std::size_t num_vars, std::size_t action_count) {
  std::vector<std::uint64_t> table(std::size_t{1} << num_vars);
  for (auto& a : table) a = uniform(rng, 0, action_count - 1);
  return {circuit_from_table("random_policy", num_vars, index_width(action_count),
                             [&](std::uint64_t v) { return table[v]; }),
          action_count};
}

HistoryPolicy random_history_policy(Rng& rng, std::size_t num_vars, std::size_t action_count, std::size_t horizon) {
  const std::size_t n = num_vars;
  const std::size_t tw = index_width(horizon + 1);
  std::vector<std::uint64_t> table(std::size_t{1} << (2 * n + tw));
  for (auto& a : table) a = uniform(rng, 0, action_count - 1);
  const Circuit core = circuit_from_table("history_core", 2 * n + tw, index_width(action_count),
                                          [&](std::uint64_t v) { return table[v]; });
  CircuitBuilder b((horizon + 1) * n + tw);
  const Word time = b.inputs((horizon + 1) * n, tw);
  Word current = b.constant_word(0, n);
  for (std::size_t j = 0; j <= horizon; ++j) {
    current = b.or_word(current, b.and_word(b.equal_const(time, j), b.inputs(j * n, n)));
  }
  std::vector<Ref> inputs = b.inputs(0, n);
  inputs.insert(inputs.end(), current.begin(), current.end());
  inputs.insert(inputs.end(), time.begin(), time.end());
  const auto outs = b.instantiate(core, inputs);
  return {b.build("random_history_policy", outs), action_count, horizon, n};
}

}  // namespace smdp
