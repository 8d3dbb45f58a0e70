#include "smdp/oracle.hpp"

#include <algorithm>
#include <unordered_set>

#include "smdp/errors.hpp"

namespace smdp {
namespace {

struct MaskSetHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto x : v) h = (h ^ x) * 0x100000001b3ULL;
    return static_cast<std::size_t>(h);
  }
};

// Partial circuit in the search: gates plus the function each wire computes
// on the decision states (inputs first, then gates).
struct SearchNode {
  std::vector<Gate> gates;
  std::vector<std::uint64_t> wires;
};

void check_oracle_vars(std::size_t n, const Limits& limits) {
  if (n > limits.max_oracle_vars || n >= 63) {
    throw LimitError("brute-force oracle over " + std::to_string(n) + " variables exceeds the limit of " +
                     std::to_string(limits.max_oracle_vars));
  }
}

}  // namespace

OptimalSolution solve_optimal(const ExplicitMdp& m) {
  OptimalSolution sol;
  sol.value.states = m.states;
  sol.value.index = m.index;
  sol.value.values.resize(m.size());
  sol.optimal.resize(m.size());
  sol.greedy.action.resize(m.size());
  std::size_t max_steps = 0;
  for (std::size_t s = 0; s < m.size(); ++s) {
    sol.value.values[s].emplace_back(m.rewards[s]);
    sol.optimal[s].resize(m.steps_available(s) + 1);
    sol.greedy.action[s].assign(m.steps_available(s) + 1, 0);
    max_steps = std::max(max_steps, m.steps_available(s));
  }
  for (std::size_t i = 1; i <= max_steps; ++i) {
    for (std::size_t s = 0; s < m.size(); ++s) {
      if (m.steps_available(s) < i) continue;
      std::optional<Rational> best;
      std::vector<std::size_t> arg;
      for (std::size_t a = 0; a < m.action_count(); ++a) {
        Rational v(m.rewards[s]);
        for (const auto& tr : m.rows[s][a]) v += tr.prob * sol.value.values[tr.target][i - 1];
        if (!best || v > *best) {
          best = v;
          arg.assign(1, a);
        } else if (v == *best) {
          arg.push_back(a);
        }
      }
      sol.value.values[s].push_back(*best);
      sol.greedy.action[s][i] = arg.front();
      sol.optimal[s][i] = std::move(arg);
    }
  }
  return sol;
}

std::vector<std::size_t> best_next_action(MdpView m, const BitVector& s, std::size_t steps_to_go,
                                          const Limits& limits) {
  if (steps_to_go == 0) throw Error("no action is taken with zero steps to go");
  if (s.size() != m->num_vars()) throw WidthError("state width does not match the model");
  const ExplicitMdp x = expand(m, s, steps_to_go, limits);
  return solve_optimal(x).optimal[x.initial][steps_to_go];
}

std::size_t compile_bound(std::size_t num_vars, std::size_t action_count) {
  if (num_vars >= 40) return static_cast<std::size_t>(-1);
  return index_width(action_count) * (std::size_t{1} << num_vars) * std::max<std::size_t>(1, 2 * num_vars);
}

BoundedPolicyResult bounded_policy_exists(MdpView m, std::size_t horizon, std::size_t z, const Rational& k,
                                          const Limits& limits) {
  const SuccinctMdp& base = m.base();
  const std::size_t n = base.num_vars();
  const std::size_t actions = base.actions.size();
  const std::size_t aw = base.action_width();
  const ExplicitMdp x = expand(m, base.initial_state, horizon, limits);

  std::vector<std::size_t> decision;
  for (std::size_t s = 0; s < x.size(); ++s) {
    if (x.acts(s)) decision.push_back(s);
  }
  if (decision.size() > 64) throw LimitError("bounded policy search supports at most 64 decision states");
  double combos = 1;
  for (std::size_t r = 0; r < decision.size(); ++r) combos *= static_cast<double>(actions);
  if (combos > static_cast<double>(limits.max_trajectories)) {
    throw LimitError("too many stationary action maps to enumerate");
  }

  // Every action map over the decision states, keeping those with reward >= k.
  BoundedPolicyResult result;
  std::vector<std::vector<std::uint64_t>> good_masks;  // per good map: mask per output bit
  std::vector<Rational> good_values;
  std::vector<std::vector<std::size_t>> good_maps;
  ExplicitPolicy p;
  p.action.assign(x.size(), 0);
  std::vector<std::size_t> digits(decision.size(), 0);
  while (true) {
    for (std::size_t r = 0; r < decision.size(); ++r) p.action[decision[r]] = digits[r];
    const ValueTable v = value_of_policy(x, p);
    const Rational& value = v.values[x.initial][horizon];
    if (value >= k) {
      std::vector<std::uint64_t> masks(aw, 0);
      for (std::size_t r = 0; r < decision.size(); ++r) {
        for (std::size_t bit = 0; bit < aw; ++bit) {
          if ((digits[r] >> (aw - 1 - bit)) & 1u) masks[bit] |= std::uint64_t{1} << r;
        }
      }
      good_masks.push_back(std::move(masks));
      good_values.push_back(value);
      good_maps.push_back(digits);
    }
    std::size_t r = 0;
    while (r < digits.size() && ++digits[r] == actions) digits[r++] = 0;
    if (r == digits.size()) break;
  }
  result.good_maps = good_masks.size();
  if (good_masks.empty()) return result;

  // Compiled explicit form of a good map, when it fits.
  if (n <= 16) {
    std::unordered_map<BitVector, std::size_t> total;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) total.emplace(BitVector::from_uint(v, n), 0);
    for (std::size_t r = 0; r < decision.size(); ++r) total[x.states[decision[r]]] = good_maps.front()[r];
    StationaryPolicy compiled = compile_explicit(total, n, actions);
    if (compiled.circuit.size() <= z) {
      result.exists = true;
      result.witness = std::move(compiled);
      result.reward = good_values.front();
      return result;
    }
  } else if (z >= compile_bound(n, actions)) {
    throw LimitError("compiling an explicit policy over 2^" + std::to_string(n) + " states is out of scale");
  }
  if (z > limits.max_search_gates) {
    throw LimitError("circuit search up to " + std::to_string(z) + " gates exceeds the micro-bound of " +
                     std::to_string(limits.max_search_gates));
  }

  const std::uint64_t full = decision.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << decision.size()) - 1;
  SearchNode root;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t mask = 0;
    for (std::size_t r = 0; r < decision.size(); ++r) {
      if (x.states[decision[r]][i]) mask |= std::uint64_t{1} << r;
    }
    root.wires.push_back(mask);
  }

  auto try_goal = [&](const SearchNode& node) -> bool {
    for (std::size_t g = 0; g < good_masks.size(); ++g) {
      std::vector<Ref> outputs;
      for (const std::uint64_t mask : good_masks[g]) {
        const auto it = std::find(node.wires.begin(), node.wires.end(), mask);
        if (it == node.wires.end()) break;
        const auto w = static_cast<std::size_t>(it - node.wires.begin());
        outputs.push_back(w < n ? Ref::input(w) : Ref::gate(w - n));
      }
      if (outputs.size() != aw) continue;
      result.exists = true;
      result.witness = StationaryPolicy{Circuit("bounded_witness", n, node.gates, outputs), actions};
      result.reward = good_values[g];
      return true;
    }
    return false;
  };

  std::vector<SearchNode> layer{root};
  for (std::size_t size = 0;; ++size) {
    for (const auto& node : layer) {
      if (try_goal(node)) return result;
    }
    if (size == z) break;
    std::vector<SearchNode> next;
    std::unordered_set<std::vector<std::uint64_t>, MaskSetHash> seen;
    for (const auto& node : layer) {
      const std::size_t w = node.wires.size();
      auto ref_of = [&](std::size_t i) { return i < n ? Ref::input(i) : Ref::gate(i - n); };
      auto push = [&](Gate g, std::uint64_t f) {
        if (std::find(node.wires.begin(), node.wires.end(), f) != node.wires.end()) return;
        std::vector<std::uint64_t> key(node.wires.begin() + static_cast<std::ptrdiff_t>(n), node.wires.end());
        key.push_back(f);
        std::sort(key.begin(), key.end());
        if (!seen.insert(key).second) return;
        SearchNode child = node;
        child.gates.push_back(g);
        child.wires.push_back(f);
        next.push_back(std::move(child));
        if (next.size() > (std::size_t{1} << 21)) throw LimitError("bounded policy search frontier too large");
      };
      push(Gate{GateKind::Const0, {}}, 0);
      push(Gate{GateKind::Const1, {}}, full);
      for (std::size_t i = 0; i < w; ++i) push(Gate{GateKind::Not, {ref_of(i), Ref{}}}, ~node.wires[i] & full);
      for (std::size_t i = 0; i < w; ++i) {
        for (std::size_t j = i + 1; j < w; ++j) {
          const std::uint64_t a = node.wires[i];
          const std::uint64_t b = node.wires[j];
          push(Gate{GateKind::And, {ref_of(i), ref_of(j)}}, a & b);
          push(Gate{GateKind::Or, {ref_of(i), ref_of(j)}}, a | b);
          push(Gate{GateKind::Xor, {ref_of(i), ref_of(j)}}, a ^ b);
        }
      }
    }
    layer = std::move(next);
    if (layer.empty()) break;
  }
  return result;
}

bool sat_oracle(const Cnf& f, const Limits& limits) {
  check_oracle_vars(f.num_vars, limits);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << f.num_vars); ++v) {
    if (f.satisfied_by(v)) return true;
  }
  return false;
}

std::uint64_t model_count(const Cnf& f, const Limits& limits) {
  check_oracle_vars(f.num_vars, limits);
  std::uint64_t count = 0;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << f.num_vars); ++v) count += f.satisfied_by(v) ? 1 : 0;
  return count;
}

namespace {

std::vector<std::uint64_t> extension_counts(const Cnf& f, std::size_t x_count, const Limits& limits) {
  check_oracle_vars(f.num_vars, limits);
  if (x_count > f.num_vars) throw Error("X part larger than the variable set");
  const std::size_t y_count = f.num_vars - x_count;
  std::vector<std::uint64_t> counts(std::size_t{1} << x_count, 0);
  for (std::uint64_t xa = 0; xa < counts.size(); ++xa) {
    for (std::uint64_t ya = 0; ya < (std::uint64_t{1} << y_count); ++ya) {
      if (f.satisfied_by(xa | (ya << x_count))) ++counts[xa];
    }
  }
  return counts;
}

}  // namespace

std::uint64_t best_x_assignment(const Cnf& f, std::size_t x_count, const Limits& limits) {
  const auto counts = extension_counts(f, x_count, limits);
  return static_cast<std::uint64_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

Rational best_extension_fraction(const Cnf& f, std::size_t x_count, const Limits& limits) {
  const auto counts = extension_counts(f, x_count, limits);
  Rational q(*std::max_element(counts.begin(), counts.end()), std::uint64_t{1} << (f.num_vars - x_count));
  q.canonicalize();
  return q;
}

bool emajsat_oracle(const Cnf& f, std::size_t x_count, const Limits& limits) {
  const auto counts = extension_counts(f, x_count, limits);
  const std::uint64_t total = std::uint64_t{1} << (f.num_vars - x_count);
  return std::any_of(counts.begin(), counts.end(), [&](std::uint64_t c) { return 2 * c >= total; });
}

bool forall_exists_oracle(const Cnf& f, std::size_t x_count, const Limits& limits) {
  const auto counts = extension_counts(f, x_count, limits);
  const std::uint64_t total = std::uint64_t{1} << (f.num_vars - x_count);
  return std::any_of(counts.begin(), counts.end(), [&](std::uint64_t c) { return c == total; });
}

}  // namespace smdp
