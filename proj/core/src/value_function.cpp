#include "smdp/value_function.hpp"

#include <functional>

#include "smdp/circuit_builder.hpp"
#include "smdp/errors.hpp"

namespace smdp {
namespace {

ValueTable empty_table_like(const ExplicitMdp& m) {
  ValueTable t;
  t.states = m.states;
  t.index = m.index;
  t.values.resize(m.size());
  return t;
}

template <typename ActionAt>
ValueTable run_recursion(const ExplicitMdp& m, ActionAt action_at) {
  ValueTable t = empty_table_like(m);
  std::size_t max_steps = 0;
  for (std::size_t s = 0; s < m.size(); ++s) {
    t.values[s].reserve(m.steps_available(s) + 1);
    t.values[s].emplace_back(m.rewards[s]);
    max_steps = std::max(max_steps, m.steps_available(s));
  }
  for (std::size_t i = 1; i <= max_steps; ++i) {
    for (std::size_t s = 0; s < m.size(); ++s) {
      if (m.steps_available(s) < i) continue;
      const std::size_t a = action_at(s, i);
      if (a >= m.action_count()) {
        throw PolicyError("policy chose action " + std::to_string(a) + " at state " + m.states[s].to_string());
      }
      Rational v(m.rewards[s]);
      for (const auto& tr : m.rows[s][a]) v += tr.prob * t.values[tr.target][i - 1];
      t.values[s].push_back(std::move(v));
    }
  }
  return t;
}

// r(s) + sum_s' p E(s', i - 1), or nullopt when a successor value is missing.
std::optional<Rational> backup(std::int64_t r, const std::vector<Successor>& succ, const ValueTable& e,
                               std::size_t i) {
  Rational v(r);
  for (const auto& sc : succ) {
    const Rational* next = e.lookup(sc.state, i - 1);
    if (next == nullptr) return std::nullopt;
    v += sc.prob * *next;
  }
  return v;
}

std::string describe(const Rational& q) { return to_string(q); }

}  // namespace

Rational value_at(const ValueCircuit& e, const BitVector& s, std::size_t i) {
  if (i > e.horizon) throw Error("step index " + std::to_string(i) + " beyond horizon " + std::to_string(e.horizon));
  if (s.size() != e.state_width()) throw WidthError("value circuit state width mismatch");
  const BitVector step = BitVector::from_uint(i, e.step_width());
  Rational v(read_signed(e.circuit.eval(concat({&s, &step}))), e.denominator);
  v.canonicalize();
  return v;
}

std::size_t ValueTable::find(const BitVector& s) const {
  const auto it = index.find(s);
  return it == index.end() ? states.size() : it->second;
}

const Rational* ValueTable::lookup(const BitVector& s, std::size_t i) const {
  const std::size_t k = find(s);
  if (k == states.size() || i >= values[k].size()) return nullptr;
  return &values[k][i];
}

bool operator==(const ValueTable& a, const ValueTable& b) {
  return a.states == b.states && a.values == b.values;
}

ValueTable value_of_policy(const ExplicitMdp& m, const ExplicitPolicy& p) {
  if (p.action.size() != m.size()) throw PolicyError("explicit policy does not cover the expansion");
  return run_recursion(m, [&](std::size_t s, std::size_t) { return p.action[s]; });
}

ValueTable value_of_policy(const ExplicitMdp& m, const StationaryPolicy& p) {
  return value_of_policy(m, tabulate(p, m));
}

ValueTable value_of_policy(const ExplicitMdp& m, const MarkovPolicy& p) {
  if (p.action.size() != m.size()) throw PolicyError("Markov policy does not cover the expansion");
  return run_recursion(m, [&](std::size_t s, std::size_t i) { return p.action[s].at(i); });
}

HistoryValueTable value_of_history_policy(MdpView m, const Policy& p, std::size_t horizon,
                                          const std::optional<BitVector>& start, const Limits& limits) {
  HistoryValueTable table;
  table.horizon = horizon;
  std::unordered_map<BitVector, std::int64_t> rewards;
  auto reward_of = [&](const BitVector& s) {
    auto it = rewards.find(s);
    if (it == rewards.end()) it = rewards.emplace(s, reward(m.base(), s)).first;
    return it->second;
  };
  std::vector<BitVector> path{start.value_or(m->initial_state)};
  std::function<Rational()> walk = [&]() -> Rational {
    if (table.values.size() >= limits.max_trajectories) {
      throw LimitError("more than " + std::to_string(limits.max_trajectories) + " histories");
    }
    Rational v(reward_of(path.back()));
    if (path.size() <= horizon) {
      const std::size_t a = decide(p, path);
      for (const auto& sc : successors(m, path.back(), a, limits)) {
        path.push_back(sc.state);
        v += sc.prob * walk();
        path.pop_back();
      }
    }
    table.values[path] = v;
    return v;
  };
  walk();
  return table;
}

ValueTable tabulate(const ValueCircuit& e, const Limits& limits) {
  const std::size_t n = e.state_width();
  if (n >= 63 || (std::uint64_t{1} << n) > limits.max_states) {
    throw LimitError("value circuit over 2^" + std::to_string(n) + " states exceeds the state limit");
  }
  ValueTable t;
  const std::uint64_t total = std::uint64_t{1} << n;
  t.states.reserve(total);
  t.values.resize(total);
  std::vector<BitVector> inputs;
  inputs.reserve(total * (e.horizon + 1));
  for (std::uint64_t v = 0; v < total; ++v) {
    BitVector s = BitVector::from_uint(v, n);
    for (std::size_t i = 0; i <= e.horizon; ++i) {
      const BitVector step = BitVector::from_uint(i, e.step_width());
      inputs.push_back(concat({&s, &step}));
    }
    t.index.emplace(s, t.states.size());
    t.states.push_back(std::move(s));
  }
  const auto outs = e.circuit.eval_batch(inputs);
  for (std::uint64_t v = 0; v < total; ++v) {
    auto& row = t.values[v];
    row.reserve(e.horizon + 1);
    for (std::size_t i = 0; i <= e.horizon; ++i) {
      Rational q(read_signed(outs[v * (e.horizon + 1) + i]), e.denominator);
      q.canonicalize();
      row.push_back(std::move(q));
    }
  }
  return t;
}

ValueCircuit value_circuit_from_table(const ValueTable& table, std::size_t horizon, const std::string& name) {
  if (table.states.empty()) throw Error("empty value table");
  const std::size_t n = table.states.front().size();
  const std::size_t tw = index_width(horizon + 1);
  if (n + tw > 24) throw LimitError("value circuit would need more than 24 inputs");
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<const std::vector<Rational>*> rows(total, nullptr);
  for (std::size_t k = 0; k < table.size(); ++k) rows[table.states[k].to_uint()] = &table.values[k];
  mpz_class denom = 1;
  for (std::uint64_t v = 0; v < total; ++v) {
    if (rows[v] == nullptr || rows[v]->size() < horizon + 1) {
      throw Error("value table does not cover state " + BitVector::from_uint(v, n).to_string() +
                  " for every step index");
    }
    for (std::size_t i = 0; i <= horizon; ++i) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), (*rows[v])[i].get_den_mpz_t());
  }
  if (!denom.fits_ulong_p()) throw Error("value denominator does not fit in 64 bits");
  std::vector<std::int64_t> nums(total * (horizon + 1), 0);
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  for (std::uint64_t v = 0; v < total; ++v) {
    for (std::size_t i = 0; i <= horizon; ++i) {
      const mpz_class num = (*rows[v])[i].get_num() * (denom / (*rows[v])[i].get_den());
      if (!num.fits_slong_p()) throw Error("value numerator does not fit in 64 bits");
      const std::int64_t x = num.get_si();
      nums[v * (horizon + 1) + i] = x;
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  std::size_t width = 1;
  while (width < 64 && (lo < -(std::int64_t{1} << (width - 1)) || hi > (std::int64_t{1} << (width - 1)) - 1)) ++width;
  const std::uint64_t mask = width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  Circuit c = circuit_from_table(name, n + tw, width, [&](std::uint64_t x) -> std::uint64_t {
    const std::uint64_t i = x & ((std::uint64_t{1} << tw) - 1);
    if (i > horizon) return 0;
    return static_cast<std::uint64_t>(nums[(x >> tw) * (horizon + 1) + i]) & mask;
  });
  return {std::move(c), horizon, denom.get_ui()};
}

ConsistencyResult check_consistency(const BoundedActionMdp& m, const ValueTable& e, std::size_t horizon,
                                    const Limits& limits) {
  ConsistencyResult result;
  result.states = e.states;
  result.witness.assign(e.size(), 0);
  for (std::size_t k = 0; k < e.size(); ++k) {
    const BitVector& s = e.states[k];
    const auto& row = e.values[k];
    if (row.empty()) {
      result.counterexample = s;
      result.reason = "no value for step index 0";
      return result;
    }
    const std::int64_t r = reward(m.base, s);
    if (row[0] != Rational(r)) {
      result.counterexample = s;
      result.reason = "E(s,0) = " + describe(row[0]) + " but r(s) = " + std::to_string(r);
      return result;
    }
    const std::size_t last = std::min(horizon, row.size() - 1);
    if (last == 0) continue;
    bool found = false;
    for (std::size_t a = 0; a < m.base.actions.size() && !found; ++a) {
      const auto succ = successors(m, s, a, limits);
      bool ok = true;
      for (std::size_t i = 1; i <= last && ok; ++i) {
        const auto v = backup(r, succ, e, i);
        ok = v && *v == row[i];
      }
      if (ok) {
        result.witness[k] = a;
        found = true;
      }
    }
    if (!found) {
      result.counterexample = s;
      result.reason = "no single action reproduces E(s,i) for i = 1.." + std::to_string(last);
      return result;
    }
  }
  result.consistent = true;
  return result;
}

ConsistencyResult check_consistency(const BoundedActionMdp& m, const ValueCircuit& e, const Limits& limits) {
  if (e.state_width() != m.base.num_vars()) {
    throw WidthError("value circuit reads " + std::to_string(e.state_width()) + " state bits, model has " +
                     std::to_string(m.base.num_vars()));
  }
  return check_consistency(m, tabulate(e, limits), e.horizon, limits);
}

HistoryConsistencyResult check_consistency(const BoundedActionMdp& m, const HistoryValueTable& e,
                                           const Limits& limits) {
  HistoryConsistencyResult result;
  std::vector<BitVector> extended;
  for (const auto& [h, value] : e.values) {
    const std::int64_t r = reward(m.base, h.back());
    const std::size_t j = h.size() - 1;
    if (j >= e.horizon) {
      if (value != Rational(r)) {
        result.counterexample = h;
        result.reason = "final history value differs from its reward";
        return result;
      }
      continue;
    }
    bool found = false;
    for (std::size_t a = 0; a < m.base.actions.size() && !found; ++a) {
      Rational v(r);
      bool complete = true;
      for (const auto& sc : successors(m, h.back(), a, limits)) {
        extended = h;
        extended.push_back(sc.state);
        const auto it = e.values.find(extended);
        if (it == e.values.end()) {
          complete = false;
          break;
        }
        v += sc.prob * it->second;
      }
      found = complete && v == value;
    }
    if (!found) {
      result.counterexample = h;
      result.reason = "no action reproduces the value of this history";
      return result;
    }
  }
  result.consistent = true;
  return result;
}

std::size_t extract_policy(const BoundedActionMdp& m, const ValueTable& e, const BitVector& s, std::size_t i,
                           const Limits& limits) {
  if (i == 0) throw Error("policy extraction needs at least one step to go");
  const Rational* target = e.lookup(s, i);
  if (target == nullptr) throw InconsistentValueError("no value E(s," + std::to_string(i) + ") for state " + s.to_string());
  const std::int64_t r = reward(m.base, s);
  for (std::size_t a = 0; a < m.base.actions.size(); ++a) {
    const auto v = backup(r, successors(m, s, a, limits), e, i);
    if (v && *v == *target) return a;
  }
  throw InconsistentValueError("no action reproduces E(s," + std::to_string(i) + ") = " + describe(*target) +
                               " at state " + s.to_string());
}

std::size_t extract_policy(const BoundedActionMdp& m, const ValueCircuit& e, const BitVector& s, std::size_t i,
                           const Limits& limits) {
  if (i == 0) throw Error("policy extraction needs at least one step to go");
  const Rational target = value_at(e, s, i);
  const Rational r(reward(m.base, s));
  for (std::size_t a = 0; a < m.base.actions.size(); ++a) {
    Rational v = r;
    for (const auto& sc : successors(m, s, a, limits)) v += sc.prob * value_at(e, sc.state, i - 1);
    if (v == target) return a;
  }
  throw InconsistentValueError("no action reproduces E(s," + std::to_string(i) + ") = " + describe(target) +
                               " at state " + s.to_string());
}

MarkovPolicy extract_markov(const BoundedActionMdp& m, const ExplicitMdp& x, const ValueTable& e,
                            const Limits& limits) {
  MarkovPolicy p;
  p.action.resize(x.size());
  for (std::size_t s = 0; s < x.size(); ++s) {
    p.action[s].assign(x.steps_available(s) + 1, 0);
    for (std::size_t i = 1; i <= x.steps_available(s); ++i) p.action[s][i] = extract_policy(m, e, x.states[s], i, limits);
  }
  return p;
}

}  // namespace smdp
