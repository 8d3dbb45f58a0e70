#include "commands.hpp"

#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "instance_dir.hpp"
#include "smdp/dnf.hpp"
#include "smdp/errors.hpp"
#include "smdp/evaluator.hpp"
#include "smdp/explicit_mdp.hpp"
#include "smdp/manifest.hpp"
#include "smdp/netlist.hpp"
#include "smdp/oracle.hpp"
#include "smdp/value_function.hpp"
#include "smdp/verify.hpp"

namespace smdp::cli {
namespace {

struct Loaded {
  std::optional<InstanceInfo> info;
  AnyMdp mdp;
};

Loaded load_model(const ModelOptions& o) {
  Loaded l;
  if (o.instance) l.info = read_instance(*o.instance);
  if (o.mdp) {
    l.mdp = load_mdp(*o.mdp);
  } else if (l.info) {
    l.mdp = load_mdp(l.info->mdp);
  } else {
    throw UsageError("pass --mdp or --instance");
  }
  return l;
}

const BoundedActionMdp& require_bounded(const Loaded& l) {
  const auto* b = std::get_if<BoundedActionMdp>(&l.mdp);
  if (b == nullptr) throw UsageError("this command needs a bounded-action model (successor circuits)");
  return *b;
}

struct ResolvedPolicy {
  Policy policy;
  std::optional<std::size_t> horizon;
  std::optional<BitVector> start;
};

ResolvedPolicy load_policy_for(const ModelOptions& o, const Loaded& l) {
  if (o.policy) return {load_policy(*o.policy).policy, std::nullopt, std::nullopt};
  if (!l.info || l.info->policies.empty()) throw UsageError("pass --policy or an --instance with a policy");
  const PolicyEntry* e = o.policy_name ? l.info->policy(*o.policy_name) : &l.info->policies.front();
  if (e == nullptr) throw UsageError("instance has no policy named '" + *o.policy_name + "'");
  return {load_policy(e->file).policy, e->horizon, e->start};
}

std::size_t horizon_for(const ModelOptions& o, const Loaded& l, const ResolvedPolicy* p = nullptr) {
  if (o.horizon) return *o.horizon;
  if (p != nullptr && p->horizon) return *p->horizon;
  if (l.info && l.info->horizon) return *l.info->horizon;
  if (p != nullptr) {
    if (const auto* h = std::get_if<HistoryPolicy>(&p->policy)) return h->horizon;
  }
  if (const auto& h = MdpView(l.mdp)->horizon) return *h;
  throw UsageError("no horizon: pass --horizon");
}

std::optional<BitVector> start_for(const ModelOptions& o, const ResolvedPolicy* p = nullptr) {
  if (o.start) return BitVector::from_string(*o.start);
  if (p != nullptr) return p->start;
  return std::nullopt;
}

BitVector root_of(MdpView m, const std::optional<BitVector>& start) { return start ? *start : m->initial_state; }

std::string action_list(const SuccinctMdp& m, const std::vector<std::size_t>& actions) {
  std::string out;
  for (std::size_t k = 0; k < actions.size(); ++k) out += (k ? "," : "") + m.actions[actions[k]];
  return out;
}

std::string format_double(double x) {
  std::ostringstream ss;
  ss << std::setprecision(6) << std::fixed << x;
  return ss.str();
}

}  // namespace

int eval(const ModelOptions& o, const Common& c) {
  const Loaded l = load_model(o);
  const ResolvedPolicy p = load_policy_for(o, l);
  const std::size_t horizon = horizon_for(o, l, &p);
  const RewardReport r = expected_reward_exact(l.mdp, p.policy, horizon, start_for(o, &p), c.limits);
  Record extra{{"horizon", std::to_string(horizon)}, {"trajectories", std::to_string(r.trajectory_count)}};
  int code = kExitOk;
  if (o.at_least) {
    const Rational k = parse_rational(*o.at_least);
    const bool ok = compare(r.expected, o.strict ? Comparator::Greater : Comparator::GreaterOrEqual, k);
    extra.emplace_back(o.strict ? "greater_than" : "at_least", to_string(k));
    extra.emplace_back("meets_bound", ok ? "yes" : "no");
    if (!ok) code = kExitCheckFailed;
  }
  emit_value(std::cout, c.emit, "reward", to_string(r.expected), extra);
  if (c.emit == Emit::Table && o.at_least) {
    std::cout << "reward " << (o.strict ? "> " : ">= ") << *o.at_least << ": " << (code == kExitOk ? "yes" : "no") << '\n';
  }
  return code;
}

int eval_mc(const ModelOptions& o, const Common& c) {
  const Loaded l = load_model(o);
  const ResolvedPolicy p = load_policy_for(o, l);
  const std::size_t horizon = horizon_for(o, l, &p);
  const auto start = start_for(o, &p);
  const MonteCarloEstimate est = expected_reward_mc(l.mdp, p.policy, horizon, o.samples, c.seed, start, c.limits);
  Report r(c.emit);
  Record row{{"estimate_mc", format_double(est.mean)},
             {"stderr_mc", format_double(est.std_error)},
             {"samples", std::to_string(est.samples)},
             {"seed", std::to_string(c.seed)}};
  int code = kExitOk;
  if (o.exact) {
    const Rational exact = expected_reward_exact(l.mdp, p.policy, horizon, start, c.limits).expected;
    const double gap = std::abs(est.mean - to_double(exact));
    const bool ok = est.std_error == 0.0 ? gap == 0.0 : gap <= 5.0 * est.std_error;
    row.emplace_back("exact", to_string(exact));
    row.emplace_back("within_5_stderr", ok ? "yes" : "no");
    if (!ok) code = kExitCheckFailed;
  }
  r.add(row);
  r.print(std::cout);
  return code;
}

int value(const ModelOptions& o, const Common& c) {
  const Loaded l = load_model(o);
  const ResolvedPolicy p = load_policy_for(o, l);
  const std::size_t horizon = horizon_for(o, l, &p);
  const MdpView m(l.mdp);
  Report r(c.emit);
  if (const auto* h = std::get_if<HistoryPolicy>(&p.policy)) {
    if (o.out) throw UsageError("--out needs a stationary policy");
    const auto table = value_of_history_policy(m, *h, horizon, start_for(o, &p), c.limits);
    for (const auto& [history, v] : table.values) {
      std::string text;
      for (std::size_t k = 0; k < history.size(); ++k) text += (k ? "," : "") + history[k].to_string();
      r.add({{"history", text}, {"steps", std::to_string(horizon + 1 - history.size())}, {"value", to_string(v)}});
    }
    r.print(std::cout);
    return kExitOk;
  }
  const auto& sp = std::get<StationaryPolicy>(p.policy);
  const bool all = o.all_states || o.out.has_value();
  const ExplicitMdp x = all ? expand_all(m, horizon, c.limits) : expand(m, root_of(m, start_for(o, &p)), horizon, c.limits);
  const ValueTable table = value_of_policy(x, sp);
  for (std::size_t s = 0; s < table.size(); ++s) {
    for (std::size_t i = 0; i < table.values[s].size(); ++i) {
      r.add({{"state", table.states[s].to_string()}, {"steps", std::to_string(i)}, {"value", to_string(table.values[s][i])}});
    }
  }
  if (o.out) {
    const ValueCircuit e = value_circuit_from_table(table, horizon, "value");
    fs::create_directories(*o.out);
    save_valuefn(e, "value", *o.out, "valuefn");
  }
  r.print(std::cout);
  return kExitOk;
}

namespace {

ValueCircuit load_value_for(const ModelOptions& o, const Loaded& l) {
  if (o.valuefn) return load_valuefn(*o.valuefn).value;
  if (l.info && l.info->valuefn) return load_valuefn(*l.info->valuefn).value;
  throw UsageError("pass --valuefn or an --instance with a value function");
}

}  // namespace

int check_consistency(const ModelOptions& o, const Common& c) {
  const Loaded l = load_model(o);
  const BoundedActionMdp& m = require_bounded(l);
  const ValueCircuit e = load_value_for(o, l);
  const ConsistencyResult res = smdp::check_consistency(m, e, c.limits);
  if (c.emit == Emit::Records) {
    Record row{{"result", res.consistent ? "consistent" : "inconsistent"}, {"states", std::to_string(res.states.size())}};
    if (res.counterexample) row.emplace_back("counterexample", res.counterexample->to_string());
    if (!res.reason.empty()) row.emplace_back("reason", res.reason);
    Report r(c.emit);
    r.add(row);
    r.print(std::cout);
  } else {
    std::cout << (res.consistent ? "consistent" : "inconsistent") << '\n';
    if (res.counterexample) std::cout << "counterexample " << res.counterexample->to_string() << ": " << res.reason << '\n';
  }
  return res.consistent ? kExitOk : kExitCheckFailed;
}

int extract_policy(const ModelOptions& o, const Common& c) {
  const Loaded l = load_model(o);
  const BoundedActionMdp& m = require_bounded(l);
  const ValueCircuit e = load_value_for(o, l);
  try {
    if (o.start || o.steps) {
      if (!o.start || !o.steps) throw UsageError("--start and --steps go together");
      const std::size_t a = smdp::extract_policy(m, e, BitVector::from_string(*o.start), *o.steps, c.limits);
      emit_value(std::cout, c.emit, "action", m.base.actions[a]);
      return kExitOk;
    }
    const ExplicitMdp x = expand_all(m, e.horizon, c.limits);
    const MarkovPolicy markov = extract_markov(m, x, tabulate(e, c.limits), c.limits);
    Report r(c.emit);
    for (std::size_t s = 0; s < x.size(); ++s) {
      for (std::size_t i = 1; i < markov.action[s].size(); ++i) {
        r.add({{"state", x.states[s].to_string()}, {"steps", std::to_string(i)}, {"action", m.base.actions[markov.action[s][i]]}});
      }
    }
    if (o.out) {
      fs::create_directories(*o.out);
      save_policy(compile_markov(markov, x), "extracted", *o.out, "policy_extracted");
    }
    r.print(std::cout);
    return kExitOk;
  } catch (const InconsistentValueError& err) {
    std::cout << "inconsistent: " << err.what() << '\n';
    return kExitCheckFailed;
  }
}

int solve(const ModelOptions& o, const Common& c) {
  const Loaded l = load_model(o);
  const MdpView m(l.mdp);
  std::optional<BitVector> start = start_for(o);
  std::size_t horizon = 0;
  if (!start && !o.horizon && l.info && l.info->state && l.info->steps_to_go) {
    // Instances with a designated state are solved from there.
    start = l.info->state;
    horizon = *l.info->steps_to_go;
  } else {
    horizon = horizon_for(o, l);
  }
  const bool all = o.all_states || o.out.has_value();
  const BitVector root = root_of(m, start);
  const ExplicitMdp x = all ? expand_all(m, horizon, c.limits) : expand(m, root, horizon, c.limits);
  const OptimalSolution sol = solve_optimal(x);
  const std::size_t r0 = x.find(root);
  const auto& best = sol.optimal[r0];
  const std::string first = horizon > 0 ? action_list(m.base(), best[horizon]) : "";
  if (c.emit == Emit::Table) {
    std::cout << "optimal value " << to_string(sol.value.values[r0][horizon]) << " from " << root.to_string()
              << " with " << horizon << " steps\n";
    if (horizon > 0) std::cout << "optimal first actions " << first << '\n';
  } else {
    Report r(c.emit);
    r.add({{"value", to_string(sol.value.values[r0][horizon])}, {"state", root.to_string()},
           {"steps", std::to_string(horizon)}, {"actions", first}});
    r.print(std::cout);
  }
  if (o.table) {
    Report t(c.emit);
    for (std::size_t s = 0; s < x.size(); ++s) {
      for (std::size_t i = 0; i < sol.value.values[s].size(); ++i) {
        t.add({{"state", x.states[s].to_string()},
               {"steps", std::to_string(i)},
               {"value", to_string(sol.value.values[s][i])},
               {"actions", i == 0 ? "-" : action_list(m.base(), sol.optimal[s][i])}});
      }
    }
    t.print(std::cout);
  }
  if (o.out) {
    fs::create_directories(*o.out);
    save_policy(compile_markov(sol.greedy, x), "optimal", *o.out, "policy_optimal");
  }
  return kExitOk;
}

int next_action(const ModelOptions& o, const Common& c) {
  const Loaded l = load_model(o);
  const MdpView m(l.mdp);
  std::optional<BitVector> state = start_for(o);
  if (!state && l.info) state = l.info->state;
  if (!state) state = m->initial_state;
  std::optional<std::size_t> steps = o.steps;
  if (!steps && l.info) steps = l.info->steps_to_go;
  if (!steps) steps = o.horizon ? o.horizon : m->horizon;
  if (!steps) throw UsageError("pass --steps");
  const auto best = best_next_action(m, *state, *steps, c.limits);
  int code = kExitOk;
  Record extra{{"state", state->to_string()}, {"steps", std::to_string(*steps)}};
  if (o.action) {
    bool found = false;
    for (auto a : best) found = found || m->actions[a] == *o.action;
    extra.emplace_back("queried", *o.action);
    extra.emplace_back("optimal", found ? "yes" : "no");
    if (!found) code = kExitCheckFailed;
  }
  emit_value(std::cout, c.emit, "actions", action_list(m.base(), best), extra);
  if (c.emit == Emit::Table && o.action) std::cout << *o.action << " optimal: " << (code == kExitOk ? "yes" : "no") << '\n';
  return code;
}

int canon(const CanonOptions& o, const Common& c) {
  const Circuit circuit = load_netlist(o.netlist);
  const Circuit dnf = canonical_dnf(circuit);
  int code = kExitOk;
  if (o.check && !equivalent(circuit, dnf, 24)) code = kExitCheckFailed;
  if (!o.out) {
    std::cout << serialize_netlist(dnf);
    return code;
  }
  save_netlist(dnf, *o.out);
  Report r(c.emit);
  for (std::size_t j = 0; j < dnf.num_outputs(); ++j) {
    r.add({{"output", std::to_string(j)}, {"terms", std::to_string(count_dnf_terms(dnf, j))},
           {"gates", std::to_string(dnf.size())}, {"equivalent", o.check ? (code == kExitOk ? "yes" : "no") : "-"}});
  }
  r.print(std::cout);
  return code;
}

int verify(const VerifyCliOptions& o, const Common& c) {
  VerifyOptions opts;
  opts.n = o.n;
  opts.cases = o.cases;
  opts.seed = c.seed;
  opts.limits = c.limits;
  const VerifyReport rep = run_suite(o.suite, opts);
  Report r(c.emit);
  for (const auto& row : rep.rows) {
    r.add({{"id", row.id}, {"expected", row.expected}, {"got", row.got}, {"verdict", row.pass ? "PASS" : "FAIL"}});
  }
  r.print(std::cout);
  if (c.emit == Emit::Table) {
    std::cout << rep.suite << ": " << rep.passed() << "/" << rep.rows.size() << " pass\n";
  } else {
    std::cout << "suite=" << rep.suite << " passed=" << rep.passed() << " total=" << rep.rows.size() << '\n';
  }
  return rep.ok() ? kExitOk : kExitCheckFailed;
}

}  // namespace smdp::cli
