#include "smdp/verify.hpp"

#include <functional>
#include <map>
#include <sstream>

#include "smdp/circuit_builder.hpp"
#include "smdp/dnf.hpp"
#include "smdp/errors.hpp"
#include "smdp/evaluator.hpp"
#include "smdp/explicit_mdp.hpp"
#include "smdp/netlist.hpp"
#include "smdp/oracle.hpp"
#include "smdp/random_models.hpp"
#include "smdp/reductions.hpp"
#include "smdp/value_function.hpp"

namespace smdp {
namespace {

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Rational pow2(std::size_t k) {
  Rational q(mpz_class(1) << static_cast<mp_bitcnt_t>(k));
  return q;
}

std::string label(std::size_t k, const Cnf& f) {
  return "#" + std::to_string(k) + " n=" + std::to_string(f.num_vars) + " " + to_string(f);
}

// Runs one case; an exception becomes a failing row carrying the message.
void run_case(VerifyReport& report, const std::string& id, const std::function<VerifyRow()>& body) {
  try {
    VerifyRow row = body();
    row.id = id;
    report.rows.push_back(std::move(row));
  } catch (const std::exception& e) {
    report.rows.push_back({id, "-", std::string("error: ") + e.what(), false});
  }
}

std::string action_set(const SuccinctMdp& m, const std::vector<std::size_t>& actions) {
  std::string out = "{";
  for (std::size_t k = 0; k < actions.size(); ++k) out += (k ? "," : "") + m.actions[actions[k]];
  return out + "}";
}

Literal literal_from_index(std::size_t l) { return {l / 2, (l % 2) == 1}; }

}  // namespace

std::size_t VerifyReport::passed() const noexcept {
  std::size_t k = 0;
  for (const auto& r : rows) k += r.pass ? 1 : 0;
  return k;
}

std::vector<Cnf> clause_grid(std::size_t num_vars, std::size_t width, std::size_t min_clauses,
                             std::size_t max_clauses, bool multiset_literals) {
  const std::size_t literals = 2 * num_vars;
  std::vector<Clause> clauses;
  std::vector<std::size_t> idx(width, 0);
  std::function<void(std::size_t, std::size_t)> gen = [&](std::size_t pos, std::size_t from) {
    if (pos == width) {
      Clause c;
      for (auto l : idx) c.push_back(literal_from_index(l));
      clauses.push_back(std::move(c));
      return;
    }
    for (std::size_t l = from; l < literals; ++l) {
      idx[pos] = l;
      gen(pos + 1, multiset_literals ? l : l + 1);
    }
  };
  gen(0, 0);
  std::vector<Cnf> grid;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> subsets = [&](std::size_t from) {
    if (chosen.size() >= min_clauses) {
      Cnf f;
      f.num_vars = num_vars;
      for (auto c : chosen) f.clauses.push_back(clauses[c]);
      grid.push_back(std::move(f));
    }
    if (chosen.size() == max_clauses) return;
    for (std::size_t c = from; c < clauses.size(); ++c) {
      chosen.push_back(c);
      subsets(c + 1);
      chosen.pop_back();
    }
  };
  subsets(0);
  return grid;
}

VerifyReport verify_thm1(const VerifyOptions& o) {
  const std::size_t n = o.n ? o.n : 3;
  const std::size_t cases = o.cases ? o.cases : 100;
  VerifyReport report{"thm1", {}};
  std::vector<Cnf> formulas;
  for (std::size_t v = 1; v <= std::min<std::size_t>(n, 2); ++v) {
    auto grid = clause_grid(v, 3, 0, 3, true);
    formulas.insert(formulas.end(), grid.begin(), grid.end());
  }
  if (n >= 3) {
    Rng rng(o.seed);
    for (std::size_t k = 0; k < cases; ++k) formulas.push_back(random_cnf(rng, n, pick(rng, 1, 5), 3));
  }
  for (std::size_t k = 0; k < formulas.size(); ++k) {
    const Cnf& f = formulas[k];
    run_case(report, label(k, f), [&] {
      const ReductionInstance inst = sat_to_next_action(f, SatNextMode::Compact);
      const std::size_t nv = f.num_vars;
      const auto best = best_next_action(inst.mdp, *inst.state, *inst.steps_to_go, o.limits);
      const bool sat = sat_oracle(f, o.limits);
      const std::uint64_t models = model_count(f, o.limits);
      const Rational u = expected_reward_exact(inst.mdp, inst.policies[0].policy, nv + 1, inst.state, o.limits).expected;
      const Rational s = expected_reward_exact(inst.mdp, inst.policies[1].policy, nv + 1, inst.state, o.limits).expected;
      const Rational total = pow2(nv);
      Rational s_expected = (total - models + Rational(models) * pow2(nv + 1)) / total;
      const Rational bound = (total - 1) / total + pow2(nv + 1) / total;
      const std::string got = action_set(inst.mdp.base, best) + " U=" + to_string(u) + " S=" + to_string(s);
      const std::string expected = std::string(sat ? "{S}" : "{U}") + " U=2 S=" + to_string(s_expected);
      const bool pass = got == expected && (!sat || s >= bound);
      return VerifyRow{"", expected, got, pass};
    });
  }
  return report;
}

VerifyReport verify_thm5(const VerifyOptions& o) {
  const std::size_t n = o.n ? o.n : 10;
  const std::size_t cases = o.cases ? o.cases : 50;
  VerifyReport report{"thm5", {}};
  Rng rng(o.seed);
  for (std::size_t k = 0; k < cases; ++k) {
    const std::size_t nv = pick(rng, 1, n);
    const Cnf f = random_cnf(rng, nv, pick(rng, 0, nv + 1), 0);
    run_case(report, label(k, f), [&] {
      const ReductionInstance inst = majsat_to_eval(f);
      Rational expected(model_count(f, o.limits));
      expected /= pow2(nv);
      const Rational got = expected_reward_exact(inst.mdp, inst.policies[0].policy, inst.horizon, std::nullopt, o.limits).expected;
      return VerifyRow{"", to_string(expected), to_string(got), got == expected};
    });
  }
  return report;
}

VerifyReport verify_thm6(const VerifyOptions& o) {
  const std::size_t cases = o.cases;
  VerifyReport report{"thm6", {}};
  std::vector<Cnf> formulas;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) formulas.push_back(Cnf{2, {{literal_from_index(a)}, {literal_from_index(b)}}});
  }
  Rng rng(o.seed);
  for (std::size_t k = 0; k < cases; ++k) formulas.push_back(random_cnf(rng, 2, pick(rng, 1, 3), pick(rng, 1, 2)));
  const Rational k_half(1, 2);
  for (std::size_t k = 0; k < formulas.size(); ++k) {
    const Cnf& f = formulas[k];
    run_case(report, label(k, f), [&] {
      const ReductionInstance inst = emajsat_to_bounded_policy(f, 1, k_half, best_x_assignment(f, 1, o.limits));
      const auto res = bounded_policy_exists(inst.mdp, inst.horizon, *inst.size_bound, k_half, o.limits);
      std::string got = res.exists ? "yes" : "no";
      bool witness_ok = true;
      if (res.exists) {
        const Rational r = expected_reward_exact(inst.mdp, *res.witness, inst.horizon, std::nullopt, o.limits).expected;
        witness_ok = r >= k_half && res.witness->circuit.size() <= *inst.size_bound;
        got += " z=" + std::to_string(*inst.size_bound) + " witness=" + std::to_string(res.witness->circuit.size()) +
               " reward=" + to_string(r);
      }
      const std::string expected = emajsat_oracle(f, 1, o.limits) ? "yes" : "no";
      return VerifyRow{"", expected, got, got.substr(0, expected.size()) == expected &&
                                              (got.size() == expected.size() || got[expected.size()] == ' ') && witness_ok};
    });
  }
  return report;
}

VerifyReport verify_thm8(const VerifyOptions& o) {
  const std::size_t n = o.n ? o.n : 8;
  const std::size_t cases = o.cases ? o.cases : 50;
  VerifyReport report{"thm8", {}};
  Rng rng(o.seed);
  for (std::size_t k = 0; k < cases; ++k) {
    const std::size_t nv = pick(rng, 1, n);
    const Cnf f = random_cnf(rng, nv, pick(rng, 1, 2 * nv + 2), 0);
    run_case(report, label(k, f), [&] {
      const ReductionInstance inst = unsat_to_consistency(f);
      const auto res = check_consistency(inst.mdp, *inst.value, o.limits);
      const auto valid = validate(inst.mdp, o.limits);
      const std::string expected = model_count(f, o.limits) == 0 ? "consistent" : "inconsistent";
      std::string got = res.consistent ? "consistent" : "inconsistent";
      if (!valid.ok()) got += " (invalid model: " + valid.violations.front() + ")";
      return VerifyRow{"", expected, got, got == expected};
    });
  }
  return report;
}

VerifyReport verify_thm9(const VerifyOptions& o) {
  const std::size_t n = o.n ? o.n : 2;
  VerifyReport report{"thm9", {}};
  std::vector<Cnf> formulas = clause_grid(2 * n, 2, 1, 2, false);
  Rng rng(o.seed);
  for (std::size_t k = 0; k < o.cases; ++k) formulas.push_back(random_cnf(rng, 2 * n, pick(rng, 1, 4), 0));
  for (std::size_t k = 0; k < formulas.size(); ++k) {
    const Cnf& f = formulas[k];
    run_case(report, label(k, f), [&] {
      const ReductionInstance inst = forallexists_to_valuefn(f, n, best_x_assignment(f, n, o.limits));
      const auto& layout = *inst.layout;
      bool exists = false;
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << n) && !exists; ++x) {
        const Rational r = expected_reward_exact(inst.mdp, xy_policy(layout, n, x), inst.horizon, std::nullopt, o.limits).expected;
        exists = r == 1;
      }
      const ExplicitMdp xm = expand(inst.mdp, inst.mdp.base.initial_state, inst.horizon, o.limits);
      const Rational vstar = solve_optimal(xm).value.values[xm.initial][inst.horizon];
      std::string got = exists ? "yes" : "no";
      bool pass = (vstar == 1) == exists;
      got += " V*=" + to_string(vstar);
      if (inst.value) {
        const auto cons = check_consistency(inst.mdp, *inst.value, o.limits);
        const Rational e0 = value_at(*inst.value, inst.mdp.base.initial_state, inst.horizon);
        got += std::string(cons.consistent ? " E consistent" : " E inconsistent") + " E(s0,T)=" + to_string(e0);
        pass = pass && cons.consistent && ((e0 == 1) == exists);
      }
      const std::string expected = forall_exists_oracle(f, n, o.limits) ? "yes" : "no";
      pass = pass && got.rfind(expected + " ", 0) == 0;
      return VerifyRow{"", expected, got, pass};
    });
  }
  return report;
}

VerifyReport verify_normalization(const VerifyOptions& o) {
  const std::size_t n = o.n ? o.n : 4;
  const std::size_t cases = o.cases ? o.cases : 50;
  VerifyReport report{"normalization", {}};
  Rng rng(o.seed);
  RandomMdpOptions opts;
  opts.max_vars = n;
  for (std::size_t k = 0; k < cases; ++k) {
    const BoundedActionMdp m = random_mdp(rng, opts);
    const std::size_t horizon = pick(rng, 1, 4);
    const bool history = k % 2 == 1;
    const std::size_t nv = m.base.num_vars();
    const std::size_t actions = m.base.actions.size();
    const Policy p = history ? Policy(random_history_policy(rng, nv, actions, horizon))
                             : Policy(random_stationary_policy(rng, nv, actions));
    const std::string id = "#" + std::to_string(k) + " n=" + std::to_string(nv) + " |A|=" + std::to_string(actions) +
                           " T=" + std::to_string(horizon) + (history ? " history" : " stationary");
    run_case(report, id, [&] {
      const SuccinctMdp& base = m.base;
      const auto valid = validate(m, o.limits);
      std::vector<Rational> mass(horizon + 1, Rational(0));
      bool product_ok = true;
      for_each_trajectory(base, p, horizon, [&](std::span<const BitVector> path, const Rational& prob) {
        const Rational h = history_probability(base, p, path);
        product_ok = product_ok && h == prob;
        mass[path.size() - 1] += h;
      }, std::nullopt, o.limits);
      bool mass_ok = true;
      for (const auto& q : mass) mass_ok = mass_ok && q == 1;
      const Rational exact = expected_reward_exact(base, p, horizon, std::nullopt, o.limits).expected;
      Rational recursion;
      if (const auto* sp = std::get_if<StationaryPolicy>(&p)) {
        const ExplicitMdp x = expand(base, base.initial_state, horizon, o.limits);
        recursion = value_of_policy(x, *sp).values[x.initial][horizon];
        const Rational lifted = expected_reward_exact(base, lift_to_history(*sp, horizon), horizon, std::nullopt, o.limits).expected;
        mass_ok = mass_ok && lifted == exact;
      } else {
        const auto table = value_of_history_policy(base, p, horizon, std::nullopt, o.limits);
        recursion = table.values.at({base.initial_state});
      }
      const std::string got = std::string(valid.ok() ? "valid" : "invalid") + " mass=" + (mass_ok ? "1" : "bad") +
                              (product_ok ? "" : " product-mismatch") + " R=" + to_string(exact) +
                              " E=" + to_string(recursion);
      const std::string expected = "valid mass=1 R=E";
      return VerifyRow{"", expected, got, valid.ok() && mass_ok && product_ok && exact == recursion};
    });
  }
  return report;
}

VerifyReport verify_roundtrip(const VerifyOptions& o) {
  const std::size_t n = o.n ? o.n : 4;
  const std::size_t cases = o.cases ? o.cases : 25;
  VerifyReport report{"roundtrip", {}};
  Rng rng(o.seed);
  RandomMdpOptions opts;
  opts.max_vars = n;
  opts.max_support = 4;
  for (std::size_t k = 0; k < cases; ++k) {
    const BoundedActionMdp m = random_mdp(rng, opts);
    const std::size_t horizon = pick(rng, 1, 4);
    const StationaryPolicy p = random_stationary_policy(rng, m.base.num_vars(), m.base.actions.size());
    const std::string id = "#" + std::to_string(k) + " n=" + std::to_string(m.base.num_vars()) +
                           " |A|=" + std::to_string(m.base.actions.size()) + " B=" + std::to_string(m.max_branching()) +
                           " T=" + std::to_string(horizon);
    run_case(report, id, [&] {
      const ExplicitMdp x = expand(m, m.base.initial_state, horizon, o.limits);
      const ValueTable first = value_of_policy(x, p);
      const MarkovPolicy extracted = extract_markov(m, x, first, o.limits);
      const bool markov_same = value_of_policy(x, extracted) == first;
      const auto cons = check_consistency(m, first, horizon, o.limits);
      bool witness_same = false;
      if (cons.consistent) witness_same = value_of_policy(x, ExplicitPolicy{cons.witness}) == first;
      ValueTable perturbed = first;
      perturbed.values[0][0] += 1;
      const bool rejects = !check_consistency(m, perturbed, horizon, o.limits).consistent;
      bool text_ok = true;
      std::vector<const Circuit*> circuits{&m.base.transition, &m.base.reward};
      for (const auto& sc : m.successors) circuits.push_back(&sc.circuit);
      for (const Circuit* c : circuits) {
        const std::string text = serialize_netlist(*c);
        const Circuit back = parse_netlist(text);
        text_ok = text_ok && back == *c && serialize_netlist(back) == text;
      }
      const std::string got = std::string(markov_same ? "markov=same" : "markov=differs") +
                              (cons.consistent ? " consistent" : " inconsistent") +
                              (witness_same ? " witness=same" : " witness=differs") +
                              (rejects ? " perturbed=rejected" : " perturbed=accepted") +
                              (text_ok ? " netlist=ok" : " netlist=bad");
      const std::string expected = "markov=same consistent witness=same perturbed=rejected netlist=ok";
      return VerifyRow{"", expected, got, got == expected};
    });
  }
  return report;
}

VerifyReport verify_dnf(const VerifyOptions& o) {
  const std::size_t n = o.n ? o.n : 8;
  const std::size_t cases = o.cases ? o.cases : 100;
  VerifyReport report{"dnf", {}};
  Rng rng(o.seed);
  for (std::size_t k = 0; k < cases; ++k) {
    const std::size_t ni = 1 + k % n;
    const std::size_t outputs = pick(rng, 1, 4);
    const Circuit c = random_circuit(rng, ni, pick(rng, 1, 40), outputs);
    std::unordered_map<BitVector, std::size_t> map;
    const std::size_t actions = pick(rng, 1, 5);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << ni); ++v) map.emplace(BitVector::from_uint(v, ni), pick(rng, 0, actions - 1));
    const std::string id = "#" + std::to_string(k) + " n=" + std::to_string(ni) + " m=" + std::to_string(outputs) +
                           " gates=" + std::to_string(c.size());
    run_case(report, id, [&] {
      const Circuit d = canonical_dnf(c);
      const bool equiv = equivalent(c, d, 8);
      const std::uint64_t total = std::uint64_t{1} << ni;
      std::vector<std::uint64_t> sat(outputs, 0);
      for (std::uint64_t v = 0; v < total; ++v) {
        const BitVector out = c.eval(BitVector::from_uint(v, ni));
        for (std::size_t j = 0; j < outputs; ++j) sat[j] += out[j] ? 1 : 0;
      }
      bool terms_ok = true;
      std::size_t terms = 0;
      for (std::size_t j = 0; j < outputs; ++j) {
        const std::size_t t = count_dnf_terms(d, j);
        terms += t;
        terms_ok = terms_ok && t == sat[j] && t <= total;
      }
      const bool gates_ok = d.size() <= outputs * total * 2 * ni;
      const StationaryPolicy compiled = compile_explicit(map, ni, actions);
      bool policy_ok = true;
      for (const auto& [s, a] : map) policy_ok = policy_ok && decide(compiled, s) == a;
      for (std::size_t j = 0; j < compiled.circuit.num_outputs(); ++j) {
        policy_ok = policy_ok && count_dnf_terms(compiled.circuit, j) <= total;
      }
      const std::string got = std::string(equiv ? "equivalent" : "differs") + (terms_ok ? " terms<=2^n" : " terms-bad") +
                              (gates_ok ? " gates-ok" : " gates-bad") + (policy_ok ? " policy=ok" : " policy=bad") +
                              " (terms=" + std::to_string(terms) + ", gates=" + std::to_string(d.size()) + ")";
      const std::string expected = "equivalent terms<=2^n gates-ok policy=ok";
      return VerifyRow{"", expected, got, equiv && terms_ok && gates_ok && policy_ok};
    });
  }
  return report;
}

std::vector<std::string> suite_names() {
  return {"thm1", "thm5", "thm6", "thm8", "thm9", "normalization", "roundtrip", "dnf"};
}

VerifyReport run_suite(const std::string& name, const VerifyOptions& options) {
  static const std::map<std::string, VerifyReport (*)(const VerifyOptions&)> suites{
      {"thm1", verify_thm1},         {"thm5", verify_thm5},           {"thm6", verify_thm6},
      {"thm8", verify_thm8},         {"thm9", verify_thm9},           {"normalization", verify_normalization},
      {"roundtrip", verify_roundtrip}, {"dnf", verify_dnf}};
  const auto it = suites.find(name);
  if (it == suites.end()) throw Error("unknown suite '" + name + "'");
  return it->second(options);
}

}  // namespace smdp
