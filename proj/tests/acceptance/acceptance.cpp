// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "smdp/evaluator.hpp"
#include "smdp/explicit_mdp.hpp"
#include "smdp/oracle.hpp"
#include "smdp/random_models.hpp"
#include "smdp/reductions.hpp"
#include "smdp/value_function.hpp"
#include "smdp/verify.hpp"

using namespace smdp;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("error: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && secs >= budget_s) {
    out.pass = false;
    out.detail += " (over the " + std::to_string(static_cast<int>(budget_s)) + " s budget)";
  }
  if (!out.pass) ++failures;
  std::printf("AC%-2d %s  %s: %s [%.2f s]\n", id, out.pass ? "PASS" : "FAIL", title, out.detail.c_str(), secs);
  std::fflush(stdout);
}

Outcome from_suite(const VerifyReport& rep, std::size_t min_rows) {
  std::string detail = std::to_string(rep.passed()) + "/" + std::to_string(rep.rows.size()) + " cases";
  for (const auto& row : rep.rows) {
    if (!row.pass) {
      detail += "; first failure " + row.id + " expected '" + row.expected + "' got '" + row.got + "'";
      break;
    }
  }
  return {rep.ok() && rep.rows.size() >= min_rows, detail};
}

struct RandomCase {
  BoundedActionMdp mdp;
  Policy policy;
  std::size_t horizon;
};

// The shared suite behind criteria 1 and 2: seed 0, n <= 4, |A| <= 3, T <= 4,
// alternating stationary and history-dependent policies.
std::vector<RandomCase> random_suite(std::size_t count) {
  Rng rng(0);
  RandomMdpOptions opts;
  opts.max_vars = 4;
  opts.max_actions = 3;
  std::vector<RandomCase> out;
  for (std::size_t k = 0; k < count; ++k) {
    BoundedActionMdp m = random_mdp(rng, opts);
    const std::size_t horizon = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    const std::size_t n = m.base.num_vars();
    const std::size_t a = m.base.actions.size();
    Policy p = k % 2 == 0 ? Policy(random_stationary_policy(rng, n, a)) : Policy(random_history_policy(rng, n, a, horizon));
    out.push_back({std::move(m), std::move(p), horizon});
  }
  return out;
}

Outcome evaluator_recursion() {
  const auto suite = random_suite(50);
  std::size_t ok = 0;
  for (const auto& c : suite) {
    const SuccinctMdp& m = c.mdp.base;
    const Rational exact = expected_reward_exact(m, c.policy, c.horizon).expected;
    Rational rec;
    if (const auto* sp = std::get_if<StationaryPolicy>(&c.policy)) {
      const ExplicitMdp x = expand(m, m.initial_state, c.horizon);
      rec = value_of_policy(x, *sp).values[x.initial][c.horizon];
    } else {
      rec = value_of_history_policy(m, c.policy, c.horizon).values.at({m.initial_state});
    }
    ok += exact == rec ? 1 : 0;
  }
  return {ok == suite.size(), std::to_string(ok) + "/" + std::to_string(suite.size()) + " MDPs exactly equal"};
}

Outcome normalization() {
  const auto suite = random_suite(50);
  std::size_t ok = 0;
  std::size_t depths = 0;
  for (const auto& c : suite) {
    const SuccinctMdp& m = c.mdp.base;
    std::vector<Rational> mass(c.horizon + 1, Rational(0));
    for_each_trajectory(m, c.policy, c.horizon, [&](std::span<const BitVector> path, const Rational&) {
      mass[path.size() - 1] += history_probability(m, c.policy, path);
    });
    bool all = true;
    for (const auto& q : mass) all = all && q == 1;
    depths += mass.size();
    ok += all ? 1 : 0;
  }
  return {ok == suite.size(), std::to_string(ok) + "/" + std::to_string(suite.size()) + " MDPs, " +
                                  std::to_string(depths) + " depths summing to 1"};
}

Outcome monte_carlo() {
  struct McCase {
    std::string id;
    BoundedActionMdp mdp;
    Policy policy;
    std::size_t horizon;
    std::optional<BitVector> start;
  };
  std::vector<McCase> cases;
  Rng rng(0);
  RandomMdpOptions opts;
  opts.max_vars = 4;
  for (std::size_t k = 0; k < 30; ++k) {
    BoundedActionMdp m = random_mdp(rng, opts);
    const std::size_t horizon = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    Policy p = random_stationary_policy(rng, m.base.num_vars(), m.base.actions.size());
    cases.push_back({"random#" + std::to_string(k), std::move(m), std::move(p), horizon, std::nullopt});
  }
  for (std::size_t k = 0; k < 5; ++k) {
    const Cnf f = random_cnf(rng, 2 + k, 2 + k, 0);
    auto inst = majsat_to_eval(f);
    cases.push_back({"majsat#" + std::to_string(k), inst.mdp, inst.policies[0].policy, inst.horizon, std::nullopt});
  }
  for (std::size_t k = 0; k < 5; ++k) {
    const Cnf f = random_cnf(rng, 2 + k % 2, 2, 3);
    auto inst = sat_to_next_action(f, SatNextMode::Compact);
    const auto& np = inst.policies[k % 2];
    cases.push_back({"satnext#" + std::to_string(k), inst.mdp, np.policy, np.horizon, np.start});
  }
  std::size_t within = 0;
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& c = cases[k];
    const Rational exact = expected_reward_exact(c.mdp, c.policy, c.horizon, c.start).expected;
    const auto est = expected_reward_mc(c.mdp, c.policy, c.horizon, 10000, k, c.start);
    const double gap = std::abs(est.mean - to_double(exact));
    within += (est.std_error == 0.0 ? gap == 0.0 : gap <= 5.0 * est.std_error) ? 1 : 0;
  }
  return {within * 100 >= 95 * cases.size(),
          std::to_string(within) + "/" + std::to_string(cases.size()) + " within 5 stderr (10^4 samples each)"};
}

VerifyOptions options(std::size_t n, std::size_t cases) {
  VerifyOptions o;
  o.n = n;
  o.cases = cases;
  o.seed = 0;
  return o;
}

}  // namespace

int main() {
  criterion(1, "evaluator equals the value recursion on 50 random MDPs", 30, evaluator_recursion);
  criterion(2, "trajectory probabilities sum to 1 at every depth", 0, normalization);
  criterion(3, "next action S iff satisfiable, U-branch 2, S-branch bound", 60, [] {
    // 15 + 1351 grid formulas over one and two variables, then 100 random 3-variable ones.
    return from_suite(verify_thm1(options(3, 100)), 1366 + 100);
  });
  criterion(4, "sequential policy reward equals model_count / 2^n", 60,
            [] { return from_suite(verify_thm5(options(10, 50)), 50); });
  criterion(5, "E = 0 consistent iff unsatisfiable", 60, [] { return from_suite(verify_thm8(options(8, 50)), 50); });
  criterion(6, "reward-1 x-choice exists iff the forall-exists oracle holds", 0,
            [] { return from_suite(verify_thm9(options(2, 0)), 406); });
  criterion(7, "bounded policy existence matches E-MAJSAT on the unit-clause-pair grid", 0,
            [] { return from_suite(verify_thm6(options(0, 0)), 16); });
  criterion(8, "canonical DNF equivalence, term bound, explicit-policy round trip", 0,
            [] { return from_suite(verify_dnf(options(8, 100)), 100); });
  criterion(9, "value -> extracted policy -> value reproduces the table", 0,
            [] { return from_suite(verify_roundtrip(options(4, 25)), 25); });
  criterion(10, "Monte-Carlo estimates within 5 stderr on at least 95% of 40 cases", 0, monte_carlo);
  return failures == 0 ? 0 : 1;
}
