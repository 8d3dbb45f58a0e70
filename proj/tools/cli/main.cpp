#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"
#include "smdp/errors.hpp"
#include "smdp/verify.hpp"

namespace {

using namespace smdp::cli;

struct Globals {
  std::string emit = "table";
  std::optional<std::size_t> limit_states;
  std::uint64_t seed = 0;

  Common common() const {
    Common c;
    c.emit = emit == "records" ? Emit::Records : Emit::Table;
    c.limits = smdp::Limits::from_environment();
    if (limit_states) c.limits.max_states = *limit_states;
    c.seed = seed;
    return c;
  }
};

void add_globals(CLI::App* app, Globals& g) {
  app->add_option("--emit", g.emit, "Output style")->check(CLI::IsMember({"table", "records"}));
  app->add_option("--limit-states", g.limit_states, "Enumeration limit (overrides SMDP_LIMIT_STATES)")
      ->check(CLI::PositiveNumber);
  app->add_option("--seed", g.seed, "Random seed");
}

CLI::App* add_gen(CLI::App& app, const std::string& name, const std::string& help, GenOptions& o, Globals& g) {
  auto* sub = app.add_subcommand(name, help);
  sub->add_option("cnf", o.cnf, "DIMACS formula")->required()->check(CLI::ExistingFile);
  sub->add_option("-o,--out", o.out, "Instance directory to write")->required();
  add_globals(sub, g);
  return sub;
}

void add_model_inputs(CLI::App* sub, ModelOptions& o, Globals& g) {
  sub->add_option("--instance", o.instance, "Instance directory from a gen-* command");
  sub->add_option("--mdp", o.mdp, "MDP manifest");
  sub->add_option("--horizon", o.horizon, "Horizon T");
  sub->add_option("--start", o.start, "Start state bits (default: initial state)");
  add_globals(sub, g);
}

void add_policy_inputs(CLI::App* sub, ModelOptions& o) {
  sub->add_option("--policy", o.policy, "Policy manifest");
  sub->add_option("--policy-name", o.policy_name, "Companion policy of the instance (default: first)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Succinct finite-horizon MDP toolkit"};
  app.require_subcommand(1);
  Globals g;
  GenOptions gen;
  ModelOptions model;
  CanonOptions canon_opts;
  VerifyCliOptions verify_opts;

  auto* satnext = add_gen(app, "gen-satnext", "SAT -> next-action instance", gen, g);
  satnext->add_option("--mode", gen.mode, "compact or faithful clause block")->check(CLI::IsMember({"compact", "faithful"}));
  auto* majsat = add_gen(app, "gen-majsat", "MAJSAT -> policy-evaluation instance", gen, g);
  auto* emajsat = add_gen(app, "gen-emajsat", "E-MAJSAT -> bounded-policy instance", gen, g);
  emajsat->add_option("--split", gen.split, "Number of X variables (default: half)");
  emajsat->add_option("--threshold", gen.threshold, "Reward threshold k");
  auto* unsatcons = add_gen(app, "gen-unsatcons", "UNSAT -> value-consistency instance", gen, g);
  auto* forall = add_gen(app, "gen-forall", "forall-exists -> value-function instance", gen, g);
  forall->add_option("--split", gen.split, "Number of X variables (default: half)");

  auto* eval_cmd = app.add_subcommand("eval", "Exact expected reward of a policy");
  add_model_inputs(eval_cmd, model, g);
  add_policy_inputs(eval_cmd, model);
  eval_cmd->add_option("--at-least", model.at_least, "Check reward >= k (exit 2 when it fails)");
  eval_cmd->add_flag("--strict", model.strict, "With --at-least, require reward > k");

  auto* mc_cmd = app.add_subcommand("eval-mc", "Monte-Carlo estimate of the expected reward");
  add_model_inputs(mc_cmd, model, g);
  add_policy_inputs(mc_cmd, model);
  mc_cmd->add_option("--samples", model.samples, "Number of sampled trajectories")->check(CLI::PositiveNumber);
  mc_cmd->add_flag("--exact", model.exact, "Also compute the exact value and check |estimate - exact| <= 5 stderr");

  auto* value_cmd = app.add_subcommand("value", "Value table E(s, i) of a policy");
  add_model_inputs(value_cmd, model, g);
  add_policy_inputs(value_cmd, model);
  value_cmd->add_flag("--all", model.all_states, "Tabulate every state, not just reachable ones");
  value_cmd->add_option("-o,--out", model.out, "Write the table as a value-function circuit to this directory");

  auto* cons_cmd = app.add_subcommand("check-consistency", "Is a value-function circuit realized by some policy?");
  add_model_inputs(cons_cmd, model, g);
  cons_cmd->add_option("--valuefn", model.valuefn, "Value-function manifest");

  auto* extract_cmd = app.add_subcommand("extract-policy", "Recover a policy from a consistent value function");
  add_model_inputs(extract_cmd, model, g);
  extract_cmd->add_option("--valuefn", model.valuefn, "Value-function manifest");
  extract_cmd->add_option("--steps", model.steps, "Steps to go (with --start: single query)");
  extract_cmd->add_option("-o,--out", model.out, "Write the extracted history policy to this directory");

  auto* solve_cmd = app.add_subcommand("solve", "Optimal finite-horizon values by backward induction");
  add_model_inputs(solve_cmd, model, g);
  solve_cmd->add_flag("--all", model.all_states, "Solve from every state");
  solve_cmd->add_flag("--table", model.table, "Print V* and the optimal actions for every state and step");
  solve_cmd->add_option("-o,--out", model.out, "Write a greedy optimal policy to this directory");

  auto* next_cmd = app.add_subcommand("next-action", "Actions optimal at a state with a given number of steps to go");
  add_model_inputs(next_cmd, model, g);
  next_cmd->add_option("--steps", model.steps, "Steps to go");
  next_cmd->add_option("--action", model.action, "Check that this action is optimal (exit 2 otherwise)");

  auto* canon_cmd = app.add_subcommand("canon", "Canonical DNF of a netlist");
  canon_cmd->add_option("netlist", canon_opts.netlist, "Netlist file")->required()->check(CLI::ExistingFile);
  canon_cmd->add_option("-o,--out", canon_opts.out, "Output netlist (default: standard output)");
  canon_cmd->add_flag("--check", canon_opts.check, "Check equivalence exhaustively (exit 2 when it fails)");
  add_globals(canon_cmd, g);

  auto* verify_cmd = app.add_subcommand("verify", "Run a correspondence suite");
  verify_cmd->add_option("suite", verify_opts.suite, "Suite name")->required()->check(CLI::IsMember(smdp::suite_names()));
  verify_cmd->add_option("--n", verify_opts.n, "Size parameter (0: suite default)");
  verify_cmd->add_option("--cases", verify_opts.cases, "Number of random cases (0: suite default)");
  add_globals(verify_cmd, g);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const Common c = g.common();
  try {
    if (*satnext) return gen_satnext(gen, c);
    if (*majsat) return gen_majsat(gen, c);
    if (*emajsat) return gen_emajsat(gen, c);
    if (*unsatcons) return gen_unsatcons(gen, c);
    if (*forall) return gen_forall(gen, c);
    if (*eval_cmd) return eval(model, c);
    if (*mc_cmd) return eval_mc(model, c);
    if (*value_cmd) return value(model, c);
    if (*cons_cmd) return check_consistency(model, c);
    if (*extract_cmd) return extract_policy(model, c);
    if (*solve_cmd) return solve(model, c);
    if (*next_cmd) return next_action(model, c);
    if (*canon_cmd) return canon(canon_opts, c);
    if (*verify_cmd) return verify(verify_opts, c);
  } catch (const UsageError& e) {
    std::cerr << "smdp: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "smdp: error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
