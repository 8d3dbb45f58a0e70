#include <benchmark/benchmark.h>

#include "smdp/dnf.hpp"
#include "smdp/evaluator.hpp"
#include "smdp/explicit_mdp.hpp"
#include "smdp/oracle.hpp"
#include "smdp/random_models.hpp"
#include "smdp/reductions.hpp"

using namespace smdp;

static void BM_CircuitEvalLanes(benchmark::State& state) {
  Rng rng(1);
  const Circuit c = random_circuit(rng, 16, static_cast<std::size_t>(state.range(0)), 4);
  std::vector<std::uint64_t> in(16, 0xA5A5A5A5DEADBEEFull);
  std::vector<std::uint64_t> out(4);
  for (auto _ : state) {
    c.eval_lanes(in, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_CircuitEvalLanes)->Arg(64)->Arg(512)->Arg(4096);

static void BM_CanonicalDnf(benchmark::State& state) {
  Rng rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  const Circuit c = random_circuit(rng, n, 40, 2);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_dnf(c).size());
}
BENCHMARK(BM_CanonicalDnf)->DenseRange(4, 10, 2);

static void BM_ExactEvaluation(benchmark::State& state) {
  Rng rng(3);
  RandomMdpOptions opts;
  opts.min_vars = opts.max_vars = 4;
  const BoundedActionMdp m = random_mdp(rng, opts);
  const Policy p = random_stationary_policy(rng, 4, m.base.actions.size());
  const auto horizon = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(expected_reward_exact(m, p, horizon).trajectory_count);
}
BENCHMARK(BM_ExactEvaluation)->DenseRange(2, 6, 2);

static void BM_MonteCarlo(benchmark::State& state) {
  Rng rng(4);
  RandomMdpOptions opts;
  opts.min_vars = opts.max_vars = 4;
  const BoundedActionMdp m = random_mdp(rng, opts);
  const Policy p = random_stationary_policy(rng, 4, m.base.actions.size());
  for (auto _ : state) benchmark::DoNotOptimize(expected_reward_mc(m, p, 8, 1000, 0).mean);
}
BENCHMARK(BM_MonteCarlo);

static void BM_SolveExpandAll(benchmark::State& state) {
  Rng rng(5);
  RandomMdpOptions opts;
  opts.min_vars = opts.max_vars = static_cast<std::size_t>(state.range(0));
  const BoundedActionMdp m = random_mdp(rng, opts);
  for (auto _ : state) benchmark::DoNotOptimize(solve_optimal(expand_all(m, 4)).greedy.action.size());
}
BENCHMARK(BM_SolveExpandAll)->Arg(2)->Arg(4)->Arg(6);

static void BM_SatNextAction(benchmark::State& state) {
  Rng rng(6);
  const Cnf f = random_cnf(rng, static_cast<std::size_t>(state.range(0)), 4, 3);
  const ReductionInstance inst = sat_to_next_action(f, SatNextMode::Compact);
  for (auto _ : state) benchmark::DoNotOptimize(best_next_action(inst.mdp, *inst.state, *inst.steps_to_go).size());
}
BENCHMARK(BM_SatNextAction)->DenseRange(2, 4, 1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
