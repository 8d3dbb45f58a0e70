#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "smdp/errors.hpp"
#include "smdp/explicit_mdp.hpp"
#include "smdp/random_models.hpp"

using namespace smdp;

TEST(Policy, StationaryDecisions) {
  const StationaryPolicy p{circuit_from_table("copy", 1, 1, [](std::uint64_t v) -> std::uint64_t { return v; }), 2};
  EXPECT_EQ(decide(p, BitVector::from_string("0")), 0u);
  EXPECT_EQ(decide(p, BitVector::from_string("1")), 1u);
}

TEST(Policy, OutOfRangeActionThrows) {
  const StationaryPolicy p = smdp::testing::constant_policy(2, 3);
  EXPECT_EQ(decide(p, BitVector::from_string("0")), 2u);
  const StationaryPolicy bad{p.circuit, 2};
  EXPECT_THROW(decide(bad, BitVector::from_string("0")), PolicyError);
}

TEST(Policy, LiftedPolicyAgrees) {
  Rng rng(5);
  const StationaryPolicy p = random_stationary_policy(rng, 3, 3);
  const HistoryPolicy h = lift_to_history(p, 3);
  std::vector<BitVector> history;
  for (std::uint64_t v : {1u, 4u, 6u, 3u}) {
    history.push_back(BitVector::from_uint(v, 3));
    EXPECT_EQ(decide(Policy(h), history), decide(p, history.back()));
  }
}

TEST(Policy, HistoryDecisionUsesTime) {
  Rng rng(9);
  const HistoryPolicy h = random_history_policy(rng, 2, 3, 2);
  EXPECT_EQ(h.input_width(), 3 * 2 + index_width(3));
  const std::vector<BitVector> history{BitVector::from_string("01"), BitVector::from_string("11")};
  EXPECT_EQ(decide_h(h, history, 1), decide(Policy(h), history));
}

TEST(Policy, CompileExplicitRoundTrips) {
  Rng rng(11);
  std::unordered_map<BitVector, std::size_t> map;
  for (std::uint64_t v = 0; v < 32; ++v) map.emplace(BitVector::from_uint(v, 5), v % 3);
  const StationaryPolicy p = compile_explicit(map, 5, 3);
  for (const auto& [s, a] : map) EXPECT_EQ(decide(p, s), a);
  map.erase(BitVector::from_uint(0, 5));
  EXPECT_THROW(compile_explicit(map, 5, 3), PolicyError);
}

TEST(Policy, CompileMarkovMatchesTable) {
  const BoundedActionMdp b = smdp::testing::coin_bounded();
  const ExplicitMdp x = expand_all(b, 2);
  MarkovPolicy mk;
  for (std::size_t s = 0; s < x.size(); ++s) mk.action.push_back({0, s, 1 - s});
  const HistoryPolicy h = compile_markov(mk, x);
  // With i steps to go the current time is T - i.
  for (std::size_t s = 0; s < x.size(); ++s) {
    for (std::size_t i = 1; i <= 2; ++i) {
      std::vector<BitVector> history(2 - i + 1, x.states[s]);
      EXPECT_EQ(decide(Policy(h), history), mk.action[s][i]);
    }
  }
}
