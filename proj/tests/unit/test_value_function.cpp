#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "smdp/errors.hpp"
#include "smdp/evaluator.hpp"
#include "smdp/explicit_mdp.hpp"
#include "smdp/random_models.hpp"
#include "smdp/value_function.hpp"

using namespace smdp;
using smdp::testing::coin_bounded;
using smdp::testing::constant_policy;

TEST(ValueFunction, RecursionOnCoin) {
  const BoundedActionMdp b = coin_bounded();
  const ExplicitMdp x = expand_all(b, 2);
  const ValueTable t = value_of_policy(x, constant_policy(0, 2));
  const auto s0 = BitVector::from_string("0");
  const auto s1 = BitVector::from_string("1");
  EXPECT_EQ(*t.lookup(s0, 0), Rational(0));
  EXPECT_EQ(*t.lookup(s0, 1), make_rational(1, 2));
  EXPECT_EQ(*t.lookup(s1, 1), make_rational(3, 2));
  EXPECT_EQ(*t.lookup(s0, 2), Rational(1));
  EXPECT_EQ(t.lookup(s0, 3), nullptr);
}

TEST(ValueFunction, CircuitRoundTrip) {
  const BoundedActionMdp b = coin_bounded();
  const ExplicitMdp x = expand_all(b, 3);
  const ValueTable t = value_of_policy(x, constant_policy(0, 2));
  const ValueCircuit e = value_circuit_from_table(t, 3);
  EXPECT_EQ(e.denominator, 2u);
  for (std::size_t s = 0; s < t.size(); ++s) {
    for (std::size_t i = 0; i <= 3; ++i) EXPECT_EQ(value_at(e, t.states[s], i), t.values[s][i]);
  }
  EXPECT_EQ(tabulate(e), t);
}

TEST(ValueFunction, ConsistencyAndExtraction) {
  const BoundedActionMdp b = coin_bounded();
  const ExplicitMdp x = expand_all(b, 2);
  const ValueTable t = value_of_policy(x, constant_policy(1, 2));
  const auto res = check_consistency(b, t, 2);
  ASSERT_TRUE(res.consistent) << res.reason;
  // Two steps out, stay happens to match flip's values, so the first action wins;
  // with one step left only flip does.
  EXPECT_EQ(extract_policy(b, t, BitVector::from_string("0"), 2), 0u);
  EXPECT_EQ(extract_policy(b, t, BitVector::from_string("0"), 1), 1u);
  EXPECT_EQ(extract_policy(b, t, BitVector::from_string("1"), 1), 1u);
  EXPECT_EQ(value_of_policy(x, extract_markov(b, x, t)), t);

  ValueTable broken = t;
  broken.values[0][2] += make_rational(1, 8);
  const auto bad = check_consistency(b, broken, 2);
  EXPECT_FALSE(bad.consistent);
  ASSERT_TRUE(bad.counterexample.has_value());
  EXPECT_EQ(*bad.counterexample, broken.states[0]);
  EXPECT_THROW(extract_policy(b, broken, broken.states[0], 2), InconsistentValueError);
}

TEST(ValueFunction, WrongTerminalRewardIsInconsistent) {
  const BoundedActionMdp b = coin_bounded();
  ValueTable t = value_of_policy(expand_all(b, 1), constant_policy(0, 2));
  t.values[1][0] = 5;
  EXPECT_FALSE(check_consistency(b, t, 1).consistent);
}

TEST(ValueFunction, HistoryTableMatchesEvaluator) {
  Rng rng(4);
  for (int k = 0; k < 5; ++k) {
    const BoundedActionMdp b = random_mdp(rng);
    const Policy p = random_history_policy(rng, b.base.num_vars(), b.base.actions.size(), 3);
    const auto table = value_of_history_policy(b, p, 3);
    EXPECT_EQ(table.values.at({b.base.initial_state}), expected_reward_exact(b, p, 3).expected);
    EXPECT_TRUE(check_consistency(b, table).consistent);
  }
}

TEST(ValueFunction, ExtractedMarkovPolicyReproducesValues) {
  Rng rng(8);
  for (int k = 0; k < 8; ++k) {
    const BoundedActionMdp b = random_mdp(rng);
    const ExplicitMdp x = expand(b, b.base.initial_state, 3);
    const ValueTable t = value_of_policy(x, random_stationary_policy(rng, b.base.num_vars(), b.base.actions.size()));
    EXPECT_EQ(value_of_policy(x, extract_markov(b, x, t)), t);
  }
}
