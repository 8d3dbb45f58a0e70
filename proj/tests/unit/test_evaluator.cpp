#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "smdp/errors.hpp"
#include "smdp/evaluator.hpp"
#include "smdp/random_models.hpp"

using namespace smdp;
using smdp::testing::coin_bounded;
using smdp::testing::coin_mdp;
using smdp::testing::constant_policy;

TEST(Evaluator, CoinRewards) {
  const SuccinctMdp m = coin_mdp();
  EXPECT_EQ(expected_reward_exact(m, constant_policy(1, 2), 2).expected, Rational(1));
  EXPECT_EQ(expected_reward_exact(m, constant_policy(0, 2), 1).expected, make_rational(1, 2));
  EXPECT_EQ(expected_reward_exact(m, constant_policy(0, 2), 2).expected, Rational(1));
  EXPECT_EQ(expected_reward_exact(m, constant_policy(0, 2), 0).expected, Rational(0));
  const auto r = expected_reward_exact(m, constant_policy(0, 2), 2, BitVector::from_string("1"));
  EXPECT_EQ(r.per_depth.size(), 3u);
  EXPECT_EQ(r.per_depth[0], Rational(1));
  EXPECT_EQ(r.trajectory_count, 7u);
}

TEST(Evaluator, HistoryProbabilityProducts) {
  const SuccinctMdp m = coin_mdp();
  const Policy stay = constant_policy(0, 2);
  const std::vector<BitVector> path{BitVector::from_string("0"), BitVector::from_string("1"), BitVector::from_string("1")};
  EXPECT_EQ(history_probability(m, stay, path), make_rational(1, 4));
  const Policy flip = constant_policy(1, 2);
  EXPECT_EQ(history_probability(m, flip, path), Rational(0));
}

TEST(Evaluator, BoundedAndPlainAgree) {
  Rng rng(2);
  for (int k = 0; k < 10; ++k) {
    const BoundedActionMdp b = random_mdp(rng);
    const Policy p = random_stationary_policy(rng, b.base.num_vars(), b.base.actions.size());
    EXPECT_EQ(expected_reward_exact(b, p, 3).expected, expected_reward_exact(b.base, p, 3).expected);
  }
}

TEST(Evaluator, TrajectoryLimit) {
  Limits limits;
  limits.max_trajectories = 3;
  EXPECT_THROW(expected_reward_exact(coin_mdp(), constant_policy(0, 2), 3, std::nullopt, limits), LimitError);
}

TEST(Evaluator, MonteCarloIsSeededAndClose) {
  const BoundedActionMdp b = coin_bounded();
  const Policy p = constant_policy(0, 2);
  const auto a = expected_reward_mc(b, p, 3, 20000, 42);
  const auto again = expected_reward_mc(b, p, 3, 20000, 42);
  EXPECT_EQ(a.mean, again.mean);
  EXPECT_EQ(a.samples, 20000u);
  EXPECT_NEAR(a.mean, 1.5, 5 * a.std_error);
  const auto det = expected_reward_mc(b, constant_policy(1, 2), 2, 100, 1);
  EXPECT_EQ(det.mean, 1.0);
  EXPECT_EQ(det.std_error, 0.0);
}

TEST(Evaluator, Comparators) {
  EXPECT_TRUE(compare(make_rational(1, 2), Comparator::GreaterOrEqual, make_rational(1, 2)));
  EXPECT_FALSE(compare(make_rational(1, 2), Comparator::Greater, make_rational(1, 2)));
}
