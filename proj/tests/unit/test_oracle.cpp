#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "smdp/errors.hpp"
#include "smdp/evaluator.hpp"
#include "smdp/explicit_mdp.hpp"
#include "smdp/oracle.hpp"

using namespace smdp;
using smdp::testing::coin_bounded;

namespace {

Cnf cnf(std::size_t n, std::vector<std::vector<int>> clauses) {
  Cnf f;
  f.num_vars = n;
  for (const auto& c : clauses) {
    Clause clause;
    for (int lit : c) clause.push_back({static_cast<std::size_t>(std::abs(lit) - 1), lit < 0});
    f.clauses.push_back(clause);
  }
  return f;
}

}  // namespace

TEST(Oracle, BackwardInductionOnCoin) {
  const ExplicitMdp x = expand_all(coin_bounded(), 2);
  const OptimalSolution sol = solve_optimal(x);
  const auto s0 = x.find(BitVector::from_string("0"));
  const auto s1 = x.find(BitVector::from_string("1"));
  EXPECT_EQ(sol.value.values[s0][1], Rational(1));
  EXPECT_EQ(sol.value.values[s1][1], make_rational(3, 2));
  EXPECT_EQ(sol.value.values[s0][2], make_rational(3, 2));
  EXPECT_EQ(sol.optimal[s0][2], std::vector<std::size_t>{1});
  EXPECT_EQ(sol.optimal[s1][1], std::vector<std::size_t>{0});
  EXPECT_EQ(value_of_policy(x, sol.greedy), sol.value);
}

TEST(Oracle, NextActionFromZero) {
  // One step left: flip earns 1, stay earns 1/2.
  EXPECT_EQ(best_next_action(coin_bounded(), BitVector::from_string("0"), 1), std::vector<std::size_t>{1});
  EXPECT_THROW(best_next_action(coin_bounded(), BitVector::from_string("0"), 0), Error);
}

TEST(Oracle, BoundedPolicyExistence) {
  const BoundedActionMdp b = coin_bounded();
  const auto yes = bounded_policy_exists(b, 2, 4, Rational(1));
  ASSERT_TRUE(yes.exists);
  EXPECT_GE(expected_reward_exact(b, *yes.witness, 2).expected, Rational(1));
  EXPECT_LE(yes.witness->circuit.size(), 4u);
  EXPECT_FALSE(bounded_policy_exists(b, 2, 4, make_rational(7, 4)).exists);
}

TEST(Oracle, SatFamily) {
  const Cnf f = cnf(2, {{1, 2}});
  EXPECT_TRUE(sat_oracle(f));
  EXPECT_EQ(model_count(f), 3u);
  EXPECT_FALSE(sat_oracle(cnf(1, {{1}, {-1}})));
  EXPECT_EQ(model_count(cnf(3, {})), 8u);

  // x1 & (y1 | x1): x1 = 1 satisfies every extension.
  const Cnf g = cnf(2, {{1}, {2, 1}});
  EXPECT_EQ(best_extension_fraction(g, 1), Rational(1));
  EXPECT_TRUE(emajsat_oracle(g, 1));
  EXPECT_TRUE(forall_exists_oracle(g, 1));
  EXPECT_EQ(best_x_assignment(g, 1), 1u);

  // y1 alone: every x gets exactly half.
  const Cnf h = cnf(2, {{2}});
  EXPECT_EQ(best_extension_fraction(h, 1), make_rational(1, 2));
  EXPECT_TRUE(emajsat_oracle(h, 1));
  EXPECT_FALSE(forall_exists_oracle(h, 1));
}

TEST(Oracle, CompileBound) { EXPECT_EQ(compile_bound(3, 4), 2u * 8u * 6u); }
