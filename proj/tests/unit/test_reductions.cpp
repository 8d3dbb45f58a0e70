#include <gtest/gtest.h>

#include "smdp/cnf.hpp"
#include "smdp/errors.hpp"
#include "smdp/evaluator.hpp"
#include "smdp/oracle.hpp"
#include "smdp/reductions.hpp"
#include "smdp/sequence_layout.hpp"

using namespace smdp;

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

Rational pow2(std::size_t k) { return Rational(1u << k); }

}  // namespace

TEST(Cnf, DimacsRoundTrip) {
  const Cnf f = parse_dimacs("c comment\np cnf 3 2\n1 -2 0\n3\n-1 0\n");
  EXPECT_EQ(f.num_vars, 3u);
  ASSERT_EQ(f.clauses.size(), 2u);
  EXPECT_EQ(f.clauses[1].size(), 2u);
  EXPECT_TRUE(f.clauses[0][1].negated);
  EXPECT_EQ(parse_dimacs(serialize_dimacs(f)), f);
  EXPECT_TRUE(f.satisfied_by(0b100));
  EXPECT_FALSE(f.satisfied_by(0b001));
  EXPECT_FALSE(f.satisfied_by(0b010));
}

TEST(Cnf, MalformedInputCarriesLine) {
  try {
    parse_dimacs("p cnf 2 1\n1 5 0\n", "f.cnf");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_dimacs("p dnf 2 1\n1 0\n"), ParseError);
  EXPECT_THROW(parse_dimacs("1 2 0\n"), ParseError);
}

TEST(SequenceLayout, EncodeDecode) {
  const SequenceLayout layout{5, 3};
  EXPECT_EQ(layout.counter_width(), 2u);
  EXPECT_EQ(layout.element_width(), 3u);
  EXPECT_EQ(layout.state_width(), 11u);
  const std::vector<std::uint32_t> seq{4, 1};
  const BitVector s = layout.encode(seq);
  EXPECT_EQ(layout.length(s), 2u);
  EXPECT_EQ(layout.decode(s), seq);
  EXPECT_TRUE(layout.is_canonical(s));
  BitVector dirty = s;
  dirty.set(layout.slot_offset(2), true);
  EXPECT_FALSE(layout.is_canonical(dirty));
  EXPECT_EQ(layout.variable_names().front(), "q1");
}

TEST(Reductions, LiteralCodes) {
  EXPECT_EQ(literal_code({0, false}), 0u);
  EXPECT_EQ(literal_code({0, true}), 1u);
  EXPECT_EQ(literal_code({2, true}), 5u);
}

TEST(Reductions, SatNextCompactValues) {
  for (const Cnf& f : {cnf(2, {{1, 1, 2}, {-1, -1, -2}}), cnf(1, {{1, 1, 1}, {-1, -1, -1}})}) {
    const auto inst = sat_to_next_action(f, SatNextMode::Compact);
    EXPECT_TRUE(validate(inst.mdp).ok());
    const std::size_t n = f.num_vars;
    EXPECT_EQ(inst.horizon, 3 * f.clauses.size() + n + 1);
    ASSERT_EQ(inst.policies.size(), 2u);
    EXPECT_EQ(inst.policies[0].name, "U");
    const auto u = expected_reward_exact(inst.mdp, inst.policies[0].policy, n + 1, inst.state).expected;
    EXPECT_EQ(u, Rational(2));
    const auto models = model_count(f);
    const auto s = expected_reward_exact(inst.mdp, inst.policies[1].policy, n + 1, inst.state).expected;
    EXPECT_EQ(s, (pow2(n) - models + Rational(models) * pow2(n + 1)) / pow2(n));
    const auto best = best_next_action(inst.mdp, *inst.state, *inst.steps_to_go);
    EXPECT_EQ(best, std::vector<std::size_t>{models > 0 ? 1u : 2u});
  }
}

TEST(Reductions, SatNextFaithfulPadsBlock) {
  const Cnf f = cnf(1, {{1, -1, 1}});
  const auto inst = sat_to_next_action(f, SatNextMode::Faithful);
  EXPECT_EQ(inst.horizon, 3 * 8 + 1 + 1);
  EXPECT_EQ(inst.layout->length(*inst.state), 3u * 8u);
  EXPECT_EQ(best_next_action(inst.mdp, *inst.state, *inst.steps_to_go), std::vector<std::size_t>{1});
  EXPECT_THROW(sat_to_next_action(cnf(1, {{1, 1}}), SatNextMode::Compact), ReductionError);
}

TEST(Reductions, MajsatRewardIsModelFraction) {
  const Cnf f = cnf(2, {{1, 2}});
  const auto inst = majsat_to_eval(f);
  EXPECT_EQ(expected_reward_exact(inst.mdp, inst.policies[0].policy, inst.horizon).expected, make_rational(3, 4));
  EXPECT_EQ(*inst.reward_bound, make_rational(1, 2));
}

TEST(Reductions, EmajsatReferencePolicy) {
  const Cnf f = cnf(2, {{1}, {2, -1}});
  const auto inst = emajsat_to_bounded_policy(f, 1, make_rational(1, 2), 1);
  EXPECT_TRUE(validate(inst.mdp).ok());
  const auto r = expected_reward_exact(inst.mdp, inst.policies[0].policy, inst.horizon).expected;
  EXPECT_EQ(r, best_extension_fraction(f, 1));
  EXPECT_GE(*inst.size_bound, std::get<StationaryPolicy>(inst.policies[0].policy).circuit.size());
  EXPECT_THROW(emajsat_to_bounded_policy(cnf(3, {{1}}), 1, make_rational(1, 2)), ReductionError);
}

TEST(Reductions, UnsatConsistencyInstance) {
  const auto unsat = unsat_to_consistency(cnf(1, {{1}, {-1}}));
  EXPECT_TRUE(check_consistency(unsat.mdp, *unsat.value).consistent);
  const auto sat = unsat_to_consistency(cnf(2, {{1, 2}}));
  EXPECT_FALSE(check_consistency(sat.mdp, *sat.value).consistent);
}

TEST(Reductions, ForallValueCircuitAttached) {
  const Cnf f = cnf(2, {{1, 2}, {-1, 2}});
  const auto inst = forallexists_to_valuefn(f, 1, best_x_assignment(f, 1));
  ASSERT_TRUE(inst.value.has_value());
  EXPECT_TRUE(check_consistency(inst.mdp, *inst.value).consistent);
  EXPECT_EQ(value_at(*inst.value, inst.mdp.base.initial_state, inst.horizon), make_rational(1, 2));
  const Cnf g = cnf(2, {{1, 2}, {1, -2}});
  const auto yes = forallexists_to_valuefn(g, 1, best_x_assignment(g, 1));
  EXPECT_EQ(value_at(*yes.value, yes.mdp.base.initial_state, yes.horizon), Rational(1));
}
