#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "smdp/errors.hpp"
#include "smdp/explicit_mdp.hpp"
#include "smdp/manifest.hpp"
#include "smdp/random_models.hpp"

using namespace smdp;
using smdp::testing::coin_bounded;
using smdp::testing::coin_mdp;

TEST(Mdp, SignedFields) {
  EXPECT_EQ(read_signed(BitVector::from_string("111")), -1);
  EXPECT_EQ(read_signed(BitVector::from_string("011")), 3);
  EXPECT_EQ(write_signed(-2, 3).to_string(), "110");
  EXPECT_THROW(write_signed(4, 3), Error);
}

TEST(Mdp, TransitionProbabilities) {
  const SuccinctMdp m = coin_mdp();
  const auto s0 = BitVector::from_string("0");
  const auto s1 = BitVector::from_string("1");
  EXPECT_EQ(transition_prob(m, s0, s1, 0), make_rational(1, 2));
  EXPECT_EQ(transition_prob(m, s0, s1, 1), Rational(1));
  EXPECT_EQ(transition_prob(m, s0, s0, 1), Rational(0));
  EXPECT_EQ(reward(m, s1), 1);
}

TEST(Mdp, PlainAndBoundedSuccessorsAgree) {
  const BoundedActionMdp b = coin_bounded();
  for (std::uint64_t v = 0; v < 2; ++v) {
    const auto s = BitVector::from_uint(v, 1);
    for (std::size_t a = 0; a < 2; ++a) {
      auto plain = successors(b.base, s, a);
      auto fast = successors(b, s, a);
      ASSERT_EQ(plain.size(), fast.size());
      std::sort(fast.begin(), fast.end(), [](const auto& x, const auto& y) { return x.state < y.state; });
      for (std::size_t k = 0; k < plain.size(); ++k) {
        EXPECT_EQ(plain[k].state, fast[k].state);
        EXPECT_EQ(plain[k].prob, fast[k].prob);
      }
    }
  }
}

TEST(Mdp, ValidateFlagsBrokenNormalization) {
  SuccinctMdp m = coin_mdp();
  EXPECT_TRUE(validate(m).ok());
  m.prob_denominator = 3;
  const auto report = validate(m);
  EXPECT_FALSE(report.ok());
  EXPECT_THROW(successors(m, BitVector::from_string("0"), 0), ModelError);
}

TEST(Mdp, ValidateFlagsUnlistedSuccessor) {
  BoundedActionMdp b = coin_bounded();
  // "stay" now lists only slot 0, dropping a positive-probability successor.
  b.successors[0].circuit = circuit_from_table("stay", 2, 2, [](std::uint64_t v) -> std::uint64_t {
    return (v & 1u) == 0 ? 2 : 0;
  });
  EXPECT_FALSE(validate(b).ok());
}

TEST(Mdp, RandomModelsValidate) {
  Rng rng(3);
  for (int k = 0; k < 10; ++k) EXPECT_TRUE(validate(random_mdp(rng)).ok()) << k;
}

TEST(ExplicitMdp, ExpansionDepthsAndRows) {
  const auto x = expand(coin_mdp(), BitVector::from_string("0"), 2);
  EXPECT_EQ(x.size(), 2u);
  EXPECT_EQ(x.horizon, 2u);
  EXPECT_EQ(x.steps_available(x.initial), 2u);
  EXPECT_EQ(x.rows[x.initial][0].size(), 2u);
  EXPECT_EQ(x.rows[x.initial][1].size(), 1u);
  const auto all = expand_all(coin_bounded(), 3);
  EXPECT_EQ(all.size(), 2u);
  for (std::size_t s = 0; s < all.size(); ++s) EXPECT_EQ(all.steps_available(s), 3u);
}

TEST(ExplicitMdp, RespectsStateLimit) {
  Limits limits;
  limits.max_states = 1;
  EXPECT_THROW(expand(coin_mdp(), BitVector::from_string("0"), 2, limits), LimitError);
}

TEST(Manifest, MdpRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "smdp_manifest_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const BoundedActionMdp b = coin_bounded();
  save_mdp(b, dir, "coin");
  const AnyMdp loaded = load_mdp(dir / "coin.txt");
  const auto* lb = std::get_if<BoundedActionMdp>(&loaded);
  ASSERT_NE(lb, nullptr);
  EXPECT_EQ(lb->base.actions, b.base.actions);
  EXPECT_EQ(lb->base.prob_denominator, 2u);
  EXPECT_EQ(lb->base.transition, b.base.transition);
  ASSERT_EQ(lb->successors.size(), 2u);
  EXPECT_EQ(lb->successors[0].branching, 2u);

  save_mdp(b.base, dir, "plain");
  EXPECT_TRUE(std::holds_alternative<SuccinctMdp>(load_mdp(dir / "plain.txt")));

  const StationaryPolicy p = smdp::testing::constant_policy(1, 2);
  save_policy(p, "flip", dir, "flip");
  const auto lp = load_policy(dir / "flip.txt");
  EXPECT_EQ(lp.name, "flip");
  EXPECT_EQ(std::get<StationaryPolicy>(lp.policy).circuit, p.circuit);
  std::filesystem::remove_all(dir);
}

TEST(Manifest, MissingKeysAreParseErrors) {
  const auto dir = std::filesystem::temp_directory_path() / "smdp_manifest_bad";
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "m.txt");
    out << "mdp x\nvars a\nbogus 1\n";
  }
  EXPECT_THROW(load_mdp(dir / "m.txt"), ParseError);
  std::filesystem::remove_all(dir);
}
