#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "smdp/limits.hpp"
#include "smdp/mdp.hpp"
#include "smdp/policy.hpp"
#include "smdp/rational.hpp"

namespace smdp {

/// Product of t(s_i, s_{i+1}, P(s_0..s_i)) along `states`; 1 for a single state.
Rational history_probability(const SuccinctMdp& m, const Policy& p, std::span<const BitVector> states);

struct RewardReport {
  Rational expected;
  /// per_depth[d] = sum over length-d trajectories of H * r(s_d).
  std::vector<Rational> per_depth;
  /// Number of positive-probability trajectory prefixes, the root included.
  std::size_t trajectory_count = 0;
};

/// Visits every positive-probability trajectory prefix s_0..s_d (d <= horizon)
/// in depth-first order together with its probability.
void for_each_trajectory(MdpView m, const Policy& p, std::size_t horizon,
                         const std::function<void(std::span<const BitVector>, const Rational&)>& visit,
                         const std::optional<BitVector>& start = std::nullopt,
                         const Limits& limits = {});

/// Expected undiscounted reward r(s_0) + sum_{d=1..T} sum_seq H(seq) r(s_d),
/// starting from `start` (default: the initial state). Exact.
RewardReport expected_reward_exact(MdpView m, const Policy& p, std::size_t horizon,
                                   const std::optional<BitVector>& start = std::nullopt,
                                   const Limits& limits = {});

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Sample mean of trajectory returns. Deterministic for a given seed.
MonteCarloEstimate expected_reward_mc(MdpView m, const Policy& p, std::size_t horizon,
                                      std::size_t samples, std::uint64_t seed,
                                      const std::optional<BitVector>& start = std::nullopt,
                                      const Limits& limits = {});

enum class Comparator { Greater, GreaterOrEqual };

bool compare(const Rational& value, Comparator cmp, const Rational& bound);

}  // namespace smdp
