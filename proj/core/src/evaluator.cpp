#include "smdp/evaluator.hpp"

#include <cmath>
#include <random>
#include <unordered_map>

#include "smdp/errors.hpp"

namespace smdp {
namespace {

struct PairHash {
  std::size_t operator()(const std::pair<BitVector, std::size_t>& k) const noexcept {
    return k.first.hash() * 31 + k.second;
  }
};

class SuccessorCache {
 public:
  SuccessorCache(MdpView m, const Limits& limits) : m_(m), limits_(limits) {}

  const std::vector<Successor>& get(const BitVector& s, std::size_t a) {
    auto key = std::make_pair(s, a);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(std::move(key), successors(m_, s, a, limits_)).first;
    return it->second;
  }

 private:
  MdpView m_;
  const Limits& limits_;
  std::unordered_map<std::pair<BitVector, std::size_t>, std::vector<Successor>, PairHash> cache_;
};

void check_action_count(const SuccinctMdp& m, const Policy& p) {
  if (action_count(p) != m.actions.size()) {
    throw PolicyError("policy declares " + std::to_string(action_count(p)) + " actions, model '" +
                      m.name + "' has " + std::to_string(m.actions.size()));
  }
}

}  // namespace

Rational history_probability(const SuccinctMdp& m, const Policy& p, std::span<const BitVector> states) {
  check_action_count(m, p);
  Rational prob = 1;
  for (std::size_t i = 0; i + 1 < states.size(); ++i) {
    const std::size_t a = decide(p, states.subspan(0, i + 1));
    prob *= transition_prob(m, states[i], states[i + 1], a);
    if (prob == 0) break;
  }
  return prob;
}

void for_each_trajectory(MdpView m, const Policy& p, std::size_t horizon,
                         const std::function<void(std::span<const BitVector>, const Rational&)>& visit,
                         const std::optional<BitVector>& start, const Limits& limits) {
  check_action_count(m.base(), p);
  SuccessorCache cache(m, limits);
  std::vector<BitVector> path{start.value_or(m->initial_state)};
  std::size_t visited = 0;
  std::function<void(const Rational&)> walk = [&](const Rational& prob) {
    if (++visited > limits.max_trajectories) {
      throw LimitError("more than " + std::to_string(limits.max_trajectories) + " trajectory prefixes");
    }
    visit(path, prob);
    if (path.size() > horizon) return;
    const std::size_t a = decide(p, path);
    const auto& next = cache.get(path.back(), a);
    for (const auto& succ : next) {
      path.push_back(succ.state);
      walk(prob * succ.prob);
      path.pop_back();
    }
  };
  walk(Rational(1));
}

RewardReport expected_reward_exact(MdpView m, const Policy& p, std::size_t horizon,
                                   const std::optional<BitVector>& start, const Limits& limits) {
  RewardReport report;
  report.per_depth.assign(horizon + 1, Rational(0));
  std::unordered_map<BitVector, std::int64_t> rewards;
  for_each_trajectory(
      m, p, horizon,
      [&](std::span<const BitVector> path, const Rational& prob) {
        const BitVector& s = path.back();
        auto it = rewards.find(s);
        if (it == rewards.end()) it = rewards.emplace(s, reward(m.base(), s)).first;
        if (it->second != 0) report.per_depth[path.size() - 1] += prob * Rational(it->second);
        ++report.trajectory_count;
      },
      start, limits);
  report.expected = 0;
  for (const auto& c : report.per_depth) report.expected += c;
  return report;
}

MonteCarloEstimate expected_reward_mc(MdpView m, const Policy& p, std::size_t horizon,
                                      std::size_t samples, std::uint64_t seed,
                                      const std::optional<BitVector>& start, const Limits& limits) {
  if (samples == 0) throw Error("Monte-Carlo evaluation needs at least one sample");
  check_action_count(m.base(), p);
  const std::uint64_t denom = m->prob_denominator;
  SuccessorCache cache(m, limits);
  std::unordered_map<BitVector, std::int64_t> rewards;
  auto reward_of = [&](const BitVector& s) {
    auto it = rewards.find(s);
    if (it == rewards.end()) it = rewards.emplace(s, reward(m.base(), s)).first;
    return it->second;
  };
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, denom - 1);
  double sum = 0.0;
  double sum_sq = 0.0;
  std::vector<BitVector> path;
  for (std::size_t k = 0; k < samples; ++k) {
    path.assign(1, start.value_or(m->initial_state));
    double total = static_cast<double>(reward_of(path.back()));
    for (std::size_t d = 0; d < horizon; ++d) {
      const std::size_t a = decide(p, path);
      const auto& next = cache.get(path.back(), a);
      std::uint64_t u = pick(rng);
      const Successor* chosen = &next.back();
      for (const auto& succ : next) {
        if (u < succ.numerator) {
          chosen = &succ;
          break;
        }
        u -= succ.numerator;
      }
      path.push_back(chosen->state);
      total += static_cast<double>(reward_of(path.back()));
    }
    sum += total;
    sum_sq += total * total;
  }
  MonteCarloEstimate est;
  est.samples = samples;
  est.mean = sum / static_cast<double>(samples);
  if (samples > 1) {
    const double n = static_cast<double>(samples);
    const double var = std::max(0.0, (sum_sq - n * est.mean * est.mean) / (n - 1.0));
    est.std_error = std::sqrt(var / n);
  }
  return est;
}

bool compare(const Rational& value, Comparator cmp, const Rational& bound) {
  return cmp == Comparator::Greater ? value > bound : value >= bound;
}

}  // namespace smdp
