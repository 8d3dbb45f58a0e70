#pragma once

#include "smdp/circuit_builder.hpp"
#include "smdp/mdp.hpp"
#include "smdp/policy.hpp"

namespace smdp::testing {

// One coin x. "stay" re-flips it fairly, "flip" negates it. Reward 1 when x = 1.
//
//   V*(0,1) = 1, V*(1,1) = 3/2, V*(0,2) = 3/2 with flip optimal at (0,2).
inline SuccinctMdp coin_mdp() {
  SuccinctMdp m;
  m.name = "coin";
  m.variables = {"x"};
  m.initial_state = BitVector::from_string("0");
  m.actions = {"stay", "flip"};
  m.prob_denominator = 2;
  m.transition = circuit_from_table("t", 3, 2, [](std::uint64_t v) -> std::uint64_t {
    const auto s = (v >> 2) & 1u;
    const auto s2 = (v >> 1) & 1u;
    if ((v & 1u) == 0) return 1;
    return s2 != s ? 2 : 0;
  });
  m.reward = circuit_from_table("r", 1, 2, [](std::uint64_t v) -> std::uint64_t { return v; });
  return m;
}

inline BoundedActionMdp coin_bounded() {
  BoundedActionMdp b;
  b.base = coin_mdp();
  // [s | slot] -> [valid | s']
  b.successors.push_back({circuit_from_table("stay", 2, 2, [](std::uint64_t v) -> std::uint64_t {
                            return 2 | (v & 1u);
                          }),
                          2});
  b.successors.push_back({circuit_from_table("flip", 2, 2, [](std::uint64_t v) -> std::uint64_t {
                            if ((v & 1u) != 0) return 0;
                            return 2 | (((v >> 1) & 1u) ^ 1u);
                          }),
                          1});
  return b;
}

inline StationaryPolicy constant_policy(std::size_t action, std::size_t action_count, std::size_t num_vars = 1) {
  const std::size_t width = index_width(action_count);
  return {circuit_from_table("const", num_vars, width, [action](std::uint64_t) -> std::uint64_t { return action; }),
          action_count};
}

}  // namespace smdp::testing
