#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "smdp/bitvector.hpp"
#include "smdp/limits.hpp"
#include "smdp/mdp.hpp"
#include "smdp/rational.hpp"

namespace smdp {

struct ExplicitTransition {
  std::size_t target = 0;
  Rational prob;
};

/// Enumerated MDP over the states reachable from a set of roots.
///
/// States are numbered in breadth-first order; `depth` is the fewest steps
/// from any root. Rows exist only for states with depth < horizon, since
/// deeper states never act. A state at depth d can be queried with at most
/// horizon - d steps to go.
struct ExplicitMdp {
  std::vector<BitVector> states;
  std::unordered_map<BitVector, std::size_t> index;
  std::vector<std::size_t> depth;
  std::vector<std::int64_t> rewards;
  /// rows[s][a]: positive-probability transitions; empty when depth[s] == horizon.
  std::vector<std::vector<std::vector<ExplicitTransition>>> rows;
  std::vector<std::string> action_names;
  std::size_t horizon = 0;
  std::size_t initial = 0;

  std::size_t size() const noexcept { return states.size(); }
  std::size_t action_count() const noexcept { return action_names.size(); }
  std::size_t steps_available(std::size_t s) const noexcept { return horizon - depth[s]; }
  bool acts(std::size_t s) const noexcept { return depth[s] < horizon; }
  /// Index of `s`, or size() when absent.
  std::size_t find(const BitVector& s) const;
};

/// Breadth-first expansion from `roots` up to `horizon` steps. The first root
/// becomes `initial`. Throws LimitError beyond limits.max_states.
ExplicitMdp expand(MdpView m, std::span<const BitVector> roots, std::size_t horizon,
                   const Limits& limits = {});
ExplicitMdp expand(MdpView m, const BitVector& root, std::size_t horizon, const Limits& limits = {});

/// Expansion with every one of the 2^n states as a depth-0 root.
ExplicitMdp expand_all(MdpView m, std::size_t horizon, const Limits& limits = {});

}  // namespace smdp
