#include "smdp/explicit_mdp.hpp"

#include "smdp/errors.hpp"

namespace smdp {

std::size_t ExplicitMdp::find(const BitVector& s) const {
  const auto it = index.find(s);
  return it == index.end() ? states.size() : it->second;
}

ExplicitMdp expand(MdpView view, std::span<const BitVector> roots, std::size_t horizon,
                   const Limits& limits) {
  const SuccinctMdp& m = view.base();
  ExplicitMdp x;
  x.action_names = m.actions;
  x.horizon = horizon;

  auto add = [&](const BitVector& s, std::size_t d) -> std::size_t {
    const auto [it, inserted] = x.index.try_emplace(s, x.states.size());
    if (inserted) {
      if (x.states.size() >= limits.max_states) {
        throw LimitError("model '" + m.name + "': more than " + std::to_string(limits.max_states) +
                         " reachable states within horizon " + std::to_string(horizon));
      }
      x.states.push_back(s);
      x.depth.push_back(d);
    }
    return it->second;
  };

  for (const auto& r : roots) add(r, 0);
  for (std::size_t k = 0; k < x.states.size(); ++k) {
    if (x.depth[k] >= horizon) continue;
    const BitVector s = x.states[k];
    const std::size_t d = x.depth[k];
    std::vector<std::vector<ExplicitTransition>> row(m.actions.size());
    for (std::size_t a = 0; a < m.actions.size(); ++a) {
      for (auto& succ : successors(view, s, a, limits)) {
        const std::size_t target = add(succ.state, d + 1);
        row[a].push_back({target, std::move(succ.prob)});
      }
    }
    if (x.rows.size() <= k) x.rows.resize(k + 1);
    x.rows[k] = std::move(row);
  }
  x.rows.resize(x.states.size());
  x.rewards.reserve(x.states.size());
  for (std::size_t k = 0; k < x.states.size(); k += 64) {
    const std::size_t end = std::min(x.states.size(), k + 64);
    const auto outs = m.reward.eval_batch(std::span(x.states).subspan(k, end - k));
    for (const auto& o : outs) x.rewards.push_back(read_signed(o));
  }
  return x;
}

ExplicitMdp expand(MdpView m, const BitVector& root, std::size_t horizon, const Limits& limits) {
  return expand(m, std::span<const BitVector>(&root, 1), horizon, limits);
}

ExplicitMdp expand_all(MdpView m, std::size_t horizon, const Limits& limits) {
  const std::size_t n = m->num_vars();
  if (n >= 63 || (std::uint64_t{1} << n) > limits.max_states) {
    throw LimitError("cannot enumerate 2^" + std::to_string(n) + " states within limit " +
                     std::to_string(limits.max_states));
  }
  std::vector<BitVector> roots;
  roots.reserve(std::size_t{1} << n);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) roots.push_back(BitVector::from_uint(v, n));
  return expand(m, roots, horizon, limits);
}

}  // namespace smdp
