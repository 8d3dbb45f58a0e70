#include "smdp/mdp.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <unordered_set>

#include "smdp/errors.hpp"

namespace smdp {

std::size_t BoundedActionMdp::max_branching() const noexcept {
  std::size_t b = 0;
  for (const auto& sc : successors) b = std::max(b, sc.branching);
  return b;
}

MdpView::MdpView(const AnyMdp& m) {
  if (const auto* b = std::get_if<BoundedActionMdp>(&m)) {
    base_ = &b->base;
    bounded_ = b;
  } else {
    base_ = &std::get<SuccinctMdp>(m);
  }
}

std::int64_t read_signed(const BitVector& bits) {
  const std::size_t w = bits.size();
  if (w == 0 || w > 64) throw WidthError("signed reading needs 1..64 bits, got " + std::to_string(w));
  const std::uint64_t raw = bits.to_uint(0, w);
  if (w == 64 || !bits[0]) return static_cast<std::int64_t>(raw);
  return static_cast<std::int64_t>(raw | (~std::uint64_t{0} << w));
}

BitVector write_signed(std::int64_t value, std::size_t width) {
  if (width == 0 || width > 64) throw WidthError("signed width must be 1..64");
  if (width < 64) {
    const std::int64_t lo = -(std::int64_t{1} << (width - 1));
    const std::int64_t hi = (std::int64_t{1} << (width - 1)) - 1;
    if (value < lo || value > hi) {
      throw Error(std::to_string(value) + " does not fit in " + std::to_string(width) + " signed bits");
    }
  }
  const std::uint64_t mask = width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  return BitVector::from_uint(static_cast<std::uint64_t>(value) & mask, width);
}

BitVector action_bits(const SuccinctMdp& m, std::size_t action) {
  if (action >= m.actions.size()) {
    throw ModelError("action index " + std::to_string(action) + " out of range for " +
                     std::to_string(m.actions.size()) + " actions");
  }
  return BitVector::from_uint(action, m.action_width());
}

namespace {

void check_state_width(const SuccinctMdp& m, const BitVector& s, const char* what) {
  if (s.size() != m.num_vars()) {
    throw WidthError(std::string(what) + " has " + std::to_string(s.size()) + " bits, model '" +
                     m.name + "' has " + std::to_string(m.num_vars()) + " variables");
  }
}

std::uint64_t checked_numerator(const SuccinctMdp& m, const BitVector& out) {
  if (out.size() > 64) throw WidthError("probability numerator wider than 64 bits");
  const std::uint64_t num = out.to_uint();
  if (num > m.prob_denominator) {
    throw ModelError("model '" + m.name + "': transition numerator " + std::to_string(num) +
                     " exceeds denominator " + std::to_string(m.prob_denominator));
  }
  return num;
}

// Numerators t(s, s', a) for a list of candidate successors.
std::vector<std::uint64_t> numerators(const SuccinctMdp& m, const BitVector& s,
                                      std::span<const BitVector> targets, std::size_t action) {
  const BitVector a = action_bits(m, action);
  std::vector<BitVector> inputs;
  inputs.reserve(targets.size());
  for (const auto& t : targets) inputs.push_back(concat({&s, &t, &a}));
  const auto outs = m.transition.eval_batch(inputs);
  std::vector<std::uint64_t> nums;
  nums.reserve(outs.size());
  for (const auto& o : outs) nums.push_back(checked_numerator(m, o));
  return nums;
}

// Raw slot listing of n_a(s): valid successors in slot order, duplicates reported.
struct SlotListing {
  std::vector<BitVector> states;
  std::optional<std::size_t> duplicate_slot;
};

SlotListing list_slots(const BoundedActionMdp& m, const BitVector& s, std::size_t action) {
  const auto& sc = m.successors.at(action);
  const std::size_t n = m.base.num_vars();
  std::vector<BitVector> inputs;
  inputs.reserve(sc.branching);
  for (std::size_t slot = 0; slot < sc.branching; ++slot) {
    const BitVector idx = BitVector::from_uint(slot, sc.slot_width());
    inputs.push_back(concat({&s, &idx}));
  }
  const auto outs = sc.circuit.eval_batch(inputs);
  SlotListing listing;
  std::unordered_set<BitVector> seen;
  for (std::size_t slot = 0; slot < outs.size(); ++slot) {
    if (!outs[slot][0]) continue;
    BitVector next = outs[slot].slice(1, n);
    if (!seen.insert(next).second) {
      if (!listing.duplicate_slot) listing.duplicate_slot = slot;
      continue;
    }
    listing.states.push_back(std::move(next));
  }
  return listing;
}

std::vector<BitVector> all_states(std::size_t n) {
  std::vector<BitVector> states;
  states.reserve(std::size_t{1} << n);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) states.push_back(BitVector::from_uint(v, n));
  return states;
}

void check_enumerable(const SuccinctMdp& m, const Limits& limits) {
  const std::size_t n = m.num_vars();
  if (n >= 63 || (std::uint64_t{1} << n) > limits.max_states) {
    throw LimitError("model '" + m.name + "': enumerating 2^" + std::to_string(n) +
                     " successor candidates exceeds the state limit " +
                     std::to_string(limits.max_states));
  }
}

}  // namespace

std::uint64_t transition_numerator(const SuccinctMdp& m, const BitVector& s, const BitVector& s2,
                                   std::size_t action) {
  check_state_width(m, s, "state");
  check_state_width(m, s2, "successor state");
  const BitVector a = action_bits(m, action);
  return checked_numerator(m, m.transition.eval(concat({&s, &s2, &a})));
}

Rational transition_prob(const SuccinctMdp& m, const BitVector& s, const BitVector& s2,
                         std::size_t action) {
  Rational p(transition_numerator(m, s, s2, action), m.prob_denominator);
  p.canonicalize();
  return p;
}

std::int64_t reward(const SuccinctMdp& m, const BitVector& s) {
  check_state_width(m, s, "state");
  return read_signed(m.reward.eval(s));
}

std::vector<Successor> successors(MdpView view, const BitVector& s, std::size_t action,
                                  const Limits& limits) {
  const SuccinctMdp& m = view.base();
  check_state_width(m, s, "state");
  std::vector<BitVector> candidates;
  if (const auto* b = view.bounded()) {
    auto listing = list_slots(*b, s, action);
    if (listing.duplicate_slot) {
      throw ModelError("model '" + m.name + "': successor circuit of action '" + m.actions[action] +
                       "' repeats a state at slot " + std::to_string(*listing.duplicate_slot));
    }
    candidates = std::move(listing.states);
  } else {
    check_enumerable(m, limits);
    candidates = all_states(m.num_vars());
  }
  const auto nums = numerators(m, s, candidates, action);
  std::vector<Successor> result;
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (nums[k] == 0) continue;
    total += nums[k];
    Rational p(nums[k], m.prob_denominator);
    p.canonicalize();
    result.push_back({std::move(candidates[k]), std::move(p), nums[k]});
  }
  if (total != m.prob_denominator) {
    throw ModelError("model '" + m.name + "': probabilities of action '" + m.actions[action] +
                     "' at state " + s.to_string() + " sum to " + std::to_string(total) + "/" +
                     std::to_string(m.prob_denominator));
  }
  return result;
}

ValidationReport validate(MdpView view, const Limits& limits, std::size_t exhaustive_vars,
                          std::size_t sample_states, std::uint64_t seed) {
  const SuccinctMdp& m = view.base();
  ValidationReport report;
  auto& out = report.violations;
  const std::size_t n = m.num_vars();
  const std::size_t aw = m.action_width();

  if (m.actions.empty()) out.push_back("model has no actions");
  if (m.prob_denominator == 0) out.push_back("probability denominator is zero");
  if (m.initial_state.size() != n) out.push_back("initial state width differs from variable count");
  if (m.transition.num_inputs() != 2 * n + aw) {
    out.push_back("transition circuit has " + std::to_string(m.transition.num_inputs()) +
                  " inputs, expected " + std::to_string(2 * n + aw));
  }
  if (m.prob_width() == 0 || m.prob_width() > 64) out.push_back("transition output width must be 1..64");
  if (m.reward.num_inputs() != n) {
    out.push_back("reward circuit has " + std::to_string(m.reward.num_inputs()) + " inputs, expected " +
                  std::to_string(n));
  }
  if (m.reward_width() == 0 || m.reward_width() > 64) out.push_back("reward output width must be 1..64");
  const BoundedActionMdp* b = view.bounded();
  if (b != nullptr) {
    if (b->successors.size() != m.actions.size()) {
      out.push_back("expected one successor circuit per action");
    } else {
      for (std::size_t a = 0; a < b->successors.size(); ++a) {
        const auto& sc = b->successors[a];
        if (sc.branching == 0) out.push_back("action '" + m.actions[a] + "' has zero branching");
        if (sc.circuit.num_inputs() != n + sc.slot_width() || sc.circuit.num_outputs() != n + 1) {
          out.push_back("successor circuit of action '" + m.actions[a] + "' has wrong width");
        }
      }
    }
  }
  if (!out.empty()) return report;

  // Choose the states to check.
  std::vector<BitVector> states;
  if (n <= exhaustive_vars && (std::uint64_t{1} << n) <= limits.max_states) {
    states = all_states(n);
    report.exhaustive = true;
  } else {
    std::unordered_set<BitVector> seen{m.initial_state};
    std::deque<BitVector> queue{m.initial_state};
    while (!queue.empty() && states.size() < sample_states) {
      BitVector s = queue.front();
      queue.pop_front();
      states.push_back(s);
      for (std::size_t a = 0; a < m.actions.size(); ++a) {
        try {
          for (auto& succ : successors(view, s, a, limits)) {
            if (seen.insert(succ.state).second) queue.push_back(std::move(succ.state));
          }
        } catch (const Error&) {
          // Reported below when the pair itself is checked.
        }
      }
    }
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < sample_states; ++k) {
      BitVector s(n);
      for (std::size_t i = 0; i < n; ++i) s.set(i, (rng() & 1u) != 0);
      if (seen.insert(s).second) states.push_back(std::move(s));
    }
  }

  const bool enumerate_targets = n < 63 && (std::uint64_t{1} << n) <= limits.max_states &&
                                 (report.exhaustive || n <= 16);
  const std::vector<BitVector> targets = enumerate_targets ? all_states(n) : std::vector<BitVector>{};
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);

  for (const auto& s : states) {
    for (std::size_t a = 0; a < m.actions.size(); ++a) {
      ++report.checked_pairs;
      const std::string where = "state " + s.to_string() + ", action '" + m.actions[a] + "'";
      try {
        std::unordered_set<BitVector> positive;
        if (enumerate_targets) {
          const auto nums = numerators(m, s, targets, a);
          std::uint64_t total = 0;
          for (std::size_t k = 0; k < targets.size(); ++k) {
            if (nums[k] == 0) continue;
            total += nums[k];
            positive.insert(targets[k]);
          }
          if (total != m.prob_denominator) {
            out.push_back(where + ": probabilities sum to " + std::to_string(total) + "/" +
                          std::to_string(m.prob_denominator));
          }
        }
        if (b == nullptr) continue;
        const auto listing = list_slots(*b, s, a);
        if (listing.duplicate_slot) {
          out.push_back(where + ": successor slot " + std::to_string(*listing.duplicate_slot) +
                        " repeats a state");
        }
        const auto nums = numerators(m, s, listing.states, a);
        std::uint64_t total = 0;
        for (std::size_t k = 0; k < nums.size(); ++k) {
          if (nums[k] == 0) {
            out.push_back(where + ": listed successor " + listing.states[k].to_string() +
                          " has probability 0");
          }
          total += nums[k];
        }
        if (enumerate_targets) {
          const std::unordered_set<BitVector> listed(listing.states.begin(), listing.states.end());
          for (const auto& p : positive) {
            if (!listed.contains(p)) {
              out.push_back(where + ": successor " + p.to_string() + " has positive probability but is not listed");
            }
          }
        } else {
          if (total != m.prob_denominator) {
            out.push_back(where + ": listed successors carry " + std::to_string(total) + "/" +
                          std::to_string(m.prob_denominator));
          }
          // Spot-check unlisted states: they must have probability 0.
          const std::unordered_set<BitVector> listed(listing.states.begin(), listing.states.end());
          std::vector<BitVector> probes;
          if (!listed.contains(s)) probes.push_back(s);
          for (std::size_t k = 0; k < 16; ++k) {
            BitVector p = s;
            for (std::size_t i = 0; i < n; ++i) {
              if ((rng() & 3u) == 0) p.set(i, !p[i]);
            }
            if (!listed.contains(p)) probes.push_back(std::move(p));
          }
          const auto probe_nums = numerators(m, s, probes, a);
          for (std::size_t k = 0; k < probes.size(); ++k) {
            if (probe_nums[k] != 0) {
              out.push_back(where + ": unlisted state " + probes[k].to_string() +
                            " has positive probability");
            }
          }
        }
      } catch (const Error& e) {
        out.push_back(where + ": " + e.what());
      }
    }
  }
  return report;
}

}  // namespace smdp
