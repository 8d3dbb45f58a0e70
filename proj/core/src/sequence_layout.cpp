#include "smdp/sequence_layout.hpp"

#include <set>

#include "smdp/errors.hpp"

namespace smdp {

BitVector SequenceLayout::encode(std::span<const std::uint32_t> sequence) const {
  if (sequence.size() > max_length) {
    throw ModelError("sequence of length " + std::to_string(sequence.size()) + " exceeds maximum " +
                     std::to_string(max_length));
  }
  BitVector s(state_width());
  s.set_uint(0, counter_width(), sequence.size());
  for (std::size_t j = 0; j < sequence.size(); ++j) {
    if (sequence[j] >= alphabet_size) throw ModelError("element " + std::to_string(sequence[j]) + " outside the alphabet");
    s.set_uint(slot_offset(j), element_width(), sequence[j]);
  }
  return s;
}

std::size_t SequenceLayout::length(const BitVector& state) const {
  if (state.size() != state_width()) throw WidthError("sequence state has the wrong width");
  const std::uint64_t len = state.to_uint(0, counter_width());
  if (len > max_length) throw ModelError("sequence counter " + std::to_string(len) + " exceeds maximum length");
  return static_cast<std::size_t>(len);
}

std::vector<std::uint32_t> SequenceLayout::decode(const BitVector& state) const {
  const std::size_t len = length(state);
  std::vector<std::uint32_t> seq(len);
  for (std::size_t j = 0; j < len; ++j) {
    const std::uint64_t e = state.to_uint(slot_offset(j), element_width());
    if (e >= alphabet_size) throw ModelError("slot " + std::to_string(j) + " holds a code outside the alphabet");
    seq[j] = static_cast<std::uint32_t>(e);
  }
  return seq;
}

bool SequenceLayout::is_canonical(const BitVector& state) const {
  try {
    const auto seq = decode(state);
    for (std::size_t j = seq.size(); j < max_length; ++j) {
      if (state.to_uint(slot_offset(j), element_width()) != 0) return false;
    }
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::vector<std::string> SequenceLayout::variable_names() const {
  std::vector<std::string> names;
  names.reserve(state_width());
  for (std::size_t i = 0; i < counter_width(); ++i) names.push_back("q" + std::to_string(i + 1));
  for (std::size_t j = 0; j < max_length; ++j) {
    for (std::size_t i = 0; i < element_width(); ++i) {
      names.push_back("v" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
    }
  }
  return names;
}

SequenceWires sequence_wires(const CircuitBuilder& b, const SequenceLayout& layout, std::size_t offset) {
  SequenceWires w;
  w.counter = b.inputs(offset, layout.counter_width());
  for (std::size_t j = 0; j < layout.max_length; ++j) {
    w.slots.push_back(b.inputs(offset + layout.slot_offset(j), layout.element_width()));
  }
  return w;
}

namespace {

struct GuardWires {
  Ref room;
  std::vector<Ref> is_pos;
  Ref always;
  Ref no_terminator;
  Ref exactly_one_terminator;
};

GuardWires guard_wires(CircuitBuilder& b, const AppendModelSpec& model, const SequenceWires& w) {
  const auto& layout = model.layout;
  GuardWires g;
  g.room = b.less_than_const(w.counter, layout.max_length);
  for (std::size_t j = 0; j < layout.max_length; ++j) g.is_pos.push_back(b.equal_const(w.counter, j));
  bool needs_terminators = false;
  for (const auto& r : model.rules) needs_terminators |= r.guard != AppendGuard::Always;
  g.always = g.room;
  g.no_terminator = g.room;
  g.exactly_one_terminator = g.room;
  if (needs_terminators) {
    std::vector<Ref> sat;
    std::vector<Ref> unsat;
    for (std::size_t j = 0; j < layout.max_length; ++j) {
      const Ref used = b.not_(b.less_than_const(w.counter, j + 1));
      sat.push_back(b.and_(used, b.equal_const(w.slots[j], model.sat_code)));
      unsat.push_back(b.and_(used, b.equal_const(w.slots[j], model.unsat_code)));
    }
    const Ref has_sat = b.or_all(sat);
    const Ref has_unsat = b.or_all(unsat);
    g.no_terminator = b.and_(g.room, b.not_(b.or_(has_sat, has_unsat)));
    g.exactly_one_terminator = b.and_(g.room, b.xor_(has_sat, has_unsat));
  }
  return g;
}

Ref guard_of(const GuardWires& g, AppendGuard kind) {
  switch (kind) {
    case AppendGuard::Always: return g.always;
    case AppendGuard::NoTerminator: return g.no_terminator;
    case AppendGuard::ExactlyOneTerminator: return g.exactly_one_terminator;
  }
  return g.always;
}

void check_model(const AppendModelSpec& model) {
  if (model.rules.empty()) throw ModelError("append model needs at least one action");
  if (model.denominator == 0) throw ModelError("append model denominator is zero");
  for (const auto& r : model.rules) {
    if (r.outcomes.empty()) throw ModelError("action '" + r.name + "' has no outcomes");
    std::uint64_t total = 0;
    std::set<std::uint32_t> codes;
    for (const auto& o : r.outcomes) {
      if (o.code >= model.layout.alphabet_size) throw ModelError("action '" + r.name + "' appends an unknown code");
      if (o.numerator == 0) throw ModelError("action '" + r.name + "' has a zero-probability outcome");
      if (!codes.insert(o.code).second) throw ModelError("action '" + r.name + "' repeats an outcome");
      total += o.numerator;
    }
    if (total != model.denominator) {
      throw ModelError("outcomes of action '" + r.name + "' sum to " + std::to_string(total) + "/" +
                       std::to_string(model.denominator));
    }
  }
  if (model.reward.num_inputs() != model.layout.state_width()) throw ModelError("reward circuit width mismatch");
}

Circuit transition_circuit(const AppendModelSpec& model, std::size_t action_width, std::size_t prob_width) {
  const auto& layout = model.layout;
  const std::size_t n = layout.state_width();
  CircuitBuilder b(2 * n + action_width);
  const SequenceWires cur = sequence_wires(b, layout, 0);
  const SequenceWires next = sequence_wires(b, layout, n);
  const Word action = b.inputs(2 * n, action_width);
  const GuardWires g = guard_wires(b, model, cur);

  std::vector<Ref> copy_terms;
  Word appended = b.constant_word(0, layout.element_width());
  for (std::size_t j = 0; j < layout.max_length; ++j) {
    copy_terms.push_back(b.or_(g.is_pos[j], b.equal(cur.slots[j], next.slots[j])));
    appended = b.or_word(appended, b.and_word(g.is_pos[j], next.slots[j]));
  }
  const Ref step_ok = b.and_(b.and_all(copy_terms), b.equal(next.counter, b.increment(cur.counter)));
  const Ref same = b.equal(b.inputs(0, n), b.inputs(n, n));
  const Word self_num = b.and_word(same, b.constant_word(model.denominator, prob_width));

  Word numerator = b.constant_word(0, prob_width);
  for (std::size_t k = 0; k < model.rules.size(); ++k) {
    const auto& rule = model.rules[k];
    Word append_num = b.constant_word(0, prob_width);
    for (const auto& o : rule.outcomes) {
      const Ref match = b.equal_const(appended, o.code);
      append_num = b.or_word(append_num, b.and_word(match, b.constant_word(o.numerator, prob_width)));
    }
    append_num = b.and_word(step_ok, append_num);
    const Word num = b.mux_word(guard_of(g, rule.guard), append_num, self_num);
    numerator = b.or_word(numerator, b.and_word(b.equal_const(action, k), num));
  }
  return b.build(model.name + "_t", numerator);
}

SuccessorCircuit successor_circuit(const AppendModelSpec& model, std::size_t k) {
  const auto& layout = model.layout;
  const auto& rule = model.rules[k];
  const std::size_t n = layout.state_width();
  const std::size_t branching = rule.outcomes.size();
  const std::size_t sw = index_width(branching);
  CircuitBuilder b(n + sw);
  const SequenceWires cur = sequence_wires(b, layout, 0);
  const Word slot = b.inputs(n, sw);
  const GuardWires g = guard_wires(b, model, cur);
  const Ref guard = guard_of(g, rule.guard);

  Word code = b.constant_word(0, layout.element_width());
  for (std::size_t o = 0; o < branching; ++o) {
    code = b.or_word(code, b.and_word(b.equal_const(slot, o), b.constant_word(rule.outcomes[o].code, layout.element_width())));
  }
  Word appended = b.increment(cur.counter);
  for (std::size_t j = 0; j < layout.max_length; ++j) {
    const Word e = b.mux_word(g.is_pos[j], code, cur.slots[j]);
    appended.insert(appended.end(), e.begin(), e.end());
  }
  const Word unchanged = b.inputs(0, n);
  const Ref valid = b.mux(guard, b.less_than_const(slot, branching), b.equal_const(slot, 0));
  std::vector<Ref> outputs{valid};
  const Word state = b.mux_word(guard, appended, unchanged);
  outputs.insert(outputs.end(), state.begin(), state.end());
  return {b.build(model.name + "_n_" + rule.name, outputs), branching};
}

}  // namespace

BoundedActionMdp build_append_mdp(const AppendModelSpec& model) {
  check_model(model);
  BoundedActionMdp m;
  SuccinctMdp& base = m.base;
  base.name = model.name;
  base.variables = model.layout.variable_names();
  base.initial_state = model.layout.encode({});
  for (const auto& r : model.rules) base.actions.push_back(r.name);
  base.prob_denominator = model.denominator;
  base.horizon = model.horizon;
  base.transition = transition_circuit(model, base.action_width(), value_width(model.denominator));
  base.reward = model.reward;
  for (std::size_t k = 0; k < model.rules.size(); ++k) m.successors.push_back(successor_circuit(model, k));
  return m;
}

}  // namespace smdp
