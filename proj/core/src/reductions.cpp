#include "smdp/reductions.hpp"

#include "smdp/circuit_builder.hpp"
#include "smdp/errors.hpp"
#include "smdp/explicit_mdp.hpp"

namespace smdp {
namespace {

Ref formula_wire(CircuitBuilder& b, const Cnf& f, const std::vector<Ref>& value) {
  std::vector<Ref> clauses;
  clauses.reserve(f.clauses.size());
  for (const auto& clause : f.clauses) {
    std::vector<Ref> lits;
    for (const auto& lit : clause) lits.push_back(lit.negated ? b.not_(value.at(lit.var)) : value.at(lit.var));
    clauses.push_back(b.or_all(lits));
  }
  return b.and_all(clauses);
}

// Reward word of width w with bit k of value v asserted when `on` holds.
void set_reward_bit(CircuitBuilder& b, std::vector<Ref>& word, std::size_t power, Ref on) {
  const std::size_t idx = word.size() - 1 - power;
  word[idx] = b.or_(word[idx], on);
}

void check_vars(const Cnf& f) {
  if (f.num_vars == 0) throw ReductionError("the formula needs at least one variable");
  if (f.num_vars > 30) throw ReductionError("formulas above 30 variables are not supported");
  for (const auto& clause : f.clauses) {
    for (const auto& lit : clause) {
      if (lit.var >= f.num_vars) throw ReductionError("literal refers to an undeclared variable");
    }
  }
}

AppendRule literal_rule(const std::string& name, std::size_t var, std::uint64_t half) {
  return {name, {{literal_code({var, false}), half}, {literal_code({var, true}), half}}, AppendGuard::Always};
}

// Sequences x_1..x_n, y_1..y_n (positions fixed) whose literals satisfy Q.
BoundedActionMdp xy_mdp(const Cnf& f, std::size_t n, const std::string& name, SequenceLayout& layout) {
  layout = {4 * n, 2 * n};
  CircuitBuilder b(layout.state_width());
  const auto w = sequence_wires(b, layout);
  std::vector<Ref> ok{b.equal_const(w.counter, 2 * n)};
  std::vector<Ref> value;
  for (std::size_t j = 0; j < 2 * n; ++j) {
    const Ref pos = b.equal_const(w.slots[j], literal_code({j, false}));
    const Ref neg = b.equal_const(w.slots[j], literal_code({j, true}));
    ok.push_back(b.or_(pos, neg));
    value.push_back(pos);
  }
  ok.push_back(formula_wire(b, f, value));
  const Ref r = b.and_all(ok);

  AppendModelSpec append;
  append.name = name;
  append.layout = layout;
  append.denominator = 2;
  for (std::size_t i = 0; i < n; ++i) append.rules.push_back(literal_rule("a" + std::to_string(i + 1), n + i, 1));
  for (std::size_t i = 0; i < n; ++i) {
    append.rules.push_back({"b" + std::to_string(i + 1), {{literal_code({i, false}), 2}}, AppendGuard::Always});
  }
  for (std::size_t i = 0; i < n; ++i) {
    append.rules.push_back({"c" + std::to_string(i + 1), {{literal_code({i, true}), 2}}, AppendGuard::Always});
  }
  append.reward = b.build(name + "_r", {b.constant(false), r});
  append.horizon = 2 * n;
  return build_append_mdp(append);
}

std::vector<std::size_t> xy_schedule(std::size_t n, std::uint64_t x) {
  std::vector<std::size_t> by_length;
  for (std::size_t i = 0; i < n; ++i) by_length.push_back(((x >> i) & 1u) ? n + i : 2 * n + i);
  for (std::size_t i = 0; i < n; ++i) by_length.push_back(i);
  return by_length;
}

void check_split(const Cnf& f, std::size_t x_count) {
  check_vars(f);
  if (x_count == 0 || f.num_vars != 2 * x_count) {
    throw ReductionError("expected |X| = |Y|: " + std::to_string(f.num_vars) + " variables with |X| = " +
                         std::to_string(x_count));
  }
  if (x_count > 8) throw ReductionError("|X| above 8 is not supported");
}

}  // namespace

std::uint32_t literal_code(const Literal& lit) noexcept {
  return static_cast<std::uint32_t>(2 * lit.var + (lit.negated ? 1 : 0));
}

StationaryPolicy length_policy(const SequenceLayout& layout, const std::vector<std::size_t>& by_length,
                               std::size_t action_count, const std::string& name) {
  if (by_length.empty()) throw PolicyError("length policy needs at least one entry");
  const std::size_t aw = index_width(action_count);
  CircuitBuilder b(layout.state_width());
  const auto w = sequence_wires(b, layout);
  std::vector<Ref> out(aw, b.constant(false));
  auto assign = [&](Ref when, std::size_t action) {
    if (action >= action_count) throw PolicyError("length policy uses an unknown action");
    for (std::size_t k = 0; k < aw; ++k) {
      if ((action >> (aw - 1 - k)) & 1u) out[k] = b.or_(out[k], when);
    }
  };
  for (std::size_t len = 0; len + 1 < by_length.size(); ++len) assign(b.equal_const(w.counter, len), by_length[len]);
  assign(b.not_(b.less_than_const(w.counter, by_length.size() - 1)), by_length.back());
  return {b.build(name, out), action_count};
}

StationaryPolicy xy_policy(const SequenceLayout& layout, std::size_t x_count, std::uint64_t x) {
  return length_policy(layout, xy_schedule(x_count, x), 3 * x_count, "reference");
}

ReductionInstance sat_to_next_action(const Cnf& f, SatNextMode mode) {
  check_vars(f);
  for (const auto& clause : f.clauses) {
    if (clause.size() != 3) throw ReductionError("every clause must have exactly three literals");
  }
  const std::size_t n = f.num_vars;
  std::vector<Clause> block = f.clauses;
  std::size_t m = block.size();
  ReductionInstance inst;
  inst.kind = "satnext";
  inst.formula = f;
  if (mode == SatNextMode::Faithful) {
    m = 8 * n * n * n;
    if (block.size() > m) throw ReductionError("more clauses than the faithful block holds");
    const Clause pad = block.empty() ? Clause{{0, false}, {0, true}, {0, false}} : block.back();
    while (block.size() < m) block.push_back(pad);
    inst.notes.push_back("faithful block: m = (2n)^3 clauses, padded with a repeated clause");
  } else {
    inst.notes.push_back("compact block: m = number of clauses");
  }
  const std::uint32_t sat = static_cast<std::uint32_t>(2 * n);
  const std::uint32_t unsat = sat + 1;
  SequenceLayout layout{2 * n + 2, 3 * m + n + 1};
  const std::size_t horizon = layout.max_length;

  CircuitBuilder b(layout.state_width());
  const auto w = sequence_wires(b, layout);
  std::vector<Ref> ok{b.equal_const(w.counter, 3 * m + 1 + n)};
  for (std::size_t j = 0; j < 3 * m; ++j) ok.push_back(b.less_than_const(w.slots[j], 2 * n));
  std::vector<Ref> model;
  for (std::size_t i = 0; i < n; ++i) {
    const Word& e = w.slots[3 * m + 1 + i];
    const Ref pos = b.equal_const(e, literal_code({i, false}));
    ok.push_back(b.or_(pos, b.equal_const(e, literal_code({i, true}))));
    model.push_back(pos);
  }
  const Ref well_formed = b.and_all(ok);
  const Ref is_sat = b.equal_const(w.slots[3 * m], sat);
  const Ref is_unsat = b.equal_const(w.slots[3 * m], unsat);
  // The block literal at slot j is true under the tail model.
  auto literal_true = [&](const Word& e) {
    std::vector<Ref> cases;
    for (std::size_t i = 0; i < n; ++i) {
      cases.push_back(b.and_(b.equal_const(e, literal_code({i, false})), model[i]));
      cases.push_back(b.and_(b.equal_const(e, literal_code({i, true})), b.not_(model[i])));
    }
    return b.or_all(cases);
  };
  std::vector<Ref> clause_ok;
  for (std::size_t c = 0; c < m; ++c) {
    const std::vector<Ref> lits{literal_true(w.slots[3 * c]), literal_true(w.slots[3 * c + 1]),
                                literal_true(w.slots[3 * c + 2])};
    clause_ok.push_back(b.or_all(lits));
  }
  const Ref satisfied = b.and_all(clause_ok);
  std::vector<Ref> word(n + 3, b.constant(false));
  set_reward_bit(b, word, 1, b.and_(well_formed, is_unsat));
  set_reward_bit(b, word, n + 1, b.and_(well_formed, b.and_(is_sat, satisfied)));
  set_reward_bit(b, word, 0, b.and_(well_formed, b.and_(is_sat, b.not_(satisfied))));

  AppendModelSpec append;
  append.name = "satnext";
  append.layout = layout;
  append.denominator = 2 * n;
  append.sat_code = sat;
  append.unsat_code = unsat;
  AppendRule a_rule{"A", {}, AppendGuard::NoTerminator};
  for (std::uint32_t code = 0; code < 2 * n; ++code) a_rule.outcomes.push_back({code, 1});
  append.rules.push_back(a_rule);
  append.rules.push_back({"S", {{sat, 2 * n}}, AppendGuard::Always});
  append.rules.push_back({"U", {{unsat, 2 * n}}, AppendGuard::Always});
  for (std::size_t i = 0; i < n; ++i) {
    append.rules.push_back({"a" + std::to_string(i + 1),
                          {{literal_code({i, false}), n}, {literal_code({i, true}), n}},
                          AppendGuard::ExactlyOneTerminator});
  }
  append.reward = b.build("satnext_r", word);
  append.horizon = horizon;

  inst.mdp = build_append_mdp(append);
  inst.layout = layout;
  inst.horizon = horizon;
  std::vector<std::uint32_t> seq;
  for (const auto& clause : block) {
    for (const auto& lit : clause) seq.push_back(literal_code(lit));
  }
  inst.state = layout.encode(seq);
  inst.steps_to_go = horizon - seq.size();
  inst.action = 1;
  const std::size_t actions = inst.mdp.base.actions.size();
  for (const std::size_t choice : {std::size_t{2}, std::size_t{1}}) {
    std::vector<std::size_t> by_length(3 * m + n + 1, 0);
    by_length[3 * m] = choice;
    for (std::size_t i = 1; i <= n; ++i) by_length[3 * m + i] = 2 + i;
    const std::string name = choice == 1 ? "S" : "U";
    inst.policies.push_back({name, length_policy(layout, by_length, actions, "sub_" + name), inst.state, n + 1});
  }
  inst.oracle = "S is the optimal next action at the clause-block state iff the formula is satisfiable";
  return inst;
}

ReductionInstance majsat_to_eval(const Cnf& f) {
  check_vars(f);
  const std::size_t n = f.num_vars;
  SequenceLayout layout{2 * n, n};
  CircuitBuilder b(layout.state_width());
  const auto w = sequence_wires(b, layout);
  std::vector<Ref> ok{b.equal_const(w.counter, n)};
  std::vector<Ref> value;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Ref> mentions;
    std::vector<Ref> positive;
    for (std::size_t j = 0; j < n; ++j) {
      const Ref pos = b.equal_const(w.slots[j], literal_code({i, false}));
      mentions.push_back(pos);
      mentions.push_back(b.equal_const(w.slots[j], literal_code({i, true})));
      positive.push_back(pos);
    }
    ok.push_back(b.exactly_one(mentions));
    value.push_back(b.or_all(positive));
  }
  ok.push_back(formula_wire(b, f, value));

  AppendModelSpec append;
  append.name = "majsat";
  append.layout = layout;
  append.denominator = 2;
  for (std::size_t i = 0; i < n; ++i) append.rules.push_back(literal_rule("a" + std::to_string(i + 1), i, 1));
  append.reward = b.build("majsat_r", {b.constant(false), b.and_all(ok)});
  append.horizon = n;

  ReductionInstance inst;
  inst.kind = "majsat";
  inst.formula = f;
  inst.mdp = build_append_mdp(append);
  inst.layout = layout;
  inst.horizon = n;
  std::vector<std::size_t> by_length(n);
  for (std::size_t i = 0; i < n; ++i) by_length[i] = i;
  inst.policies.push_back({"sequential", length_policy(layout, by_length, n, "sequential"), std::nullopt, n});
  inst.reward_bound = Rational(1, 2);
  inst.notes.push_back("horizon T = n: the policy needs n appends from the empty sequence");
  inst.oracle = "expected reward equals model_count / 2^n";
  return inst;
}

ReductionInstance emajsat_to_bounded_policy(const Cnf& f, std::size_t x_count, const Rational& threshold,
                                            std::uint64_t reference_x) {
  check_split(f, x_count);
  const std::size_t n = x_count;
  ReductionInstance inst;
  inst.kind = "emajsat";
  inst.formula = f;
  SequenceLayout layout;
  inst.mdp = xy_mdp(f, n, "emajsat", layout);
  inst.layout = layout;
  inst.horizon = 2 * n;
  std::size_t z = 0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    z = std::max(z, xy_policy(layout, n, x).circuit.size());
  }
  inst.policies.push_back({"reference", xy_policy(layout, n, reference_x), std::nullopt, 2 * n});
  inst.size_bound = z;
  inst.reward_bound = threshold;
  inst.oracle = "a policy of size <= z with reward >= k exists iff some X-assignment has at least a k fraction "
                "of satisfying Y-extensions";
  return inst;
}

ReductionInstance unsat_to_consistency(const Cnf& f) {
  check_vars(f);
  const std::size_t n = f.num_vars;
  ReductionInstance inst;
  inst.kind = "unsatcons";
  inst.formula = f;
  SuccinctMdp& m = inst.mdp.base;
  m.name = "unsatcons";
  for (std::size_t i = 0; i < n; ++i) m.variables.push_back("x" + std::to_string(i + 1));
  m.initial_state = BitVector(n);
  m.actions = {"flip"};
  m.prob_denominator = n;
  m.horizon = n;
  {
    CircuitBuilder b(2 * n + 1);
    std::vector<Ref> diff;
    for (std::size_t i = 0; i < n; ++i) diff.push_back(b.xor_(b.input(i), b.input(n + i)));
    m.transition = b.build("unsatcons_t", {b.exactly_one(diff)});
  }
  {
    CircuitBuilder b(n);
    std::vector<Ref> value;
    for (std::size_t i = 0; i < n; ++i) value.push_back(b.input(i));
    m.reward = b.build("unsatcons_r", {b.constant(false), formula_wire(b, f, value)});
  }
  {
    const std::size_t sw = index_width(n);
    CircuitBuilder b(n + sw);
    const Word slot = b.inputs(n, sw);
    std::vector<Ref> out{b.less_than_const(slot, n)};
    for (std::size_t i = 0; i < n; ++i) out.push_back(b.xor_(b.input(i), b.equal_const(slot, i)));
    inst.mdp.successors.push_back({b.build("unsatcons_n_flip", out), n});
  }
  inst.horizon = n;
  {
    const std::size_t tw = index_width(n + 1);
    CircuitBuilder b(n + tw);
    inst.value = ValueCircuit{b.build("zero", {b.constant(false)}), n, 1};
  }
  inst.oracle = "E = 0 is consistent iff the formula has no model";
  return inst;
}

ReductionInstance forallexists_to_valuefn(const Cnf& f, std::size_t x_count, std::uint64_t reference_x,
                                          std::size_t max_value_vars) {
  check_split(f, x_count);
  const std::size_t n = x_count;
  ReductionInstance inst;
  inst.kind = "forall";
  inst.formula = f;
  SequenceLayout layout;
  inst.mdp = xy_mdp(f, n, "forall", layout);
  inst.layout = layout;
  inst.horizon = 2 * n;
  const StationaryPolicy reference = xy_policy(layout, n, reference_x);
  inst.policies.push_back({"reference", reference, std::nullopt, 2 * n});
  inst.reward_bound = Rational(1);
  if (layout.state_width() <= max_value_vars) {
    const ExplicitMdp all = expand_all(inst.mdp, inst.horizon);
    const ValueTable table = value_of_policy(all, reference);
    inst.value = value_circuit_from_table(table, inst.horizon, "reference_value");
    inst.size_bound = inst.value->circuit.size();
  }
  inst.oracle = "a consistent value function with E(s0, T) >= 1 exists iff some X-assignment has only "
                "satisfying Y-extensions";
  return inst;
}

}  // namespace smdp
