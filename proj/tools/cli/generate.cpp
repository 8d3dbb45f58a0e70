#include <iostream>

#include "commands.hpp"
#include "instance_dir.hpp"
#include "smdp/oracle.hpp"

namespace smdp::cli {
namespace {

Rational pow2(std::size_t k) { return Rational(mpz_class(1) << static_cast<mp_bitcnt_t>(k)); }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string x_bits(std::uint64_t x, std::size_t count) {
  std::string s;
  for (std::size_t i = 0; i < count; ++i) s += ((x >> i) & 1u) ? '1' : '0';
  return s;
}

std::size_t split_of(const GenOptions& o, const Cnf& f) {
  if (o.split) return *o.split;
  if (f.num_vars % 2 != 0) throw UsageError("the formula has an odd number of variables; pass --split");
  return f.num_vars / 2;
}

int finish(const ReductionInstance& inst, const Expected& expected, const GenOptions& o, const Common& c) {
  write_instance(inst, expected, o.out);
  Report r(c.emit);
  r.add({{"key", "dir"}, {"value", o.out.string()}});
  r.add({{"key", "kind"}, {"value", inst.kind}});
  for (const auto& [k, v] : expected) r.add({{"key", k}, {"value", v}});
  r.print(std::cout);
  return kExitOk;
}

}  // namespace

int gen_satnext(const GenOptions& o, const Common& c) {
  const Cnf f = load_dimacs(o.cnf);
  const auto mode = o.mode == "faithful" ? SatNextMode::Faithful : SatNextMode::Compact;
  const ReductionInstance inst = sat_to_next_action(f, mode);
  const std::uint64_t models = model_count(f, c.limits);
  const Rational total = pow2(f.num_vars);
  const Rational s_value = (total - models + Rational(models) * pow2(f.num_vars + 1)) / total;
  return finish(inst,
                {{"satisfiable", yes_no(models > 0)},
                 {"models", std::to_string(models)},
                 {"next_action", models > 0 ? "S" : "U"},
                 {"value_U", "2"},
                 {"value_S", to_string(s_value)},
                 {"mode", o.mode}},
                o, c);
}

int gen_majsat(const GenOptions& o, const Common& c) {
  const Cnf f = load_dimacs(o.cnf);
  const ReductionInstance inst = majsat_to_eval(f);
  const std::uint64_t models = model_count(f, c.limits);
  const Rational reward = Rational(models) / pow2(f.num_vars);
  return finish(inst,
                {{"models", std::to_string(models)},
                 {"variables", std::to_string(f.num_vars)},
                 {"reward", to_string(reward)},
                 {"majority", yes_no(reward > Rational(1, 2))}},
                o, c);
}

int gen_emajsat(const GenOptions& o, const Common& c) {
  const Cnf f = load_dimacs(o.cnf);
  const std::size_t x_count = split_of(o, f);
  const Rational k = parse_rational(o.threshold);
  const std::uint64_t best = best_x_assignment(f, x_count, c.limits);
  const ReductionInstance inst = emajsat_to_bounded_policy(f, x_count, k, best);
  const Rational fraction = best_extension_fraction(f, x_count, c.limits);
  return finish(inst,
                {{"best_fraction", to_string(fraction)},
                 {"best_x", x_bits(best, x_count)},
                 {"threshold", to_string(k)},
                 {"size_bound", std::to_string(*inst.size_bound)},
                 {"exists", yes_no(fraction >= k)}},
                o, c);
}

int gen_unsatcons(const GenOptions& o, const Common& c) {
  const Cnf f = load_dimacs(o.cnf);
  const ReductionInstance inst = unsat_to_consistency(f);
  const std::uint64_t models = model_count(f, c.limits);
  return finish(inst,
                {{"satisfiable", yes_no(models > 0)},
                 {"models", std::to_string(models)},
                 {"consistency", models == 0 ? "consistent" : "inconsistent"}},
                o, c);
}

int gen_forall(const GenOptions& o, const Common& c) {
  const Cnf f = load_dimacs(o.cnf);
  const std::size_t x_count = split_of(o, f);
  const std::uint64_t best = best_x_assignment(f, x_count, c.limits);
  const ReductionInstance inst = forallexists_to_valuefn(f, x_count, best);
  const bool holds = forall_exists_oracle(f, x_count, c.limits);
  return finish(inst,
                {{"forall_exists", yes_no(holds)},
                 {"best_x", x_bits(best, x_count)},
                 {"value_exists", yes_no(holds)},
                 {"value_attached", yes_no(inst.value.has_value())}},
                o, c);
}

}  // namespace smdp::cli
