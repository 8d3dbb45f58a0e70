#include "smdp/dnf.hpp"

#include <vector>

#include "smdp/circuit_builder.hpp"
#include "smdp/errors.hpp"

namespace smdp {

Circuit dnf_from_table(std::string name, std::size_t num_inputs, std::size_t num_outputs,
                       const std::function<std::uint64_t(std::uint64_t)>& table) {
  if (num_inputs > 24) throw LimitError("DNF canonicalization limited to 24 inputs");
  const std::uint64_t rows = std::uint64_t{1} << num_inputs;
  std::vector<std::uint64_t> values(rows);
  for (std::uint64_t r = 0; r < rows; ++r) values[r] = table(r);

  CircuitBuilder b(num_inputs);
  std::vector<Ref> positive(num_inputs), negative(num_inputs);
  for (std::size_t i = 0; i < num_inputs; ++i) {
    positive[i] = b.input(i);
    negative[i] = b.not_(positive[i]);
  }
  std::vector<Ref> outputs;
  std::vector<Ref> literals(num_inputs);
  for (std::size_t o = 0; o < num_outputs; ++o) {
    const std::size_t shift = num_outputs - 1 - o;
    Ref disjunction = b.constant(false);
    bool any = false;
    for (std::uint64_t r = 0; r < rows; ++r) {
      if (((values[r] >> shift) & 1u) == 0) continue;
      for (std::size_t i = 0; i < num_inputs; ++i) {
        literals[i] = ((r >> (num_inputs - 1 - i)) & 1u) ? positive[i] : negative[i];
      }
      const Ref term = b.and_all(literals);
      disjunction = any ? b.or_(disjunction, term) : term;
      any = true;
    }
    outputs.push_back(disjunction);
  }
  return b.build(std::move(name), outputs);
}

Circuit canonical_dnf(const Circuit& c) {
  const std::size_t n = c.num_inputs();
  if (n > 24) throw LimitError("DNF canonicalization limited to 24 inputs");
  const std::size_t m = c.num_outputs();
  if (m > 64) throw WidthError("DNF canonicalization limited to 64 outputs");
  const std::uint64_t rows = std::uint64_t{1} << n;
  std::vector<std::uint64_t> values(rows);
  std::vector<BitVector> batch;
  batch.reserve(std::min<std::uint64_t>(rows, 4096));
  for (std::uint64_t base = 0; base < rows; base += 4096) {
    batch.clear();
    const std::uint64_t end = std::min<std::uint64_t>(rows, base + 4096);
    for (std::uint64_t r = base; r < end; ++r) batch.push_back(BitVector::from_uint(r, n));
    const auto out = c.eval_batch(batch);
    for (std::uint64_t r = base; r < end; ++r) values[r] = out[r - base].to_uint(0, m);
  }
  return dnf_from_table(c.name(), n, m, [&](std::uint64_t r) { return values[r]; });
}

std::size_t count_dnf_terms(const Circuit& c, std::size_t output) {
  if (output >= c.num_outputs()) throw WidthError("output index out of range");
  std::size_t terms = 0;
  std::vector<Ref> stack{c.outputs()[output]};
  while (!stack.empty()) {
    const Ref r = stack.back();
    stack.pop_back();
    if (r.is_gate()) {
      const Gate& g = c.gates()[r.index];
      if (g.kind == GateKind::Or) {
        stack.push_back(g.operands[0]);
        stack.push_back(g.operands[1]);
        continue;
      }
      if (g.kind == GateKind::Const0) continue;
    }
    ++terms;
  }
  return terms;
}

}  // namespace smdp
