#include <gtest/gtest.h>

#include "smdp/circuit_builder.hpp"
#include "smdp/dnf.hpp"
#include "smdp/errors.hpp"
#include "smdp/netlist.hpp"
#include "smdp/random_models.hpp"

using namespace smdp;

namespace {

Circuit majority3() {
  CircuitBuilder b(3);
  const Ref x = b.input(0), y = b.input(1), z = b.input(2);
  const Ref m = b.or_(b.or_(b.and_(x, y), b.and_(x, z)), b.and_(y, z));
  return b.build("maj", {m});
}

}  // namespace

TEST(Circuit, RejectsForwardReferences) {
  std::vector<Gate> gates{{GateKind::And, {Ref::input(0), Ref::gate(1)}}, {GateKind::Not, {Ref::input(0), {}}}};
  EXPECT_THROW(Circuit("bad", 1, gates, {Ref::gate(0)}), CircuitError);
  EXPECT_THROW(Circuit("bad", 1, {}, {Ref::input(3)}), CircuitError);
}

TEST(Circuit, EvaluatesMajority) {
  const Circuit c = majority3();
  for (std::uint64_t v = 0; v < 8; ++v) {
    const auto in = BitVector::from_uint(v, 3);
    EXPECT_EQ(c.eval(in)[0], in.count() >= 2) << v;
  }
  EXPECT_THROW(c.eval(BitVector(2)), WidthError);
}

TEST(Circuit, BatchMatchesScalar) {
  Rng rng(7);
  const Circuit c = random_circuit(rng, 7, 30, 3);
  std::vector<BitVector> inputs;
  for (std::uint64_t v = 0; v < 128; ++v) inputs.push_back(BitVector::from_uint(v, 7));
  const auto batch = c.eval_batch(inputs);
  for (std::size_t k = 0; k < inputs.size(); ++k) EXPECT_EQ(batch[k], c.eval(inputs[k]));
}

TEST(CircuitBuilder, FoldsConstantsAndSharesStructure) {
  CircuitBuilder b(2);
  const Ref x = b.input(0);
  EXPECT_EQ(b.and_(x, b.constant(true)), x);
  EXPECT_TRUE(b.is_constant(b.and_(x, b.constant(false)), false));
  EXPECT_EQ(b.and_(x, b.input(1)), b.and_(b.input(1), x));
  EXPECT_EQ(b.not_(b.not_(x)), x);
  const Circuit c = b.build("c", {b.xor_(x, b.input(1))});
  EXPECT_EQ(c.size(), 1u);
}

TEST(CircuitBuilder, WordArithmetic) {
  CircuitBuilder b(3);
  const Word w = b.inputs(0, 3);
  const Word inc = b.increment(w);
  std::vector<Ref> outs(inc.begin(), inc.end());
  outs.push_back(b.less_than_const(w, 5));
  outs.push_back(b.equal_const(w, 6));
  const Circuit c = b.build("arith", outs);
  for (std::uint64_t v = 0; v < 8; ++v) {
    const auto out = c.eval(BitVector::from_uint(v, 3));
    EXPECT_EQ(out.to_uint(0, 3), (v + 1) % 8);
    EXPECT_EQ(out[3], v < 5);
    EXPECT_EQ(out[4], v == 6);
  }
}

TEST(CircuitBuilder, TableSynthesisMatchesTable) {
  const auto table = [](std::uint64_t v) -> std::uint64_t { return (v * 7 + 3) % 16; };
  const Circuit c = circuit_from_table("tbl", 5, 4, table);
  for (std::uint64_t v = 0; v < 32; ++v) EXPECT_EQ(c.eval(BitVector::from_uint(v, 5)).to_uint(), table(v));
}

TEST(CircuitBuilder, InstantiateInlinesSubcircuit) {
  const Circuit maj = majority3();
  CircuitBuilder b(3);
  const Word in = b.inputs(0, 3);
  const auto out = b.instantiate(maj, in);
  const Circuit c = b.build("wrapped", {b.not_(out[0])});
  for (std::uint64_t v = 0; v < 8; ++v) EXPECT_NE(c.eval(BitVector::from_uint(v, 3))[0], maj.eval(BitVector::from_uint(v, 3))[0]);
}

TEST(Equivalence, DetectsDifference) {
  CircuitBuilder b(2);
  const Circuit a = b.build("a", {b.and_(b.input(0), b.input(1))});
  CircuitBuilder b2(2);
  const Circuit o = b2.build("o", {b2.or_(b2.input(0), b2.input(1))});
  EXPECT_TRUE(equivalent(a, a, 8));
  EXPECT_FALSE(equivalent(a, o, 8));
}

TEST(Dnf, OneTermPerSatisfyingAssignment) {
  const Circuit c = majority3();
  const Circuit d = canonical_dnf(c);
  EXPECT_TRUE(equivalent(c, d, 8));
  EXPECT_EQ(count_dnf_terms(d, 0), 4u);
  CircuitBuilder b(2);
  const Circuit never = b.build("never", {b.and_(b.input(0), b.not_(b.input(0)))});
  EXPECT_EQ(count_dnf_terms(canonical_dnf(never), 0), 0u);
}

TEST(Dnf, RandomCircuitsStayWithinBound) {
  Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    const std::size_t n = 1 + k % 6;
    const Circuit c = random_circuit(rng, n, 25, 2);
    const Circuit d = canonical_dnf(c);
    ASSERT_TRUE(equivalent(c, d, 8));
    for (std::size_t j = 0; j < 2; ++j) EXPECT_LE(count_dnf_terms(d, j), std::size_t{1} << n);
  }
}

TEST(Netlist, RoundTripsText) {
  const Circuit c = majority3();
  const std::string text = serialize_netlist(c);
  const Circuit back = parse_netlist(text);
  EXPECT_EQ(back, c);
  EXPECT_EQ(serialize_netlist(back), text);
}

TEST(Netlist, ReportsLineNumbers) {
  const std::string bad = "circuit c\ninputs 2\ngate g0 AND i0 g4\noutputs g0\n";
  try {
    parse_netlist(bad, "bad.net");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("bad.net:3"), std::string::npos);
  }
  EXPECT_THROW(parse_netlist("circuit c\ninputs 1\ngate g0 NAND i0 i0\noutputs g0\n"), ParseError);
  EXPECT_THROW(parse_netlist("circuit c\ninputs 1\n"), ParseError);
}
