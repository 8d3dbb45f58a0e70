#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

#include "smdp/circuit.hpp"

namespace smdp {

/// Rewrites every output as a disjunction of full-literal terms, one term per
/// satisfying assignment, in increasing assignment order (input 0 most
/// significant). An unsatisfiable output becomes CONST0; with zero inputs a
/// satisfiable output becomes CONST1. NOT gates on inputs are shared across
/// terms and outputs.
///
/// Per output, the term count equals the number of satisfying assignments and
/// is at most 2^n, so the result has at most m·2^n terms and at most
/// n + m·2^n·n gates.
Circuit canonical_dnf(const Circuit& c);

/// Same construction driven by an explicit truth table (see circuit_from_table
/// for the table convention).
Circuit dnf_from_table(std::string name, std::size_t num_inputs, std::size_t num_outputs,
                       const std::function<std::uint64_t(std::uint64_t)>& table);

/// Counts the disjuncts of a DNF-shaped output by walking its OR tree.
/// CONST0 counts as zero terms.
std::size_t count_dnf_terms(const Circuit& c, std::size_t output);

}  // namespace smdp
