#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace smdp {

struct Literal {
  std::size_t var = 0;  // zero-based
  bool negated = false;

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;

/// Conjunction of clauses over variables x_1..x_n (stored zero-based).
/// Assignments are bit masks: bit i holds the value of x_{i+1}.
struct Cnf {
  std::size_t num_vars = 0;
  std::vector<Clause> clauses;

  bool satisfied_by(std::uint64_t assignment) const noexcept;
  friend bool operator==(const Cnf&, const Cnf&) = default;
};

/// DIMACS text: optional 'c' comment lines, a `p cnf <vars> <clauses>`
/// header, then zero-terminated clauses. Throws ParseError with line numbers.
Cnf parse_dimacs(std::string_view text, const std::string& source = "<cnf>");
std::string serialize_dimacs(const Cnf& f);
Cnf load_dimacs(const std::filesystem::path& path);

std::string to_string(const Cnf& f);

}  // namespace smdp
