#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "smdp/cnf.hpp"
#include "smdp/limits.hpp"

namespace smdp {

struct VerifyRow {
  std::string id;
  std::string expected;
  std::string got;
  bool pass = false;
};

struct VerifyReport {
  std::string suite;
  std::vector<VerifyRow> rows;

  std::size_t passed() const noexcept;
  bool ok() const noexcept { return passed() == rows.size(); }
};

/// Zero means "suite default" for n and cases.
struct VerifyOptions {
  std::size_t n = 0;
  std::size_t cases = 0;
  std::uint64_t seed = 0;
  Limits limits;
};

/// thm1: next action at the clause-block state vs. SAT, plus the U and S branch values.
/// Exhaustive grid for up to min(n, 2) variables and `cases` random formulas when n >= 3.
VerifyReport verify_thm1(const VerifyOptions& options);
/// thm5: exact reward of the sequential policy vs. model_count / 2^n.
VerifyReport verify_thm5(const VerifyOptions& options);
/// thm6: bounded_policy_exists(z, k = 1/2) vs. the E-MAJSAT oracle, |X| = |Y| = 1 grid.
VerifyReport verify_thm6(const VerifyOptions& options);
/// thm8: consistency of E = 0 vs. unsatisfiability.
VerifyReport verify_thm8(const VerifyOptions& options);
/// thm9: existence of a reward-1 x-choice vs. the forall-exists oracle over a clause grid.
VerifyReport verify_thm9(const VerifyOptions& options);
/// normalization: validation, per-depth probability mass, evaluator vs. recursion.
VerifyReport verify_normalization(const VerifyOptions& options);
/// roundtrip: value -> extraction -> value, consistency witnesses, netlist text.
VerifyReport verify_roundtrip(const VerifyOptions& options);
/// dnf: canonical DNF equivalence and term bounds, explicit policy compilation.
VerifyReport verify_dnf(const VerifyOptions& options);

std::vector<std::string> suite_names();
/// Throws Error on an unknown suite name.
VerifyReport run_suite(const std::string& name, const VerifyOptions& options);

/// Every set of at most `max_clauses` distinct clauses, each a multiset of
/// `width` literals over `num_vars` variables.
std::vector<Cnf> clause_grid(std::size_t num_vars, std::size_t width, std::size_t min_clauses,
                             std::size_t max_clauses, bool multiset_literals);

}  // namespace smdp
