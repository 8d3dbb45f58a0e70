#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "smdp/reductions.hpp"

namespace smdp::cli {

// Instance directories hold mdp.txt and its netlists, one policy_<name>.txt
// per companion policy, an optional valuefn.txt, formula.cnf, and two
// key/value files: instance.txt (what the generator built) and
// expected.txt (what the brute-force oracle says the answer is).

struct PolicyEntry {
  std::string name;
  std::filesystem::path file;
  std::size_t horizon = 0;
  std::optional<BitVector> start;
};

struct InstanceInfo {
  std::filesystem::path dir;
  std::string kind;
  std::filesystem::path mdp;
  std::optional<std::size_t> horizon;
  std::optional<BitVector> state;
  std::optional<std::size_t> steps_to_go;
  std::optional<std::string> action;
  std::optional<std::size_t> size_bound;
  std::optional<Rational> reward_bound;
  std::optional<std::filesystem::path> valuefn;
  std::vector<PolicyEntry> policies;

  const PolicyEntry* policy(const std::string& name) const;
};

using Expected = std::vector<std::pair<std::string, std::string>>;

void write_instance(const ReductionInstance& inst, const Expected& expected, const std::filesystem::path& dir);

/// Reads instance.txt from `dir`. Throws ParseError on malformed lines.
InstanceInfo read_instance(const std::filesystem::path& dir);

/// Reads expected.txt as ordered key/value pairs.
Expected read_expected(const std::filesystem::path& dir);

}  // namespace smdp::cli
