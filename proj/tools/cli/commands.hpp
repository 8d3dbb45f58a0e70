#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "report.hpp"
#include "smdp/limits.hpp"

namespace smdp::cli {

namespace fs = std::filesystem;

/// Bad flag combinations and missing inputs; exits with status 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCheckFailed = 2;

struct Common {
  Emit emit = Emit::Table;
  Limits limits;
  std::uint64_t seed = 0;
};

struct GenOptions {
  fs::path cnf;
  fs::path out;
  std::string mode = "compact";
  std::optional<std::size_t> split;
  std::string threshold = "1/2";
};

int gen_satnext(const GenOptions& o, const Common& c);
int gen_majsat(const GenOptions& o, const Common& c);
int gen_emajsat(const GenOptions& o, const Common& c);
int gen_unsatcons(const GenOptions& o, const Common& c);
int gen_forall(const GenOptions& o, const Common& c);

struct ModelOptions {
  std::optional<fs::path> instance;
  std::optional<fs::path> mdp;
  std::optional<fs::path> policy;
  std::optional<std::string> policy_name;
  std::optional<fs::path> valuefn;
  std::optional<std::size_t> horizon;
  std::optional<std::string> start;
  std::optional<std::size_t> steps;
  std::optional<std::string> action;
  std::optional<fs::path> out;
  std::optional<std::string> at_least;
  bool strict = false;
  bool all_states = false;
  bool table = false;
  bool exact = false;
  std::size_t samples = 10000;
};

int eval(const ModelOptions& o, const Common& c);
int eval_mc(const ModelOptions& o, const Common& c);
int value(const ModelOptions& o, const Common& c);
int check_consistency(const ModelOptions& o, const Common& c);
int extract_policy(const ModelOptions& o, const Common& c);
int solve(const ModelOptions& o, const Common& c);
int next_action(const ModelOptions& o, const Common& c);

struct CanonOptions {
  fs::path netlist;
  std::optional<fs::path> out;
  bool check = false;
};

int canon(const CanonOptions& o, const Common& c);

struct VerifyCliOptions {
  std::string suite;
  std::size_t n = 0;
  std::size_t cases = 0;
};

int verify(const VerifyCliOptions& o, const Common& c);

}  // namespace smdp::cli
