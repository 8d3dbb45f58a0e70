#pragma once

#include <filesystem>
#include <string>

#include "smdp/mdp.hpp"
#include "smdp/policy.hpp"
#include "smdp/value_function.hpp"

namespace smdp {

// Manifests are line-based `key value...` files; '#' starts a comment.
// Netlist paths are resolved relative to the manifest's directory.
//
//   mdp <name> / vars <v1> ... / init <bits> / actions <a1> ... /
//   prob_denominator <D> / prob_width <bits> / reward_width <w> /
//   transition <file> / reward <file> / [successor <action> <file> branching <B>] /
//   [horizon <T>]
//
//   policy <name> / kind stationary|history / actions <count> / [horizon <T>] /
//   circuit <file>
//
//   valuefn <name> / horizon <T> / value_width <p> / value_denominator <Dv> /
//   circuit <file>

/// A BoundedActionMdp when successor lines are present, a SuccinctMdp otherwise.
AnyMdp load_mdp(const std::filesystem::path& manifest);

/// Writes `<stem>.txt` plus netlists `<stem>_transition.net`, `<stem>_reward.net`
/// and `<stem>_successor_<i>.net` into `dir`.
void save_mdp(MdpView m, const std::filesystem::path& dir, const std::string& stem = "mdp");

struct NamedPolicyFile {
  std::string name;
  Policy policy;
};

NamedPolicyFile load_policy(const std::filesystem::path& manifest);
void save_policy(const Policy& p, const std::string& name, const std::filesystem::path& dir,
                 const std::string& stem);

struct NamedValueCircuit {
  std::string name;
  ValueCircuit value;
};

NamedValueCircuit load_valuefn(const std::filesystem::path& manifest);
void save_valuefn(const ValueCircuit& e, const std::string& name, const std::filesystem::path& dir,
                  const std::string& stem);

}  // namespace smdp
