#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "smdp/circuit.hpp"

namespace smdp {

// Line-based ASCII netlist:
//
//   circuit <name>
//   inputs <k>
//   gate g<j> <KIND> <ref> [<ref>]
//   outputs <ref> <ref> ...
//
// KIND is one of AND OR NOT XOR CONST0 CONST1; refs are i<idx> or g<idx>.
// Gate ids must be strictly increasing and may only reference earlier gates.
// '#' starts a comment. Errors carry the 1-based line number.

Circuit parse_netlist(std::string_view text, const std::string& source = "<netlist>");

/// Canonical text: gates renumbered g0..g(k-1), one construct per line.
std::string serialize_netlist(const Circuit& c);

Circuit load_netlist(const std::filesystem::path& path);
void save_netlist(const Circuit& c, const std::filesystem::path& path);

}  // namespace smdp
