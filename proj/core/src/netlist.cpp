#include "smdp/netlist.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "smdp/errors.hpp"

namespace smdp {
namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) words.push_back(line.substr(start, i - start));
  }
  return words;
}

std::optional<std::uint64_t> parse_index(std::string_view digits) {
  if (digits.empty()) return std::nullopt;
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
  return value;
}

std::optional<GateKind> parse_kind(std::string_view word) {
  if (word == "AND") return GateKind::And;
  if (word == "OR") return GateKind::Or;
  if (word == "NOT") return GateKind::Not;
  if (word == "XOR") return GateKind::Xor;
  if (word == "CONST0") return GateKind::Const0;
  if (word == "CONST1") return GateKind::Const1;
  return std::nullopt;
}

std::string ref_text(Ref r) {
  return (r.is_input() ? "i" : "g") + std::to_string(r.index);
}

}  // namespace

Circuit parse_netlist(std::string_view text, const std::string& source) {
  std::string name;
  std::optional<std::size_t> num_inputs;
  std::vector<Gate> gates;
  std::unordered_map<std::uint64_t, std::uint32_t> gate_position;
  std::optional<std::uint64_t> last_gate_id;
  std::optional<std::vector<Ref>> outputs;
  bool have_header = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto words = split_words(line);
    if (words.empty()) {
      if (end == text.size()) break;
      continue;
    }
    auto fail = [&](const std::string& msg) -> ParseError { return ParseError(source, line_no, msg); };

    auto parse_ref = [&](std::string_view word) -> Ref {
      if (word.size() < 2 || (word[0] != 'i' && word[0] != 'g')) {
        throw fail("malformed reference '" + std::string(word) + "'");
      }
      const auto idx = parse_index(word.substr(1));
      if (!idx) throw fail("malformed reference '" + std::string(word) + "'");
      if (word[0] == 'i') {
        if (*idx >= *num_inputs) throw fail("input reference '" + std::string(word) + "' out of range");
        return Ref::input(*idx);
      }
      const auto it = gate_position.find(*idx);
      if (it == gate_position.end()) {
        throw fail("forward or undefined gate reference '" + std::string(word) + "'");
      }
      return Ref::gate(it->second);
    };

    const std::string_view keyword = words[0];
    if (keyword == "circuit") {
      if (have_header) throw fail("duplicate 'circuit' line");
      if (words.size() != 2) throw fail("expected 'circuit <name>'");
      name = std::string(words[1]);
      have_header = true;
    } else if (keyword == "inputs") {
      if (!have_header) throw fail("'inputs' before 'circuit'");
      if (num_inputs) throw fail("duplicate 'inputs' line");
      if (words.size() != 2) throw fail("expected 'inputs <k>'");
      const auto k = parse_index(words[1]);
      if (!k) throw fail("malformed input count '" + std::string(words[1]) + "'");
      num_inputs = static_cast<std::size_t>(*k);
    } else if (keyword == "gate") {
      if (!num_inputs) throw fail("'gate' before 'inputs'");
      if (outputs) throw fail("'gate' after 'outputs'");
      if (words.size() < 3) throw fail("expected 'gate g<j> <KIND> <ref> [<ref>]'");
      if (words[1].size() < 2 || words[1][0] != 'g') throw fail("malformed gate id '" + std::string(words[1]) + "'");
      const auto id = parse_index(words[1].substr(1));
      if (!id) throw fail("malformed gate id '" + std::string(words[1]) + "'");
      if (last_gate_id && *id <= *last_gate_id) throw fail("gate ids must be strictly increasing");
      const auto kind = parse_kind(words[2]);
      if (!kind) throw fail("unknown gate kind '" + std::string(words[2]) + "'");
      const std::size_t expected = arity(*kind);
      if (words.size() - 3 != expected) {
        throw fail(std::string(to_string(*kind)) + " takes " + std::to_string(expected) +
                   " operand(s), got " + std::to_string(words.size() - 3));
      }
      Gate g{*kind, {}};
      for (std::size_t k = 0; k < expected; ++k) g.operands[k] = parse_ref(words[3 + k]);
      gate_position.emplace(*id, static_cast<std::uint32_t>(gates.size()));
      gates.push_back(g);
      last_gate_id = *id;
    } else if (keyword == "outputs") {
      if (!num_inputs) throw fail("'outputs' before 'inputs'");
      if (outputs) throw fail("duplicate 'outputs' line");
      std::vector<Ref> refs;
      for (std::size_t k = 1; k < words.size(); ++k) {
        try {
          refs.push_back(parse_ref(words[k]));
        } catch (const ParseError&) {
          throw fail("bad output reference '" + std::string(words[k]) + "'");
        }
      }
      outputs = std::move(refs);
    } else {
      throw fail("unknown construct '" + std::string(keyword) + "'");
    }
    if (end == text.size()) break;
  }
  if (!have_header) throw ParseError(source, line_no, "missing 'circuit' line");
  if (!num_inputs) throw ParseError(source, line_no, "missing 'inputs' line");
  if (!outputs) throw ParseError(source, line_no, "missing 'outputs' line");
  return Circuit(std::move(name), *num_inputs, std::move(gates), std::move(*outputs));
}

std::string serialize_netlist(const Circuit& c) {
  std::ostringstream out;
  out << "circuit " << (c.name().empty() ? "unnamed" : c.name()) << '\n';
  out << "inputs " << c.num_inputs() << '\n';
  for (std::size_t j = 0; j < c.gates().size(); ++j) {
    const Gate& g = c.gates()[j];
    out << "gate g" << j << ' ' << to_string(g.kind);
    for (std::size_t k = 0; k < arity(g.kind); ++k) out << ' ' << ref_text(g.operands[k]);
    out << '\n';
  }
  out << "outputs";
  for (Ref r : c.outputs()) out << ' ' << ref_text(r);
  out << '\n';
  return out.str();
}

Circuit load_netlist(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open netlist '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_netlist(buf.str(), path.string());
}

void save_netlist(const Circuit& c, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write netlist '" + path.string() + "'");
  out << serialize_netlist(c);
}

}  // namespace smdp
