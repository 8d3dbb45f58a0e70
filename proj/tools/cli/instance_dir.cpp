#include "instance_dir.hpp"

#include <fstream>
#include <sstream>

#include "smdp/errors.hpp"
#include "smdp/manifest.hpp"

namespace smdp::cli {
namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t to_size(const std::string& text, const std::string& source, std::size_t line) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used);
    if (used == text.size()) return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  throw ParseError(source, line, "expected a non-negative integer, got '" + text + "'");
}

}  // namespace

const PolicyEntry* InstanceInfo::policy(const std::string& name) const {
  for (const auto& p : policies) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

void write_instance(const ReductionInstance& inst, const Expected& expected, const fs::path& dir) {
  fs::create_directories(dir);
  save_mdp(inst.mdp, dir, "mdp");
  write_file(dir / "formula.cnf", serialize_dimacs(inst.formula));

  std::ostringstream info;
  info << "kind " << inst.kind << '\n' << "mdp mdp.txt\n" << "horizon " << inst.horizon << '\n';
  if (inst.state) info << "state " << inst.state->to_string() << '\n';
  if (inst.steps_to_go) info << "steps_to_go " << *inst.steps_to_go << '\n';
  if (inst.action) info << "action " << inst.mdp.base.actions.at(*inst.action) << '\n';
  if (inst.size_bound) info << "size_bound " << *inst.size_bound << '\n';
  if (inst.reward_bound) info << "reward_bound " << to_string(*inst.reward_bound) << '\n';
  if (inst.value) {
    save_valuefn(*inst.value, inst.kind + "_value", dir, "valuefn");
    info << "valuefn valuefn.txt\n";
  }
  for (const auto& p : inst.policies) {
    const std::string stem = "policy_" + p.name;
    save_policy(p.policy, p.name, dir, stem);
    info << "policy " << p.name << ' ' << stem << ".txt horizon " << p.horizon;
    if (p.start) info << " start " << p.start->to_string();
    info << '\n';
  }
  for (const auto& note : inst.notes) info << "# " << note << '\n';
  write_file(dir / "instance.txt", info.str());

  std::ostringstream exp;
  exp << "# " << inst.oracle << '\n';
  for (const auto& [k, v] : expected) exp << k << ' ' << v << '\n';
  write_file(dir / "expected.txt", exp.str());
}

InstanceInfo read_instance(const fs::path& dir) {
  const fs::path path = dir / "instance.txt";
  const std::string source = path.string();
  std::istringstream in(read_file(path));
  InstanceInfo info;
  info.dir = dir;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (const auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    std::istringstream words(text);
    std::vector<std::string> w;
    for (std::string s; words >> s;) w.push_back(s);
    if (w.empty()) continue;
    auto need = [&](std::size_t count) {
      if (w.size() < count) throw ParseError(source, line, "'" + w[0] + "' needs " + std::to_string(count - 1) + " argument(s)");
    };
    const std::string& key = w[0];
    if (key == "kind") {
      need(2);
      info.kind = w[1];
    } else if (key == "mdp") {
      need(2);
      info.mdp = dir / w[1];
    } else if (key == "horizon") {
      need(2);
      info.horizon = to_size(w[1], source, line);
    } else if (key == "state") {
      need(2);
      info.state = BitVector::from_string(w[1]);
    } else if (key == "steps_to_go") {
      need(2);
      info.steps_to_go = to_size(w[1], source, line);
    } else if (key == "action") {
      need(2);
      info.action = w[1];
    } else if (key == "size_bound") {
      need(2);
      info.size_bound = to_size(w[1], source, line);
    } else if (key == "reward_bound") {
      need(2);
      info.reward_bound = parse_rational(w[1]);
    } else if (key == "valuefn") {
      need(2);
      info.valuefn = dir / w[1];
    } else if (key == "policy") {
      need(3);
      PolicyEntry p{w[1], dir / w[2], 0, std::nullopt};
      for (std::size_t k = 3; k + 1 < w.size(); k += 2) {
        if (w[k] == "horizon") {
          p.horizon = to_size(w[k + 1], source, line);
        } else if (w[k] == "start") {
          p.start = BitVector::from_string(w[k + 1]);
        } else {
          throw ParseError(source, line, "unknown policy attribute '" + w[k] + "'");
        }
      }
      info.policies.push_back(std::move(p));
    } else {
      throw ParseError(source, line, "unknown key '" + key + "'");
    }
  }
  if (info.mdp.empty()) throw ParseError(source, line, "missing 'mdp' line");
  return info;
}

Expected read_expected(const fs::path& dir) {
  std::istringstream in(read_file(dir / "expected.txt"));
  Expected out;
  for (std::string text; std::getline(in, text);) {
    if (text.empty() || text[0] == '#') continue;
    const auto space = text.find(' ');
    out.emplace_back(text.substr(0, space), space == std::string::npos ? "" : text.substr(space + 1));
  }
  return out;
}

}  // namespace smdp::cli
