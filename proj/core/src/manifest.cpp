#include "smdp/manifest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "smdp/errors.hpp"
#include "smdp/netlist.hpp"

namespace smdp {
namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> words;
};

class Manifest {
 public:
  explicit Manifest(const std::filesystem::path& path) : path_(path), source_(path.string()) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open manifest '" + source_ + "'");
    std::string text;
    std::size_t number = 0;
    while (std::getline(in, text)) {
      ++number;
      if (const auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
      std::istringstream words(text);
      Line line{number, {}};
      for (std::string w; words >> w;) line.words.push_back(w);
      if (!line.words.empty()) lines_.push_back(std::move(line));
    }
    last_line_ = number;
  }

  const std::vector<Line>& lines() const { return lines_; }

  ParseError error(std::size_t line, const std::string& message) const {
    return ParseError(source_, line, message);
  }
  ParseError error(const std::string& message) const { return ParseError(source_, last_line_, message); }

  std::uint64_t number(const Line& line, std::size_t k) const {
    if (k >= line.words.size()) throw error(line.number, "missing number");
    const std::string& w = line.words[k];
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc{} || ptr != w.data() + w.size()) throw error(line.number, "'" + w + "' is not a number");
    return v;
  }

  void arity(const Line& line, std::size_t expected) const {
    if (line.words.size() != expected) {
      throw error(line.number, "'" + line.words[0] + "' takes " + std::to_string(expected - 1) + " argument(s)");
    }
  }

  Circuit circuit(const Line& line, std::size_t k) const {
    if (k >= line.words.size()) throw error(line.number, "missing netlist path");
    const auto file = path_.parent_path() / line.words[k];
    try {
      return load_netlist(file);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw error(line.number, e.what());
    }
  }

 private:
  std::filesystem::path path_;
  std::string source_;
  std::vector<Line> lines_;
  std::size_t last_line_ = 0;
};

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

AnyMdp load_mdp(const std::filesystem::path& path) {
  const Manifest mf(path);
  SuccinctMdp m;
  std::optional<std::uint64_t> prob_width;
  std::optional<std::uint64_t> reward_width;
  bool have_name = false, have_t = false, have_r = false, have_init = false, have_d = false;
  std::size_t init_line = 0;
  std::string init_bits;
  struct PendingSuccessor {
    std::size_t line;
    std::string action;
    SuccessorCircuit circuit;
  };
  std::vector<PendingSuccessor> pending;
  std::size_t prob_line = 0, reward_line = 0;

  for (const auto& line : mf.lines()) {
    const std::string& key = line.words[0];
    if (key == "mdp") {
      mf.arity(line, 2);
      m.name = line.words[1];
      have_name = true;
    } else if (key == "vars") {
      m.variables.assign(line.words.begin() + 1, line.words.end());
    } else if (key == "init") {
      mf.arity(line, 2);
      init_bits = line.words[1];
      init_line = line.number;
      have_init = true;
    } else if (key == "actions") {
      if (line.words.size() < 2) throw mf.error(line.number, "at least one action is required");
      m.actions.assign(line.words.begin() + 1, line.words.end());
    } else if (key == "prob_denominator") {
      mf.arity(line, 2);
      m.prob_denominator = mf.number(line, 1);
      if (m.prob_denominator == 0) throw mf.error(line.number, "denominator must be positive");
      have_d = true;
    } else if (key == "prob_width") {
      mf.arity(line, 2);
      prob_width = mf.number(line, 1);
      prob_line = line.number;
    } else if (key == "reward_width") {
      mf.arity(line, 2);
      reward_width = mf.number(line, 1);
      reward_line = line.number;
    } else if (key == "transition") {
      mf.arity(line, 2);
      m.transition = mf.circuit(line, 1);
      have_t = true;
    } else if (key == "reward") {
      mf.arity(line, 2);
      m.reward = mf.circuit(line, 1);
      have_r = true;
    } else if (key == "successor") {
      if (line.words.size() != 5 || line.words[3] != "branching") {
        throw mf.error(line.number, "expected 'successor <action> <file> branching <B>'");
      }
      const std::uint64_t b = mf.number(line, 4);
      if (b == 0) throw mf.error(line.number, "branching must be positive");
      pending.push_back({line.number, line.words[1], {mf.circuit(line, 2), static_cast<std::size_t>(b)}});
    } else if (key == "horizon") {
      mf.arity(line, 2);
      m.horizon = static_cast<std::size_t>(mf.number(line, 1));
    } else {
      throw mf.error(line.number, "unknown key '" + key + "'");
    }
  }
  if (!have_name) throw mf.error("missing 'mdp' line");
  if (m.actions.empty()) throw mf.error("missing 'actions' line");
  if (!have_d) throw mf.error("missing 'prob_denominator' line");
  if (!have_t) throw mf.error("missing 'transition' line");
  if (!have_r) throw mf.error("missing 'reward' line");
  if (!have_init) throw mf.error("missing 'init' line");
  try {
    m.initial_state = BitVector::from_string(init_bits);
  } catch (const Error& e) {
    throw mf.error(init_line, e.what());
  }
  if (m.initial_state.size() != m.num_vars()) throw mf.error(init_line, "init width differs from the variable count");
  if (prob_width && *prob_width != m.prob_width()) {
    throw mf.error(prob_line, "prob_width " + std::to_string(*prob_width) + " but the transition circuit has " +
                                  std::to_string(m.prob_width()) + " outputs");
  }
  if (reward_width && *reward_width != m.reward_width()) {
    throw mf.error(reward_line, "reward_width " + std::to_string(*reward_width) + " but the reward circuit has " +
                                    std::to_string(m.reward_width()) + " outputs");
  }
  if (pending.empty()) return m;

  BoundedActionMdp b;
  b.successors.resize(m.actions.size());
  std::vector<bool> seen(m.actions.size(), false);
  for (auto& p : pending) {
    const auto it = std::find(m.actions.begin(), m.actions.end(), p.action);
    if (it == m.actions.end()) throw mf.error(p.line, "unknown action '" + p.action + "'");
    const auto a = static_cast<std::size_t>(it - m.actions.begin());
    if (seen[a]) throw mf.error(p.line, "duplicate successor circuit for '" + p.action + "'");
    seen[a] = true;
    b.successors[a] = std::move(p.circuit);
  }
  for (std::size_t a = 0; a < seen.size(); ++a) {
    if (!seen[a]) throw mf.error("no successor circuit for action '" + m.actions[a] + "'");
  }
  b.base = std::move(m);
  return b;
}

void save_mdp(MdpView view, const std::filesystem::path& dir, const std::string& stem) {
  const SuccinctMdp& m = view.base();
  std::filesystem::create_directories(dir);
  auto out = open_out(dir / (stem + ".txt"));
  out << "mdp " << m.name << '\n';
  out << "vars";
  for (const auto& v : m.variables) out << ' ' << v;
  out << '\n';
  out << "init " << m.initial_state.to_string() << '\n';
  out << "actions";
  for (const auto& a : m.actions) out << ' ' << a;
  out << '\n';
  out << "prob_denominator " << m.prob_denominator << '\n';
  out << "prob_width " << m.prob_width() << '\n';
  out << "reward_width " << m.reward_width() << '\n';
  save_netlist(m.transition, dir / (stem + "_transition.net"));
  save_netlist(m.reward, dir / (stem + "_reward.net"));
  out << "transition " << stem << "_transition.net\n";
  out << "reward " << stem << "_reward.net\n";
  if (const auto* b = view.bounded()) {
    for (std::size_t a = 0; a < b->successors.size(); ++a) {
      const std::string file = stem + "_successor_" + std::to_string(a) + ".net";
      save_netlist(b->successors[a].circuit, dir / file);
      out << "successor " << m.actions[a] << ' ' << file << " branching " << b->successors[a].branching << '\n';
    }
  }
  if (m.horizon) out << "horizon " << *m.horizon << '\n';
}

NamedPolicyFile load_policy(const std::filesystem::path& path) {
  const Manifest mf(path);
  std::optional<std::string> name, kind;
  std::optional<std::uint64_t> actions, horizon;
  std::optional<Circuit> circuit;
  std::size_t kind_line = 0;
  for (const auto& line : mf.lines()) {
    const std::string& key = line.words[0];
    if (key == "policy") {
      mf.arity(line, 2);
      name = line.words[1];
    } else if (key == "kind") {
      mf.arity(line, 2);
      kind = line.words[1];
      kind_line = line.number;
      if (*kind != "stationary" && *kind != "history") throw mf.error(line.number, "kind must be stationary or history");
    } else if (key == "actions") {
      mf.arity(line, 2);
      actions = mf.number(line, 1);
      if (*actions == 0) throw mf.error(line.number, "action count must be positive");
    } else if (key == "horizon") {
      mf.arity(line, 2);
      horizon = mf.number(line, 1);
    } else if (key == "circuit") {
      mf.arity(line, 2);
      circuit = mf.circuit(line, 1);
    } else {
      throw mf.error(line.number, "unknown key '" + key + "'");
    }
  }
  if (!name) throw mf.error("missing 'policy' line");
  if (!kind) throw mf.error("missing 'kind' line");
  if (!actions) throw mf.error("missing 'actions' line");
  if (!circuit) throw mf.error("missing 'circuit' line");
  if (circuit->num_outputs() != index_width(*actions)) {
    throw mf.error("policy circuit has " + std::to_string(circuit->num_outputs()) + " outputs, expected " +
                   std::to_string(index_width(*actions)));
  }
  if (*kind == "stationary") return {*name, StationaryPolicy{std::move(*circuit), *actions}};
  if (!horizon) throw mf.error(kind_line, "history policies need a 'horizon' line");
  const std::size_t tw = index_width(*horizon + 1);
  const std::size_t in = circuit->num_inputs();
  if (in < tw || (in - tw) % (*horizon + 1) != 0) {
    throw mf.error("history circuit input width does not fit (T + 1) slots plus the time field");
  }
  const std::size_t n = (in - tw) / (*horizon + 1);
  return {*name, HistoryPolicy{std::move(*circuit), *actions, *horizon, n}};
}

void save_policy(const Policy& p, const std::string& name, const std::filesystem::path& dir, const std::string& stem) {
  std::filesystem::create_directories(dir);
  auto out = open_out(dir / (stem + ".txt"));
  out << "policy " << name << '\n';
  const std::string file = stem + ".net";
  if (const auto* s = std::get_if<StationaryPolicy>(&p)) {
    out << "kind stationary\nactions " << s->action_count << '\n';
    save_netlist(s->circuit, dir / file);
  } else {
    const auto& h = std::get<HistoryPolicy>(p);
    out << "kind history\nactions " << h.action_count << "\nhorizon " << h.horizon << '\n';
    save_netlist(h.circuit, dir / file);
  }
  out << "circuit " << file << '\n';
}

NamedValueCircuit load_valuefn(const std::filesystem::path& path) {
  const Manifest mf(path);
  std::optional<std::string> name;
  std::optional<std::uint64_t> horizon, width, denom;
  std::optional<Circuit> circuit;
  for (const auto& line : mf.lines()) {
    const std::string& key = line.words[0];
    if (key == "valuefn") {
      mf.arity(line, 2);
      name = line.words[1];
    } else if (key == "horizon") {
      mf.arity(line, 2);
      horizon = mf.number(line, 1);
    } else if (key == "value_width") {
      mf.arity(line, 2);
      width = mf.number(line, 1);
    } else if (key == "value_denominator") {
      mf.arity(line, 2);
      denom = mf.number(line, 1);
      if (*denom == 0) throw mf.error(line.number, "denominator must be positive");
    } else if (key == "circuit") {
      mf.arity(line, 2);
      circuit = mf.circuit(line, 1);
    } else {
      throw mf.error(line.number, "unknown key '" + key + "'");
    }
  }
  if (!name) throw mf.error("missing 'valuefn' line");
  if (!horizon) throw mf.error("missing 'horizon' line");
  if (!circuit) throw mf.error("missing 'circuit' line");
  ValueCircuit e{std::move(*circuit), *horizon, denom.value_or(1)};
  if (width && *width != e.value_width()) throw mf.error("value_width differs from the circuit's output count");
  if (e.circuit.num_inputs() < e.step_width()) throw mf.error("value circuit is narrower than its step index");
  return {*name, std::move(e)};
}

void save_valuefn(const ValueCircuit& e, const std::string& name, const std::filesystem::path& dir,
                  const std::string& stem) {
  std::filesystem::create_directories(dir);
  auto out = open_out(dir / (stem + ".txt"));
  const std::string file = stem + ".net";
  save_netlist(e.circuit, dir / file);
  out << "valuefn " << name << "\nhorizon " << e.horizon << "\nvalue_width " << e.value_width()
      << "\nvalue_denominator " << e.denominator << "\ncircuit " << file << '\n';
}

}  // namespace smdp
