#include "smdp/cnf.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "smdp/errors.hpp"

namespace smdp {

bool Cnf::satisfied_by(std::uint64_t assignment) const noexcept {
  for (const auto& clause : clauses) {
    bool sat = false;
    for (const auto& lit : clause) {
      const bool value = (assignment >> lit.var) & 1u;
      if (value != lit.negated) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

Cnf parse_dimacs(std::string_view text, const std::string& source) {
  Cnf f;
  std::optional<std::size_t> declared_clauses;
  Clause current;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    std::istringstream in(line);
    std::string word;
    if (!(in >> word) || word == "c" || word[0] == 'c' || word[0] == '%') continue;
    if (word == "p") {
      if (declared_clauses) throw ParseError(source, line_no, "duplicate problem line");
      std::string kind;
      long long vars = -1;
      long long count = -1;
      std::string extra;
      if (!(in >> kind >> vars >> count) || kind != "cnf" || vars < 0 || count < 0 || (in >> extra)) {
        throw ParseError(source, line_no, "expected 'p cnf <vars> <clauses>'");
      }
      f.num_vars = static_cast<std::size_t>(vars);
      declared_clauses = static_cast<std::size_t>(count);
      continue;
    }
    if (!declared_clauses) throw ParseError(source, line_no, "clause before the 'p cnf' header");
    in.clear();
    in.str(line);
    while (in >> word) {
      char* stop = nullptr;
      const long long v = std::strtoll(word.c_str(), &stop, 10);
      if (stop == word.c_str() || *stop != '\0') {
        throw ParseError(source, line_no, "malformed literal '" + word + "'");
      }
      if (v == 0) {
        f.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      const auto var = static_cast<std::size_t>(v < 0 ? -v : v);
      if (var > f.num_vars) {
        throw ParseError(source, line_no, "literal " + word + " exceeds the declared " +
                                              std::to_string(f.num_vars) + " variables");
      }
      current.push_back({var - 1, v < 0});
    }
  }
  if (!declared_clauses) throw ParseError(source, line_no, "missing 'p cnf' header");
  if (!current.empty()) throw ParseError(source, line_no, "last clause is not terminated by 0");
  if (f.clauses.size() != *declared_clauses) {
    throw ParseError(source, line_no, "header declares " + std::to_string(*declared_clauses) +
                                          " clauses, found " + std::to_string(f.clauses.size()));
  }
  return f;
}

std::string serialize_dimacs(const Cnf& f) {
  std::ostringstream out;
  out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& clause : f.clauses) {
    for (const auto& lit : clause) out << (lit.negated ? "-" : "") << lit.var + 1 << ' ';
    out << "0\n";
  }
  return out.str();
}

Cnf load_dimacs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open CNF file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dimacs(buf.str(), path.string());
}

std::string to_string(const Cnf& f) {
  if (f.clauses.empty()) return "true";
  std::string out;
  for (std::size_t c = 0; c < f.clauses.size(); ++c) {
    if (c > 0) out += " & ";
    out += "(";
    for (std::size_t k = 0; k < f.clauses[c].size(); ++k) {
      if (k > 0) out += " | ";
      if (f.clauses[c][k].negated) out += "~";
      out += "x" + std::to_string(f.clauses[c][k].var + 1);
    }
    out += ")";
  }
  return out;
}

}  // namespace smdp
