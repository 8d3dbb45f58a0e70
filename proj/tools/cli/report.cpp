#include "report.hpp"

#include <algorithm>

namespace smdp::cli {

std::string quote_if_needed(const std::string& value) {
  if (!value.empty() && value.find_first_of(" \t\"=") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void Report::print(std::ostream& out) const {
  if (rows_.empty()) return;
  if (emit_ == Emit::Records) {
    for (const auto& row : rows_) {
      for (std::size_t k = 0; k < row.size(); ++k) {
        out << (k ? " " : "") << row[k].first << '=' << quote_if_needed(row[k].second);
      }
      out << '\n';
    }
    return;
  }
  const auto& header = rows_.front();
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].first.size();
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < std::min(row.size(), width.size()); ++c) {
      width[c] = std::max(width[c], row[c].second.size());
    }
  }
  auto line = [&](auto&& cell) {
    std::string text;
    for (std::size_t c = 0; c < width.size(); ++c) {
      std::string v = cell(c);
      if (c + 1 < width.size()) v.resize(width[c], ' ');
      text += (c ? "  " : "") + v;
    }
    out << text << '\n';
  };
  line([&](std::size_t c) { return header[c].first; });
  for (const auto& row : rows_) line([&](std::size_t c) { return c < row.size() ? row[c].second : std::string(); });
}

void emit_value(std::ostream& out, Emit emit, const std::string& key, const std::string& value, const Record& extra) {
  if (emit == Emit::Table) {
    out << value << '\n';
    return;
  }
  out << key << '=' << quote_if_needed(value);
  for (const auto& [k, v] : extra) out << ' ' << k << '=' << quote_if_needed(v);
  out << '\n';
}

}  // namespace smdp::cli
