#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace smdp::cli {

enum class Emit { Table, Records };

using Field = std::pair<std::string, std::string>;
using Record = std::vector<Field>;

/// Collects rows and prints them either as an aligned table or as one
/// `key=value ...` record per line. Columns come from the first row.
class Report {
 public:
  explicit Report(Emit emit) : emit_(emit) {}

  void add(Record r) { rows_.push_back(std::move(r)); }
  bool empty() const noexcept { return rows_.empty(); }
  void print(std::ostream& out) const;

 private:
  Emit emit_;
  std::vector<Record> rows_;
};

/// A single result: the bare value in table mode, `key=value` otherwise.
void emit_value(std::ostream& out, Emit emit, const std::string& key, const std::string& value,
                const Record& extra = {});

std::string quote_if_needed(const std::string& value);

}  // namespace smdp::cli
