#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace kac {

inline constexpr int kCsvSchemaVersion = 1;

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

/// Comma-separated table preceded by a "# schema_version=1" line.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  CsvTable& row(std::vector<std::string> cells);
  std::size_t rows() const { return rows_.size(); }

  void write(std::ostream& os) const;
  std::string str() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace kac
