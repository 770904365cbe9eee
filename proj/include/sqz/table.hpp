#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace sqz {

/// A cell is a number, a text token, or empty (written as an empty CSV field
/// and as JSON null).
using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  std::size_t column_index(const std::string& name) const;
};

enum class OutputFormat { Csv, Json };

/// Numbers are written with 12 significant digits in both formats.
std::string format_number(double v);

void write_csv(std::ostream& os, const Table& t);
void write_json(std::ostream& os, const Table& t);
void write_table(std::ostream& os, const Table& t, OutputFormat fmt);

}  // namespace sqz
