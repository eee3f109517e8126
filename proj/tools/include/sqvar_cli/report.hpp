#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "sqvar/trace.hpp"

namespace sqvar::cli {

using Cell = std::variant<std::int64_t, double, std::string>;

/// Rectangular table with named columns. Every row has one cell per column.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
  std::size_t size() const { return rows.size(); }
  /// Index of `name`, throwing InvalidArgument if absent.
  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
};

/// Converts a solver trace, prefixing the given key columns to every row.
Table from_trace(const SolveTrace& trace, const std::vector<std::string>& key_names,
                 const std::vector<Cell>& key_values);
/// Appends the rows of `more`, which must share the column list.
void append(Table& into, const Table& more);

enum class Format { Csv, Json };

Format parse_format(const std::string& name);
std::string extension(Format f);

/// 17 significant digits for reals; integers and strings verbatim.
std::string format_cell(const Cell& c);

/// CSV with a header row, or a JSON array of objects with identical keys.
void emit_report(const Table& t, Format f, std::ostream& os);
/// As above into a file; IoError if it cannot be written.
void emit_report(const Table& t, Format f, const std::string& path);

/// Readers used for round trips. Every value is returned as its decimal
/// string so comparisons are exact.
std::vector<std::vector<std::string>> read_csv(std::istream& is, std::vector<std::string>& columns);
std::vector<std::vector<std::string>> read_json(std::istream& is, std::vector<std::string>& columns);

}  // namespace sqvar::cli
