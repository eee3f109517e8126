#include "sqvar_cli/report.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sqvar/error.hpp"

namespace sqvar::cli {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::string json_escape(const std::string& s) { return nlohmann::json(s).dump(); }

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

}  // namespace

void Table::add(std::vector<Cell> row) {
  require(row.size() == columns.size(), ErrorCode::DimensionMismatch, "Table::add: row width");
  rows.push_back(std::move(row));
}

std::size_t Table::column(const std::string& name) const {
  for (std::size_t j = 0; j < columns.size(); ++j)
    if (columns[j] == name) return j;
  fail(ErrorCode::InvalidArgument, "no column named '" + name + "'");
}

double Table::number(std::size_t row, const std::string& name) const {
  const Cell& c = rows.at(row)[column(name)];
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return double(*i);
  fail(ErrorCode::InvalidArgument, "column '" + name + "' is not numeric");
}

Table from_trace(const SolveTrace& trace, const std::vector<std::string>& key_names,
                 const std::vector<Cell>& key_values) {
  Table t;
  t.columns = key_names;
  t.columns.insert(t.columns.end(), trace.columns.begin(), trace.columns.end());
  for (const auto& r : trace.rows) {
    std::vector<Cell> row = key_values;
    // The first trace column is the iteration counter.
    for (std::size_t j = 0; j < r.size(); ++j)
      row.push_back(j == 0 ? Cell(std::int64_t(r[j])) : Cell(r[j]));
    t.add(std::move(row));
  }
  return t;
}

void append(Table& into, const Table& more) {
  if (into.columns.empty()) into.columns = more.columns;
  require(into.columns == more.columns, ErrorCode::InvalidArgument, "append: schemas differ");
  into.rows.insert(into.rows.end(), more.rows.begin(), more.rows.end());
}

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  fail(ErrorCode::InvalidArgument, "unknown format '" + name + "' (expected csv or json)");
}

std::string extension(Format f) { return f == Format::Csv ? "csv" : "json"; }

std::string format_cell(const Cell& c) {
  char buf[64];
  if (const auto* d = std::get_if<double>(&c)) {
    if (std::isnan(*d)) return "nan";
    if (std::isinf(*d)) return *d > 0 ? "inf" : "-inf";
    std::snprintf(buf, sizeof buf, "%.17g", *d);
    return buf;
  }
  if (const auto* i = std::get_if<std::int64_t>(&c)) {
    std::snprintf(buf, sizeof buf, "%" PRId64, *i);
    return buf;
  }
  return std::get<std::string>(c);
}

void emit_report(const Table& t, Format f, std::ostream& os) {
  if (f == Format::Csv) {
    for (std::size_t j = 0; j < t.columns.size(); ++j) os << (j ? "," : "") << csv_escape(t.columns[j]);
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << csv_escape(format_cell(row[j]));
      os << '\n';
    }
    return;
  }
  os << "[";
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    os << (i ? ",\n " : "\n ") << "{";
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
      os << (j ? ", " : "") << json_escape(t.columns[j]) << ": ";
      const Cell& c = t.rows[i][j];
      const bool finite_number =
          !std::holds_alternative<std::string>(c) &&
          !(std::holds_alternative<double>(c) && !std::isfinite(std::get<double>(c)));
      // JSON has no literal for non-finite reals; they are written as strings.
      os << (finite_number ? format_cell(c) : json_escape(format_cell(c)));
    }
    os << "}";
  }
  os << (t.rows.empty() ? "]\n" : "\n]\n");
}

void emit_report(const Table& t, Format f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  emit_report(t, f, out);
  out.flush();
  if (!out) fail(ErrorCode::IoError, "failed writing '" + path + "'");
}

std::vector<std::vector<std::string>> read_csv(std::istream& is, std::vector<std::string>& columns) {
  std::string line;
  if (!std::getline(is, line)) fail(ErrorCode::ParseError, "read_csv: missing header");
  columns = split_csv_line(line);
  std::vector<std::vector<std::string>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    rows.push_back(split_csv_line(line));
    if (rows.back().size() != columns.size()) fail(ErrorCode::ParseError, "read_csv: ragged row");
  }
  return rows;
}

std::vector<std::vector<std::string>> read_json(std::istream& is, std::vector<std::string>& columns) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("read_json: ") + e.what());
  }
  require(doc.is_array(), ErrorCode::ParseError, "read_json: expected an array");
  columns.clear();
  std::vector<std::vector<std::string>> rows;
  for (const auto& obj : doc) {
    require(obj.is_object(), ErrorCode::ParseError, "read_json: expected objects");
    std::vector<std::string> keys, row;
    for (const auto& [k, v] : obj.items()) {
      keys.push_back(k);
      if (v.is_string()) row.push_back(v.get<std::string>());
      else if (v.is_number_integer()) row.push_back(format_cell(Cell(v.get<std::int64_t>())));
      else if (v.is_number()) row.push_back(format_cell(Cell(v.get<double>())));
      else fail(ErrorCode::ParseError, "read_json: unsupported value");
    }
    if (rows.empty()) columns = keys;
    require(keys == columns, ErrorCode::ParseError, "read_json: keys differ between objects");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace sqvar::cli
