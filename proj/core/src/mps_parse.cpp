#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "sqvar/mps.hpp"

namespace sqvar::mps {

namespace {

enum class Section { None, Name, Rows, Columns, Rhs, Ranges, Bounds, End };

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Fixed-format fields at 1-based columns 2-3, 5-12, 15-22, 25-36, 40-47, 50-61.
std::vector<std::string_view> split_fixed(std::string_view line) {
  static constexpr std::pair<std::size_t, std::size_t> kFields[] = {
      {1, 2}, {4, 8}, {14, 8}, {24, 12}, {39, 8}, {49, 12}};
  std::vector<std::string_view> out;
  for (auto [pos, len] : kFields) {
    if (pos >= line.size()) {
      out.emplace_back();
      continue;
    }
    out.push_back(trim(line.substr(pos, len)));
  }
  return out;
}

Section section_from(std::string_view word) {
  if (word == "NAME") return Section::Name;
  if (word == "ROWS") return Section::Rows;
  if (word == "COLUMNS") return Section::Columns;
  if (word == "RHS") return Section::Rhs;
  if (word == "RANGES") return Section::Ranges;
  if (word == "BOUNDS") return Section::Bounds;
  if (word == "ENDATA") return Section::End;
  return Section::None;
}

class Parser {
 public:
  GeneralLp run(std::string_view text) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(pos, end - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no_;
      handle(line);
      if (section_ == Section::End) break;
      pos = end + 1;
    }
    if (section_ != Section::End) error("missing ENDATA");
    if (g_.objective_name.empty()) error("no objective (N) row");
    return std::move(g_);
  }

 private:
  [[noreturn]] void error(const std::string& reason) const { throw ParseError(line_no_, reason); }

  double number(std::string_view tok) const {
    std::string s(tok);
    std::replace_if(s.begin(), s.end(), [](char c) { return c == 'D' || c == 'd'; }, 'E');
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || s.empty()) error("malformed number '" + std::string(tok) + "'");
    return v;
  }

  void handle(std::string_view line) {
    if (trim(line).empty() || line.front() == '*') return;
    if (!std::isspace(static_cast<unsigned char>(line.front()))) {
      header(line);
      return;
    }
    switch (section_) {
      case Section::Rows: rows_line(line); break;
      case Section::Columns: columns_line(line); break;
      case Section::Rhs: rhs_line(line, false); break;
      case Section::Ranges: rhs_line(line, true); break;
      case Section::Bounds: bounds_line(line); break;
      default: error("data line outside of a section");
    }
  }

  void header(std::string_view line) {
    const auto tok = split_ws(line);
    const Section next = section_from(tok.front());
    if (next == Section::None) {
      if (tok.front() == "OBJSENSE" || tok.front() == "OBJSENCE" || tok.front() == "OBJSECT")
        throw Error(ErrorCode::UnsupportedFeature, "MPS section " + std::string(tok.front()));
      error("unknown section '" + std::string(tok.front()) + "'");
    }
    if (static_cast<int>(next) <= static_cast<int>(section_)) error("section out of order");
    if (next == Section::Name) {
      const std::string_view rest = trim(line.substr(4));
      g_.name = std::string(rest.empty() ? rest : split_ws(rest).front());
    }
    section_ = next;
  }

  void rows_line(std::string_view line) {
    auto tok = split_ws(line);
    if (tok.size() != 2) {
      const auto f = split_fixed(line);
      tok = {f[0], f[1]};
    }
    if (tok[0].empty() || tok[1].empty()) error("ROWS record needs a type and a name");
    RowKind kind;
    if (tok[0] == "N" || tok[0] == "n") kind = RowKind::N;
    else if (tok[0] == "L" || tok[0] == "l") kind = RowKind::L;
    else if (tok[0] == "G" || tok[0] == "g") kind = RowKind::G;
    else if (tok[0] == "E" || tok[0] == "e") kind = RowKind::E;
    else error("unknown row type '" + std::string(tok[0]) + "'");
    const std::string name(tok[1]);
    if (row_index_.count(name) || ignored_rows_.count(name)) error("duplicate row '" + name + "'");
    if (kind == RowKind::N) {
      if (g_.objective_name.empty())
        g_.objective_name = name;
      else
        ignored_rows_.insert(name);
      return;
    }
    row_index_.emplace(name, g_.num_rows());
    g_.rows.push_back(Row{name, kind, 0.0, std::nullopt});
  }

  // -2 for the objective, -1 for an ignored free row, else the row index.
  Index row_ref(std::string_view name) const {
    const std::string key(name);
    if (key == g_.objective_name) return -2;
    if (ignored_rows_.count(key)) return -1;
    const auto it = row_index_.find(key);
    if (it == row_index_.end()) error("unknown row '" + key + "'");
    return it->second;
  }

  void columns_line(std::string_view line) {
    auto tok = split_ws(line);
    if (tok.size() >= 3 && tok[1].find("MARKER") != std::string_view::npos)
      throw Error(ErrorCode::UnsupportedFeature, "integer MARKER records are not supported");
    if (tok.size() != 3 && tok.size() != 5) {
      const auto f = split_fixed(line);
      tok.assign(f.begin() + 1, f.end());
      while (!tok.empty() && tok.back().empty()) tok.pop_back();
      if (tok.size() != 3 && tok.size() != 5) error("COLUMNS record needs 3 or 5 fields");
    }
    const std::string name(tok[0]);
    auto it = col_index_.find(name);
    Index j;
    if (it == col_index_.end()) {
      j = g_.num_cols();
      col_index_.emplace(name, j);
      g_.columns.push_back(Column{name});
    } else {
      j = it->second;
    }
    for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
      const Index i = row_ref(tok[k]);
      const double v = number(tok[k + 1]);
      if (i == -2)
        g_.columns[static_cast<std::size_t>(j)].cost += v;
      else if (i >= 0)
        g_.entries[{i, j}] += v;
    }
  }

  void rhs_line(std::string_view line, bool ranges) {
    auto tok = split_ws(line);
    // An odd count carries the set name first; an even count omits it.
    if (tok.size() == 3 || tok.size() == 5) {
      tok.erase(tok.begin());
    } else if (tok.size() != 2 && tok.size() != 4) {
      const auto f = split_fixed(line);
      tok.assign(f.begin() + 2, f.end());
      while (!tok.empty() && tok.back().empty()) tok.pop_back();
      if (tok.size() != 2 && tok.size() != 4) error(ranges ? "malformed RANGES record" : "malformed RHS record");
    }
    for (std::size_t k = 0; k + 1 < tok.size(); k += 2) {
      const Index i = row_ref(tok[k]);
      const double v = number(tok[k + 1]);
      if (i == -1) continue;
      if (i == -2) {
        if (ranges) error("RANGES entry on the objective row");
        g_.objective_constant = -v;
        continue;
      }
      Row& row = g_.rows[static_cast<std::size_t>(i)];
      if (ranges) {
        if (row.range) error("duplicate range for row '" + row.name + "'");
        row.range = v;
      } else {
        row.rhs = v;
      }
    }
  }

  void bounds_line(std::string_view line) {
    auto tok = split_ws(line);
    if (tok.empty()) return;
    std::string type(tok[0]);
    std::transform(type.begin(), type.end(), type.begin(), [](unsigned char c) { return std::toupper(c); });
    static const std::set<std::string> kValued = {"UP", "LO", "FX"};
    static const std::set<std::string> kBare = {"FR", "MI", "PL"};
    static const std::set<std::string> kInteger = {"BV", "LI", "UI", "SC"};
    if (kInteger.count(type))
      throw Error(ErrorCode::UnsupportedFeature, "integer bound type " + type + " is not supported");
    const bool valued = kValued.count(type) > 0;
    if (!valued && !kBare.count(type)) error("unknown bound type '" + type + "'");

    std::string_view col_name, value;
    const std::size_t with_set = valued ? 4 : 3;
    if (tok.size() == with_set) {
      col_name = tok[2];
      if (valued) value = tok[3];
    } else if (tok.size() == with_set - 1) {
      col_name = tok[1];
      if (valued) value = tok[2];
    } else {
      const auto f = split_fixed(line);
      col_name = f[2];
      value = f[3];
      if (col_name.empty() || (valued && value.empty())) error("malformed BOUNDS record");
    }
    const auto it = col_index_.find(std::string(col_name));
    if (it == col_index_.end()) error("bound on unknown column '" + std::string(col_name) + "'");
    if (!seen_bounds_.insert({it->second, type}).second)
      error("duplicate " + type + " bound on column '" + std::string(col_name) + "'");
    Column& col = g_.columns[static_cast<std::size_t>(it->second)];
    const double v = valued ? number(value) : 0.0;
    if (type == "UP") {
      col.upper = v;
      if (v < 0.0 && col.lower == 0.0) col.lower = -kInf;
    } else if (type == "LO") {
      col.lower = v;
    } else if (type == "FX") {
      col.lower = col.upper = v;
    } else if (type == "FR") {
      col.lower = -kInf;
      col.upper = kInf;
    } else if (type == "MI") {
      col.lower = -kInf;
    } else {
      col.upper = kInf;
    }
  }

  GeneralLp g_;
  Section section_ = Section::None;
  std::size_t line_no_ = 0;
  std::unordered_map<std::string, Index> row_index_;
  std::unordered_map<std::string, Index> col_index_;
  std::set<std::string> ignored_rows_;
  std::set<std::pair<Index, std::string>> seen_bounds_;
};

}  // namespace

GeneralLp parse_mps(std::string_view text) { return Parser().run(text); }

GeneralLp read_mps_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_mps(buf.str());
}

Matrix GeneralLp::dense_matrix() const {
  Matrix a = Matrix::Zero(num_rows(), num_cols());
  for (const auto& [key, v] : entries) a(key.first, key.second) += v;
  return a;
}

std::pair<double, double> GeneralLp::row_bounds(Index i) const {
  const Row& r = rows[static_cast<std::size_t>(i)];
  const double rng = r.range ? std::abs(*r.range) : 0.0;
  switch (r.kind) {
    case RowKind::L: return {r.range ? r.rhs - rng : -kInf, r.rhs};
    case RowKind::G: return {r.rhs, r.range ? r.rhs + rng : kInf};
    case RowKind::E:
      if (!r.range) return {r.rhs, r.rhs};
      return *r.range >= 0.0 ? std::pair{r.rhs, r.rhs + rng} : std::pair{r.rhs - rng, r.rhs};
    case RowKind::N: break;
  }
  return {-kInf, kInf};
}

double GeneralLp::objective(const Vector& x) const {
  double f = objective_constant;
  for (Index j = 0; j < num_cols(); ++j) f += columns[static_cast<std::size_t>(j)].cost * x[j];
  return f;
}

}  // namespace sqvar::mps
