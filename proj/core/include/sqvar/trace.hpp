#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace sqvar {

/// Per-iteration record of a solve: a fixed column schema and one row of
/// numbers per iteration.
struct SolveTrace {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  SolveTrace() = default;
  explicit SolveTrace(std::vector<std::string> cols) : columns(std::move(cols)) {}

  void add(std::initializer_list<double> row) { rows.emplace_back(row); }
  std::size_t size() const { return rows.size(); }
  bool empty() const { return rows.empty(); }
};

}  // namespace sqvar
