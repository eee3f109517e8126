#pragma once

// MPS reader (fixed and free format) and conversion to the upper-bounded
// standard form used by the LP solvers.

#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sqvar/linalg.hpp"
#include "sqvar/lp.hpp"

namespace sqvar::mps {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowKind { N, L, G, E };

struct Row {
  std::string name;
  RowKind kind = RowKind::E;
  double rhs = 0.0;
  std::optional<double> range;
};

struct Column {
  std::string name;
  double cost = 0.0;
  double lower = 0.0;
  double upper = kInf;
};

/// In-memory model of an MPS deck. Only the first N row is the objective;
/// further N rows are dropped together with their coefficients.
struct GeneralLp {
  std::string name;
  std::string objective_name;
  std::vector<Row> rows;  // constraint rows only
  std::vector<Column> columns;
  /// Nonzeros keyed by (row, column) index; duplicates are summed.
  std::map<std::pair<Index, Index>, double> entries;
  /// RHS given on the objective row, stored as the objective constant -rhs.
  double objective_constant = 0.0;

  Index num_rows() const { return static_cast<Index>(rows.size()); }
  Index num_cols() const { return static_cast<Index>(columns.size()); }
  Matrix dense_matrix() const;
  /// Row activity bounds [lo, hi] after applying the row kind and range.
  std::pair<double, double> row_bounds(Index i) const;
  double objective(const Vector& x) const;
};

/// Throws ParseError (with line number) on malformed input and
/// Error(UnsupportedFeature) on integer markers or integer bound types.
GeneralLp parse_mps(std::string_view text);
GeneralLp read_mps_file(const std::filesystem::path& path);

/// How each original column is represented in the standard form.
struct ColumnMap {
  enum class Kind { Shifted, Negated, Split, Fixed };
  Kind kind = Kind::Shifted;
  Index col = -1;       // standard-form column (positive part for Split)
  Index neg_col = -1;   // negative part for Split
  double offset = 0.0;  // lower bound (Shifted), upper bound (Negated), value (Fixed)
};

struct StandardFormMap {
  std::vector<ColumnMap> columns;
  /// Standard-form slack column per constraint row, -1 for equalities.
  std::vector<Index> row_slack;
  /// Rows of the general LP kept in the standard form, in order.
  std::vector<Index> kept_rows;
  double objective_constant = 0.0;
  double objective_sign = 1.0;  // -1 when the deck was maximized
  Index num_std_cols = 0;

  /// Original variables from a standard-form point.
  Vector recover(const Vector& x_std) const;
  /// Standard-form point (structural and slack columns) for original x.
  Vector forward(const GeneralLp& g, const Vector& x) const;
  /// Original objective value given the standard-form objective value.
  double original_objective(double std_objective) const;
};

struct ConvertOptions {
  bool maximize = false;
  bool check_rank = true;
};

/// Shifts finite lower bounds to zero, negates columns bounded only above,
/// splits free columns, eliminates fixed columns and adds one slack per
/// inequality or ranged row. Finite upper bounds populate the upper-bound
/// index set.
std::pair<lp::LpProblem, StandardFormMap> to_lp_u(const GeneralLp& g, const ConvertOptions& opts = {});

}  // namespace sqvar::mps
