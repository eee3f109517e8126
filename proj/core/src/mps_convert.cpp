#include <cmath>

#include "sqvar/mps.hpp"

namespace sqvar::mps {

namespace {

constexpr double kZeroRowTol = 1e-9;

struct StdColumn {
  std::vector<std::pair<Index, double>> coeffs;  // (general row, value)
  double cost = 0.0;
  double upper = kInf;
};

}  // namespace

std::pair<lp::LpProblem, StandardFormMap> to_lp_u(const GeneralLp& g, const ConvertOptions& opts) {
  const Index m0 = g.num_rows();
  const Index n0 = g.num_cols();
  const double sign = opts.maximize ? -1.0 : 1.0;

  // Column-wise view of the sparse entries.
  std::vector<std::vector<std::pair<Index, double>>> by_col(static_cast<std::size_t>(n0));
  for (const auto& [key, v] : g.entries)
    if (v != 0.0) by_col[static_cast<std::size_t>(key.second)].push_back({key.first, v});

  StandardFormMap map;
  map.objective_sign = sign;
  map.objective_constant = g.objective_constant;
  map.columns.resize(static_cast<std::size_t>(n0));
  std::vector<StdColumn> cols;
  Vector row_shift = Vector::Zero(m0);  // activity contributed by constants

  for (Index j = 0; j < n0; ++j) {
    const Column& c = g.columns[static_cast<std::size_t>(j)];
    const auto& coeffs = by_col[static_cast<std::size_t>(j)];
    ColumnMap& cm = map.columns[static_cast<std::size_t>(j)];
    if (c.lower > c.upper)
      fail(ErrorCode::InvalidArgument, "column '" + c.name + "' has lower bound above upper bound");

    const auto add_constant = [&](double value) {
      map.objective_constant += c.cost * value;
      for (auto [i, v] : coeffs) row_shift[i] += v * value;
    };
    const auto push = [&](double scale, double upper) {
      StdColumn sc;
      sc.cost = sign * scale * c.cost;
      sc.upper = upper;
      for (auto [i, v] : coeffs) sc.coeffs.push_back({i, scale * v});
      cols.push_back(std::move(sc));
      return static_cast<Index>(cols.size() - 1);
    };

    if (std::isfinite(c.lower) && c.lower == c.upper) {
      cm.kind = ColumnMap::Kind::Fixed;
      cm.offset = c.lower;
      add_constant(c.lower);
    } else if (std::isfinite(c.lower)) {
      cm.kind = ColumnMap::Kind::Shifted;
      cm.offset = c.lower;
      add_constant(c.lower);
      cm.col = push(1.0, c.upper - c.lower);
    } else if (std::isfinite(c.upper)) {
      cm.kind = ColumnMap::Kind::Negated;
      cm.offset = c.upper;
      add_constant(c.upper);
      cm.col = push(-1.0, kInf);
    } else {
      cm.kind = ColumnMap::Kind::Split;
      cm.col = push(1.0, kInf);
      cm.neg_col = push(-1.0, kInf);
    }
  }

  // Rows: equalities stay, inequalities and ranges gain a slack.
  std::vector<Index> std_row(static_cast<std::size_t>(m0), -1);
  map.row_slack.assign(static_cast<std::size_t>(m0), -1);
  std::vector<double> rhs;
  std::vector<bool> has_coeff(static_cast<std::size_t>(m0), false);
  for (const auto& sc : cols)
    for (auto [i, v] : sc.coeffs) has_coeff[static_cast<std::size_t>(i)] = true;

  for (Index i = 0; i < m0; ++i) {
    auto [lo, hi] = g.row_bounds(i);
    lo -= row_shift[i];
    hi -= row_shift[i];
    if (!std::isfinite(lo) && !std::isfinite(hi)) continue;
    if (!has_coeff[static_cast<std::size_t>(i)]) {
      // Empty rows carry no information once the constants are checked.
      if (lo > kZeroRowTol || hi < -kZeroRowTol)
        fail(ErrorCode::InvalidArgument, "row '" + g.rows[static_cast<std::size_t>(i)].name +
                                             "' is empty but its bounds exclude zero");
      continue;
    }
    const Index r = static_cast<Index>(map.kept_rows.size());
    std_row[static_cast<std::size_t>(i)] = r;
    map.kept_rows.push_back(i);
    if (lo == hi) {
      rhs.push_back(lo);
      continue;
    }
    StdColumn slack;
    if (!std::isfinite(lo)) {
      slack.coeffs.push_back({i, 1.0});
      rhs.push_back(hi);
    } else {
      slack.coeffs.push_back({i, -1.0});
      slack.upper = std::isfinite(hi) ? hi - lo : kInf;
      rhs.push_back(lo);
    }
    cols.push_back(std::move(slack));
    map.row_slack[static_cast<std::size_t>(i)] = static_cast<Index>(cols.size() - 1);
  }

  const Index m = static_cast<Index>(map.kept_rows.size());
  const Index n = static_cast<Index>(cols.size());
  map.num_std_cols = n;
  Matrix a = Matrix::Zero(m, n);
  Vector c = Vector::Zero(n);
  std::vector<Index> upper_idx;
  std::vector<double> upper;
  for (Index k = 0; k < n; ++k) {
    const StdColumn& sc = cols[static_cast<std::size_t>(k)];
    c[k] = sc.cost;
    for (auto [i, v] : sc.coeffs) {
      const Index r = std_row[static_cast<std::size_t>(i)];
      if (r >= 0) a(r, k) += v;
    }
    if (std::isfinite(sc.upper)) {
      if (!(sc.upper > 0.0))
        fail(ErrorCode::UnsupportedFeature, "zero-width bound range survives conversion");
      upper_idx.push_back(k);
      upper.push_back(sc.upper);
    }
  }
  Vector b = Eigen::Map<const Vector>(rhs.data(), m);
  Vector u = Eigen::Map<const Vector>(upper.data(), static_cast<Index>(upper.size()));
  lp::LpProblem p = lp::LpProblem::create(std::move(a), std::move(b), std::move(c),
                                          std::move(upper_idx), std::move(u), opts.check_rank);
  return {std::move(p), std::move(map)};
}

Vector StandardFormMap::recover(const Vector& x_std) const {
  require(x_std.size() >= num_std_cols, ErrorCode::DimensionMismatch, "recover: standard-form size");
  Vector x(static_cast<Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    const ColumnMap& cm = columns[j];
    switch (cm.kind) {
      case ColumnMap::Kind::Fixed: x[Index(j)] = cm.offset; break;
      case ColumnMap::Kind::Shifted: x[Index(j)] = cm.offset + x_std[cm.col]; break;
      case ColumnMap::Kind::Negated: x[Index(j)] = cm.offset - x_std[cm.col]; break;
      case ColumnMap::Kind::Split: x[Index(j)] = x_std[cm.col] - x_std[cm.neg_col]; break;
    }
  }
  return x;
}

Vector StandardFormMap::forward(const GeneralLp& g, const Vector& x) const {
  require(x.size() == g.num_cols(), ErrorCode::DimensionMismatch, "forward: original size");
  Vector out = Vector::Zero(num_std_cols);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    const ColumnMap& cm = columns[j];
    const double xj = x[Index(j)];
    switch (cm.kind) {
      case ColumnMap::Kind::Fixed: break;
      case ColumnMap::Kind::Shifted: out[cm.col] = xj - cm.offset; break;
      case ColumnMap::Kind::Negated: out[cm.col] = cm.offset - xj; break;
      case ColumnMap::Kind::Split:
        out[cm.col] = std::max(xj, 0.0);
        out[cm.neg_col] = std::max(-xj, 0.0);
        break;
    }
  }
  const Vector activity = g.dense_matrix() * x;
  for (Index i = 0; i < g.num_rows(); ++i) {
    const Index k = row_slack[static_cast<std::size_t>(i)];
    if (k < 0) continue;
    const auto [lo, hi] = g.row_bounds(i);
    out[k] = std::isfinite(lo) ? activity[i] - lo : hi - activity[i];
  }
  return out;
}

double StandardFormMap::original_objective(double std_objective) const {
  return objective_sign * std_objective + objective_constant;
}

}  // namespace sqvar::mps
