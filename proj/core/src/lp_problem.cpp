#include <algorithm>
#include <cmath>

#include "sqvar/lp.hpp"

namespace sqvar::lp {

LpProblem LpProblem::create(Matrix a, Vector b, Vector c, std::vector<Index> upper_idx, Vector u,
                            bool check_rank) {
  const Index m = a.rows();
  const Index n = a.cols();
  require(b.size() == m, ErrorCode::DimensionMismatch, "LpProblem: b size differs from rows of A");
  require(c.size() == n, ErrorCode::DimensionMismatch, "LpProblem: c size differs from cols of A");
  require(static_cast<Index>(upper_idx.size()) == u.size(), ErrorCode::DimensionMismatch,
          "LpProblem: one upper bound per bounded index");
  require(m <= n, ErrorCode::RankDeficient, "LpProblem: more rows than columns");
  require_finite(a, "A");
  require_finite(b, "b");
  require_finite(c, "c");
  require_finite(u, "u");
  require(std::is_sorted(upper_idx.begin(), upper_idx.end()) &&
              std::adjacent_find(upper_idx.begin(), upper_idx.end()) == upper_idx.end(),
          ErrorCode::InvalidArgument, "LpProblem: upper-bound indices must be sorted and distinct");
  for (Index i : upper_idx)
    require(i >= 0 && i < n, ErrorCode::OutOfRange, "LpProblem: upper-bound index out of range");
  require(u.size() == 0 || u.minCoeff() > 0.0, ErrorCode::InvalidArgument,
          "LpProblem: upper bounds must be positive");

  if (check_rank && m > 0) {
    Matrix gram = Matrix::Zero(m, m);
    gram.selfadjointView<Eigen::Lower>().rankUpdate(a);
    Eigen::LDLT<Matrix> ldlt(gram);
    const Vector d = ldlt.vectorD().cwiseAbs();
    if (ldlt.info() != Eigen::Success || !(d.minCoeff() > 1e-12 * d.maxCoeff()))
      fail(ErrorCode::RankDeficient, "LpProblem: A does not have full row rank");
  }
  return LpProblem{std::move(a), std::move(b), std::move(c), std::move(upper_idx), std::move(u)};
}

IpmIterate init_iterate(const LpProblem& p) {
  const auto inf_norm = [](const auto& x) { return x.size() ? x.cwiseAbs().maxCoeff() : 0.0; };
  // Induced infinity norm of A: largest absolute row sum.
  const double a_norm = p.a.size() ? p.a.cwiseAbs().rowwise().sum().maxCoeff() : 0.0;
  double big = std::max({a_norm, inf_norm(p.b), inf_norm(p.c)});
  if (big == 0.0) big = 1.0;
  const double start = 100.0 * big;
  IpmIterate it;
  it.x = Vector::Constant(p.num_vars(), start);
  it.s = it.x;
  it.w = Vector::Constant(p.num_upper(), start);
  it.t = it.w;
  it.lam = Vector::Zero(p.num_rows());
  return it;
}

SsvIterate init_ssv_iterate(const LpProblem& p) {
  SsvIterate it;
  it.base = init_iterate(p);
  it.v = it.base.x.cwiseSqrt();
  it.y = it.base.w.cwiseSqrt();
  return it;
}

double duality_measure(const IpmIterate& it) {
  const double denom = double(it.x.size() + it.w.size());
  return denom > 0 ? (it.x.dot(it.s) + it.w.dot(it.t)) / denom : 0.0;
}

LpResiduals compute_residuals(const LpProblem& p, const IpmIterate& it) {
  const Index n = p.num_vars();
  require(it.x.size() == n && it.s.size() == n && it.lam.size() == p.num_rows() &&
              it.w.size() == p.num_upper() && it.t.size() == p.num_upper(),
          ErrorCode::DimensionMismatch, "compute_residuals: iterate does not match problem");

  Vector r_c = p.a.transpose() * it.lam + it.s - p.c;
  std::vector<bool> bounded(static_cast<std::size_t>(n), false);
  for (Index k = 0; k < p.num_upper(); ++k) {
    const Index i = p.upper_idx[static_cast<std::size_t>(k)];
    r_c[i] -= it.t[k];
    bounded[static_cast<std::size_t>(i)] = true;
  }
  LpResiduals r;
  r.r_cI.resize(p.num_upper());
  r.r_cIbar.resize(n - p.num_upper());
  for (Index i = 0, ki = 0, kb = 0; i < n; ++i) {
    if (bounded[static_cast<std::size_t>(i)])
      r.r_cI[ki++] = r_c[i];
    else
      r.r_cIbar[kb++] = r_c[i];
  }
  r.r_x = p.a * it.x - p.b;
  r.r_u = select(it.x, p.upper_idx) + it.w - p.u;
  r.r_xs = it.x.cwiseProduct(it.s);
  r.r_rw = it.t.cwiseProduct(it.w);
  r.mu = duality_measure(it);

  const double sq = r_c.squaredNorm() + r.r_x.squaredNorm() + r.r_u.squaredNorm() +
                    r.r_xs.squaredNorm() + r.r_rw.squaredNorm() +
                    negative_part(it.x).squaredNorm() + negative_part(it.w).squaredNorm();
  r.res = std::sqrt(sq) / (1.0 + std::max(p.b.norm(), p.c.norm()));
  return r;
}

double ratio_step(const Vector& pos, const Vector& delta, double tau) {
  require(pos.size() == delta.size(), ErrorCode::DimensionMismatch, "ratio_step: sizes differ");
  double alpha = 1.0;
  for (Index i = 0; i < pos.size(); ++i)
    if (delta[i] < 0.0) alpha = std::min(alpha, -pos[i] / delta[i]);
  return tau * alpha;
}

std::string to_string(Method m) {
  switch (m) {
    case Method::Pdip: return "pdip";
    case Method::Mpc: return "mpc";
    case Method::Ssv: return "ssv";
  }
  return "?";
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Solved: return "solved";
    case Status::IterLimit: return "iter_limit";
    case Status::TimeLimit: return "time_limit";
    case Status::Diverged: return "diverged";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "pdip") return Method::Pdip;
  if (name == "mpc") return Method::Mpc;
  if (name == "ssv") return Method::Ssv;
  fail(ErrorCode::InvalidArgument, "unknown LP method '" + name + "'");
}

}  // namespace sqvar::lp
