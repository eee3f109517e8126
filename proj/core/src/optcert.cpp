#include "sqvar/optcert.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

namespace sqvar::optcert {

namespace {

void require_size(Index got, Index want, const char* what) {
  if (got != want)
    fail(ErrorCode::DimensionMismatch, std::string(what) + ": expected size " +
                                           std::to_string(want) + ", got " + std::to_string(got));
}

void check_point(const NlpPoint& p) {
  const Index n = p.num_vars();
  const Index m = p.num_constraints();
  require_size(p.s.size(), m, "multipliers s");
  require_size(p.jac.rows(), m, "Jacobian rows");
  require_size(p.jac.cols(), n, "Jacobian cols");
  require_size(p.hess_l.rows(), n, "Hessian rows");
  require_size(p.hess_l.cols(), n, "Hessian cols");
  require_finite(p.s, "s");
  require_finite(p.grad_f, "grad_f");
  require_finite(p.c_val, "c(x)");
  require_finite(p.jac, "Jacobian");
  require_finite(p.hess_l, "Hessian of the Lagrangian");
}

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

// Curvature of `h` on null(rows); 0 when the nullspace is trivial.
double nullspace_curvature_deficit(const Matrix& rows, const Matrix& h) {
  const Matrix z = nullspace_basis(rows);
  if (z.cols() == 0) return 0.0;
  const Matrix reduced = symmetrized(z.transpose() * h * z);
  return std::max(0.0, -sym_eig_min(reduced));
}

}  // namespace

double bc_prox_residual(const Vector& grad, const Vector& x) {
  require_size(grad.size(), x.size(), "bc_prox_residual gradient");
  require_finite(grad, "gradient");
  require_finite(x, "x");
  if (x.size() > 0 && x.minCoeff() < -1e-12)
    fail(ErrorCode::InvalidArgument, "bc_prox_residual: x must be nonnegative");
  return (x - (x - grad).cwiseMax(0.0)).norm();
}

IndexPartition bc_classify(const Vector& x, const Vector& grad, double tol) {
  const double prox = bc_prox_residual(grad, x);
  if (prox > tol * (1.0 + grad.norm()))
    fail(ErrorCode::NotFirstOrder,
         "bc_classify: projected-gradient residual " + std::to_string(prox) + " exceeds tolerance");
  IndexPartition part;
  for (Index i = 0; i < x.size(); ++i) {
    if (x[i] > tol)
      part.inactive.push_back(i);
    else if (grad[i] > tol)
      part.active.push_back(i);
    else
      part.degenerate.push_back(i);
  }
  return part;
}

BcWeak2nReport bc_weak_2n_check(const Vector& x, const Vector& grad, const Matrix& hess,
                                double tol) {
  require_size(hess.rows(), x.size(), "Hessian rows");
  require_size(hess.cols(), x.size(), "Hessian cols");
  BcWeak2nReport report;
  report.partition = bc_classify(x, grad, tol);
  const auto& free = report.partition.inactive;
  Matrix sub(static_cast<Index>(free.size()), static_cast<Index>(free.size()));
  for (std::size_t i = 0; i < free.size(); ++i)
    for (std::size_t j = 0; j < free.size(); ++j) sub(Index(i), Index(j)) = hess(free[i], free[j]);
  const double lam = sym_eig_min(sub);
  report.min_eig = std::isinf(lam) ? 0.0 : lam;
  // First-order also needs grad >= 0 on the bound; bc_classify's residual
  // test already enforces it up to tol.
  report.is_weak_2n = report.min_eig >= -tol;
  return report;
}

Vector dss_gradient(const Vector& v, const Vector& grad_f) {
  require_size(grad_f.size(), v.size(), "dss_gradient");
  return 2.0 * v.cwiseProduct(grad_f);
}

Matrix dss_hessian(const Vector& v, const Vector& grad_f, const Matrix& hess_f) {
  require_size(grad_f.size(), v.size(), "dss_hessian gradient");
  require_size(hess_f.rows(), v.size(), "dss_hessian Hessian");
  Matrix h = 4.0 * v.asDiagonal() * hess_f * v.asDiagonal();
  h.diagonal() += 2.0 * grad_f;
  return h;
}

Dss2nReport dss_bc_2n_check(const GradientFn& f_grad, const HessianFn& f_hess, const Vector& v,
                            double tol) {
  require_finite(v, "v");
  const Vector x = v.cwiseProduct(v);
  Vector g;
  Matrix h;
  try {
    g = f_grad(x);
    h = f_hess(x);
  } catch (const std::exception& e) {
    fail(ErrorCode::CallbackFailure, std::string("objective callback threw: ") + e.what());
  }
  if (g.size() != v.size() || h.rows() != v.size() || h.cols() != v.size())
    fail(ErrorCode::CallbackFailure, "objective callback returned wrong dimensions");
  if (!g.allFinite() || !h.allFinite())
    fail(ErrorCode::CallbackFailure, "objective callback returned non-finite values");
  const double hscale = h.size() ? h.cwiseAbs().maxCoeff() : 0.0;
  if (h.size() && (h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * hscale)
    fail(ErrorCode::CallbackFailure, "objective Hessian callback is not symmetric");

  Dss2nReport report;
  report.grad = dss_gradient(v, g);
  report.hess = dss_hessian(v, g, symmetrized(h));
  report.grad_norm = report.grad.norm();
  report.is_first_order = report.grad_norm <= tol;
  const double lam = sym_eig_min(report.hess);
  report.min_eig = std::isinf(lam) ? 0.0 : lam;
  report.is_2n = report.is_first_order && report.min_eig >= -tol;
  report.is_2s_strict = report.is_first_order && report.min_eig > tol;
  return report;
}

std::vector<Index> zeta_active_set(const Vector& c_val, double zeta) {
  std::vector<Index> active;
  for (Index i = 0; i < c_val.size(); ++i)
    if (c_val[i] <= zeta) active.push_back(i);
  return active;
}

Nlp2nMeasures nlp_approx_2n_measure(const NlpPoint& point, const Vector& a, double zeta) {
  check_point(point);
  require_size(a.size(), point.num_constraints(), "weights a");
  require(zeta >= 0.0, ErrorCode::InvalidArgument, "zeta must be nonnegative");
  require(a.size() == 0 || a.minCoeff() >= 0.0, ErrorCode::InvalidArgument,
          "weights a must be nonnegative");

  const Vector& c = point.c_val;
  const Vector& s = point.s;
  Nlp2nMeasures out;
  out.zeta = zeta;
  out.a = a;
  out.eps_foc = point.grad_lagrangian().norm();
  if (c.size() > 0) {
    out.eps_pf = std::max(0.0, -c.minCoeff());
    out.eps_cs = s.cwiseProduct(c).norm();
    out.eps_pd = std::max(0.0, -(s + a.cwiseProduct(c)).minCoeff());
  }

  const Matrix active_rows = select_rows(point.jac, zeta_active_set(c, zeta));
  try {
    out.eps_soc = nullspace_curvature_deficit(active_rows, point.hess_l);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::RankDeficient) throw;
    fail(ErrorCode::RankDeficientActiveJacobian,
         "Jacobian rows of the zeta-active constraints are linearly dependent");
  }
  return out;
}

Ssv2nMeasures ssv_approx_2n_measure(const NlpPoint& point, const Vector& v) {
  check_point(point);
  const Index n = point.num_vars();
  const Index m = point.num_constraints();
  require_size(v.size(), m, "squared slacks v");
  require_finite(v, "v");

  Ssv2nMeasures out;
  const Vector grad_l = point.grad_lagrangian();
  const Vector grad_v = 2.0 * point.s.cwiseProduct(v);
  out.eps1 = std::sqrt(grad_l.squaredNorm() + grad_v.squaredNorm());
  out.eps2 = (point.c_val - v.cwiseProduct(v)).norm();

  // Constraint Jacobian [J, -2V] over (w, z) and Lagrangian Hessian
  // blockdiag(H, 2S).
  Matrix jac_ssv(m, n + m);
  jac_ssv << point.jac, Matrix((-2.0 * v).asDiagonal());
  Matrix h = Matrix::Zero(n + m, n + m);
  h.topLeftCorner(n, n) = symmetrized(point.hess_l);
  h.bottomRightCorner(m, m).diagonal() = 2.0 * point.s;
  out.eps3 = nullspace_curvature_deficit(jac_ssv, h);
  return out;
}

Nlp2nMeasures transfer_ssv_measures(const NlpPoint& point, const Ssv2nMeasures& eps, double zeta) {
  check_point(point);
  for (double e : {eps.eps1, eps.eps2, eps.eps3})
    if (!(e > 0.0 && e <= 1.0))
      fail(ErrorCode::OutOfRange, "transfer requires every eps_i in (0, 1], got " + std::to_string(e));
  if (!(zeta >= 2.0 * eps.eps2))
    fail(ErrorCode::HypothesisViolated, "transfer requires zeta >= 2 eps2");

  const Index n = point.num_vars();
  const Index m = point.num_constraints();
  const Vector& c = point.c_val;
  const Vector& s = point.s;
  const Matrix h = symmetrized(point.hess_l);

  std::vector<Index> active;
  std::vector<Index> inactive;
  for (Index i = 0; i < m; ++i) (c[i] <= zeta ? active : inactive).push_back(i);
  const Matrix jac_active = select_rows(point.jac, active);
  const Matrix jac_inactive = select_rows(point.jac, inactive);
  const Index na = static_cast<Index>(active.size());

  Nlp2nMeasures out;
  out.zeta = zeta;
  out.a = Vector::Zero(m);
  out.eps_foc = eps.eps1;
  out.eps_pf = eps.eps2;

  double cs_factor = 0.0;
  for (Index i = 0; i < m; ++i) cs_factor = std::max(cs_factor, std::sqrt(std::abs(c[i]) + eps.eps2));
  const double s_inf = m > 0 ? s.cwiseAbs().maxCoeff() : 0.0;
  out.eps_cs = 0.5 * eps.eps1 * cs_factor + eps.eps2 * s_inf;

  const double pd_inactive = eps.eps1 / std::sqrt(2.0 * zeta);
  double pd = inactive.empty() ? 0.0 : pd_inactive;

  if (na > 0) {
    if (na > n) fail(ErrorCode::HypothesisViolated, "active Jacobian has more rows than columns");
    // J_A^T P = Q R, so the pseudo-inverse applied to e_i is Q R^{-T} P^T e_i.
    const Matrix jt = jac_active.transpose();
    Eigen::ColPivHouseholderQR<Matrix> qr(jt);
    const double tol = 1e-10 * point.jac.norm();
    const Matrix r = qr.matrixR().topLeftCorner(na, na).triangularView<Eigen::Upper>();
    for (Index k = 0; k < na; ++k)
      if (!(std::abs(r(k, k)) > tol))
        fail(ErrorCode::HypothesisViolated, "active constraint Jacobian is rank deficient");
    const Matrix q = qr.householderQ() * Matrix::Identity(n, na);
    const double c_inf = m > 0 ? c.cwiseAbs().maxCoeff() : 0.0;

    for (Index k = 0; k < na; ++k) {
      Vector e = Vector::Zero(na);
      e[k] = 1.0;
      const Vector pe = qr.colsPermutation().transpose() * e;
      const Vector y = r.transpose().triangularView<Eigen::Lower>().solve(pe);
      const Vector eta = q * y;
      const Vector xi = jac_inactive * eta;
      const double curvature = eta.dot(h * eta);
      const double a_i = 2.0 * std::max(0.0, curvature);
      out.a[active[static_cast<std::size_t>(k)]] = a_i;
      const double pd_i =
          0.5 * eps.eps3 * (4.0 * (c_inf + 1.0) * eta.squaredNorm() + 1.0 + 3.0 * xi.squaredNorm()) +
          3.0 * std::sqrt(2.0) * eps.eps1 / (2.0 * std::sqrt(zeta)) * std::max(xi.squaredNorm(), 1.0) +
          a_i * eps.eps2;
      pd = std::max(pd, pd_i);
    }
  }
  out.eps_pd = pd;

  const double jnorm = spectral_norm(jac_inactive);
  out.eps_soc = eps.eps3 + jnorm * jnorm *
                               (2.0 * eps.eps3 / zeta + std::sqrt(2.0) * eps.eps1 / std::pow(zeta, 1.5));
  return out;
}

L1StationarityReport l1dss_stationarity_check(const GradientFn& h_grad, const Vector& v_plus,
                                              const Vector& v_minus, double lambda, double tol) {
  require(lambda > 0.0, ErrorCode::InvalidArgument, "lambda must be positive");
  require_size(v_minus.size(), v_plus.size(), "v_minus");
  const Vector x = v_plus.cwiseProduct(v_plus) - v_minus.cwiseProduct(v_minus);
  Vector g;
  try {
    g = h_grad(x);
  } catch (const std::exception& e) {
    fail(ErrorCode::CallbackFailure, std::string("gradient callback threw: ") + e.what());
  }
  if (g.size() != x.size() || !g.allFinite())
    fail(ErrorCode::CallbackFailure, "gradient callback returned a bad vector");

  L1StationarityReport report;
  const Vector gp = 2.0 * v_plus.cwiseProduct((g.array() + lambda).matrix());
  const Vector gm = 2.0 * v_minus.cwiseProduct((lambda - g.array()).matrix());
  report.grad_norm = std::sqrt(gp.squaredNorm() + gm.squaredNorm());
  report.ssv_stationary = report.grad_norm <= tol;

  bool ok = true;
  for (Index i = 0; i < x.size() && ok; ++i) {
    if (x[i] > tol)
      ok = std::abs(g[i] + lambda) <= tol;
    else if (x[i] < -tol)
      ok = std::abs(g[i] - lambda) <= tol;
    else
      ok = std::abs(g[i]) <= lambda + tol;
  }
  report.original_1p = ok;
  return report;
}

}  // namespace sqvar::optcert
