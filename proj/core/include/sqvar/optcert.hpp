#pragma once

// Optimality certificates for nonnegativity-constrained problems and for
// general inequality-constrained problems, in both their original form and
// their squared-variable reformulation.
//
// Bound constraints:   min f(x)  s.t. x >= 0
// Direct substitution: min F(v) := f(v .* v)
// Inequalities:        min f(x)  s.t. c(x) >= 0
// Squared slacks:      min f(x)  s.t. c(x) - v .* v = 0

#include <functional>
#include <vector>

#include "sqvar/linalg.hpp"

namespace sqvar::optcert {

using GradientFn = std::function<Vector(const Vector&)>;
using HessianFn = std::function<Matrix(const Vector&)>;

inline constexpr double kDefaultEigTol = 1e-8;

/// Partition of the variables of a bound-constrained first-order point.
struct IndexPartition {
  std::vector<Index> inactive;    // x_i > 0
  std::vector<Index> active;      // x_i = 0, grad_i > 0
  std::vector<Index> degenerate;  // x_i = 0, grad_i = 0
};

/// ||x - max(x - grad, 0)||_2, the projected-gradient residual. Zero exactly
/// at first-order points of the bound-constrained problem.
double bc_prox_residual(const Vector& grad, const Vector& x);

/// Classifies indices with threshold `tol`. Throws NotFirstOrder unless
/// bc_prox_residual(grad, x) <= tol * (1 + ||grad||).
IndexPartition bc_classify(const Vector& x, const Vector& grad, double tol);

struct BcWeak2nReport {
  IndexPartition partition;
  double min_eig = 0.0;  // of the Hessian restricted to the inactive set
  bool is_weak_2n = false;
};

/// Weak second-order check for the bound-constrained problem: first order,
/// and the Hessian is PSD (to -tol) on the coordinates with x_i > tol.
BcWeak2nReport bc_weak_2n_check(const Vector& x, const Vector& grad, const Matrix& hess,
                                double tol);

/// Gradient 2 v .* grad f(v .* v) of the substituted objective.
Vector dss_gradient(const Vector& v, const Vector& grad_f);

/// Hessian 2 diag(grad f) + 4 V hess_f V of the substituted objective.
Matrix dss_hessian(const Vector& v, const Vector& grad_f, const Matrix& hess_f);

struct Dss2nReport {
  bool is_first_order = false;
  bool is_2n = false;
  bool is_2s_strict = false;
  double min_eig = 0.0;
  double grad_norm = 0.0;
  Vector grad;
  Matrix hess;
};

/// Evaluates first- and second-order conditions of F(v) = f(v .* v) at v.
/// Callback failures (exceptions, wrong sizes, non-finite or asymmetric
/// results) are reported as CallbackFailure.
Dss2nReport dss_bc_2n_check(const GradientFn& f_grad, const HessianFn& f_hess, const Vector& v,
                            double tol = kDefaultEigTol);

/// First- and second-order data of an inequality-constrained problem at a
/// primal-dual point (x, s). The Lagrangian is f(x) - s^T c(x).
struct NlpPoint {
  Vector x;
  Vector s;       // multipliers, one per constraint
  Vector grad_f;  // gradient of f at x
  Vector c_val;   // c(x)
  Matrix jac;     // m x n Jacobian of c at x
  Matrix hess_l;  // n x n Hessian of the Lagrangian at (x, s)

  Vector grad_lagrangian() const { return grad_f - jac.transpose() * s; }
  Index num_vars() const { return grad_f.size(); }
  Index num_constraints() const { return c_val.size(); }
};

/// Approximate second-order measures for the original inequality form.
struct Nlp2nMeasures {
  double eps_foc = 0.0;
  double eps_pf = 0.0;
  double eps_cs = 0.0;
  double eps_pd = 0.0;
  double eps_soc = 0.0;
  double zeta = 0.0;
  Vector a;  // primal-dual feasibility weights a_i >= 0
};

/// Approximate second-order measures for the squared-slack form.
struct Ssv2nMeasures {
  double eps1 = 0.0;
  double eps2 = 0.0;
  double eps3 = 0.0;
};

/// Indices with c_i <= zeta.
std::vector<Index> zeta_active_set(const Vector& c_val, double zeta);

/// Smallest (eps_foc, ..., eps_soc) for which (x, s) satisfies the
/// approximate 2N conditions with the supplied weights `a` and active
/// threshold `zeta`. Throws RankDeficientActiveJacobian when the rows of the
/// Jacobian in the zeta-active set are linearly dependent.
Nlp2nMeasures nlp_approx_2n_measure(const NlpPoint& point, const Vector& a, double zeta);

/// Smallest (eps1, eps2, eps3) for which (x, v, s) satisfies the approximate
/// 2N conditions of the squared-slack form.
Ssv2nMeasures ssv_approx_2n_measure(const NlpPoint& point, const Vector& v);

/// Converts squared-slack measures into measures for the original problem
/// using the explicit constants of the transfer bound:
///
///   eps_foc = eps1, eps_pf = eps2,
///   eps_cs  = eps1/2 max_i sqrt(|c_i| + eps2) + eps2 ||s||_inf,
///   eps_pd  = max_i pd_i, with pd_i = eps1 / sqrt(2 zeta) off the active set
///             and, on it, with eta = J_A^+ e_i, xi = J_{A^c} eta,
///             pd_i = eps3/2 (4(||c||_inf + 1)||eta||^2 + 1 + 3||xi||^2)
///                    + 3 sqrt(2) eps1 / (2 sqrt(zeta)) max(||xi||^2, 1)
///                    + a_i eps2,
///             a_i  = 2 max(0, eta^T H eta),
///   eps_soc = eps3 + ||J_{A^c}||^2 (2 eps3 / zeta + sqrt(2) eps1 / zeta^{3/2}).
///
/// Requires eps_i in (0, 1] (OutOfRange), zeta >= 2 eps2 and a full-rank
/// active Jacobian (HypothesisViolated).
Nlp2nMeasures transfer_ssv_measures(const NlpPoint& point, const Ssv2nMeasures& eps, double zeta);

struct L1StationarityReport {
  bool ssv_stationary = false;
  bool original_1p = false;
  double grad_norm = 0.0;
};

/// Checks h(v+ .* v+ - v- .* v-) + lambda (||v+||^2 + ||v-||^2) for
/// stationarity, and whether x = v+^2 - v-^2 is a first-order point of
/// h(x) + lambda ||x||_1.
L1StationarityReport l1dss_stationarity_check(const GradientFn& h_grad, const Vector& v_plus,
                                              const Vector& v_minus, double lambda, double tol);

}  // namespace sqvar::optcert
