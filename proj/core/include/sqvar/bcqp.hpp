#pragma once

// Nonnegativity-constrained convex QP
//
//   min 0.5 x^T Q x + b^T x   s.t. x >= 0
//
// solved either by projected gradient on x or by gradient descent on the
// substituted objective F(v) = f(v .* v).

#include <cstdint>
#include <optional>

#include "sqvar/linalg.hpp"
#include "sqvar/trace.hpp"

namespace sqvar::bcqp {

struct QpProblem {
  Matrix q;
  Vector b;
  Vector x_ref;  // unconstrained minimizer, Q x_ref + b = 0
  double kappa = 1.0;

  Index size() const { return b.size(); }
  double objective(const Vector& x) const { return 0.5 * x.dot(q * x) + b.dot(x); }
  Vector gradient(const Vector& x) const { return q * x + b; }
};

/// Q = U diag(lambda) U^T with lambda log-uniform on [1/kappa, 1] and U Haar
/// orthogonal; x_ref ~ N(0, I) and b = -Q x_ref. kappa = 1 gives Q = I.
QpProblem gen_qp(Index n, double kappa, std::uint64_t seed);

/// Starting point max(phi, 0) + 1 with phi ~ N(0, I).
Vector standard_start(Index n, std::uint64_t seed);

struct BcOptions {
  double tol = 1e-4;
  int max_iter = 100000;
  /// Sufficient-decrease constant; 0 accepts any strict decrease.
  double armijo = 0.5;
  double shrink = 0.5;
  double grow = 1.5;
  double first_alpha = 1.0;
  /// Gradient-norm threshold below which the diagonally scaled step is tried.
  double scaled_switch = 0.1;
  double min_diag = 1e-5;
  /// Substitution solver only: stop on ||grad F(v)|| <= tol instead of the
  /// projected-gradient residual at x = v .* v.
  bool stop_on_grad_norm = true;
  bool record_trace = true;
};

struct BcSolveResult {
  Vector x;
  std::optional<Vector> v;  // set by the substitution solver
  int iterations = 0;
  double objective = 0.0;
  double prox_residual = 0.0;
  bool converged = false;  // false means the iteration cap was reached
  SolveTrace trace{{"iter", "obj", "prox_residual", "alpha"}};
};

/// Projected gradient x+ = max(x - alpha g, 0) with backtracking. Each
/// iteration starts from `grow` times the last accepted alpha.
BcSolveResult pg_solve(const QpProblem& p, const Vector& x0, const BcOptions& opts = {});

/// Gradient descent on F(v) = f(v .* v). Once ||grad F|| <= scaled_switch a
/// unit step along -D^{-1} grad F is tried first, D = diag(hess F) + lambda I
/// with the smallest lambda >= 0 making every entry at least min_diag.
/// Stops on ||grad F(v)|| <= tol by default (see stop_on_grad_norm).
/// Throws InvalidArgument if v0 has a zero entry.
BcSolveResult dss_gd_scaled_solve(const QpProblem& p, const Vector& v0, const BcOptions& opts = {});

}  // namespace sqvar::bcqp
