#pragma once

// Sparse constrained least squares
//
//   min ||A x - b||^2 / 2  s.t.  sum |x_i|^tau <= R_tau
//
// through power variables x = v^L - w^L (elementwise), solved by projected
// gradient over a decreasing sequence of tau = 1/L with warm starts.
//
// tau = 1 uses x = v .* v - w .* w, where the constraint becomes the l2 ball
// of radius sqrt(R_1) in R^2n. tau = 1/L for even L uses x = v^L - w^L and the
// l1 ball of radius R_{1/L}.

#include <cstdint>
#include <string>
#include <vector>

#include "sqvar/linalg.hpp"
#include "sqvar/trace.hpp"

namespace sqvar::cls {

struct ClsProblem {
  Matrix a;
  Vector b;
  Vector beta0;  // sparse reference solution
  double sigma = 0.0;

  Index rows() const { return a.rows(); }
  Index cols() const { return a.cols(); }
};

/// A i.i.d. N(0, 1); beta0 has s nonzeros on a uniformly sampled support with
/// values U[-1, 1]; b = A beta0 + sigma * N(0, I).
ClsProblem gen_cls(Index n, Index m, Index s, double sigma, std::uint64_t seed);

/// Euclidean projection onto {x : ||x||_1 <= r} by sort and threshold.
Vector project_l1_ball(const Vector& z, double r);
/// Euclidean projection onto {x : ||x||_2 <= r}.
Vector project_l2_ball(const Vector& z, double r);

struct PowerValueGrad {
  double g = 0.0;
  Vector gv;
  Vector gw;
};

/// r = A (v^L - w^L) - b, g = ||r||^2 / 2, gv = L v^(L-1) .* A^T r,
/// gw = -L w^(L-1) .* A^T r.
PowerValueGrad power_value_grad(const ClsProblem& p, const Vector& v, const Vector& w, int power);

enum class Ball { L2, L1 };

struct TauStage {
  double tau = 1.0;
  int l = 1;       // tau = 1 / l
  double r = 1.0;  // R_tau

  /// Exponent of the power substitution: 2 for tau = 1, l otherwise.
  int power() const { return l == 1 ? 2 : l; }
  Ball ball() const { return l == 1 ? Ball::L2 : Ball::L1; }
  /// sqrt(R_1) for the l2 ball, R_{1/l} for the l1 ball.
  double radius() const;

  /// Stage for tau = 1/l with R_tau = sum |beta0_i|^tau. l must be 1 or even.
  static TauStage from_reference(const Vector& beta0, int l);
};

/// Projection of the stacked vector (v, w) onto the stage's ball.
void project_stage(const TauStage& stage, Vector& v, Vector& w);

struct PgOptions {
  int max_iter = 200;
  double tol = 1e-6;
  double armijo = 1e-4;
  double shrink = 0.5;
  double first_alpha = 1.0;
  bool record_trace = false;
};

struct PgResult {
  Vector v;
  Vector w;
  int iterations = 0;
  double prox_residual = 0.0;
  bool converged = false;
  SolveTrace trace{{"iter", "objective", "prox_residual", "alpha"}};
};

/// Projected gradient with Armijo backtracking along the projection arc.
/// Each search starts at twice the previously accepted step. Stops when
/// ||(v, w) - P[(v, w) - grad g]|| <= tol or after max_iter iterations.
PgResult pg_armijo_solve(const ClsProblem& p, const TauStage& stage, const Vector& v0,
                         const Vector& w0, const PgOptions& opts = {});

/// Represented solution v^P - w^P for the stage's power P.
Vector represented(const TauStage& stage, const Vector& v, const Vector& w);

struct StageResult {
  double tau = 1.0;
  int iterations = 0;
  bool converged = false;
  double objective_ratio = 0.0;  // g / ||b||^2
  double recovery_error = 0.0;   // ||x - beta0|| / ||beta0||
};

struct ContinuationResult {
  std::vector<StageResult> stages;
  Vector x;  // final represented solution
};

/// Runs the stages in order. Stage one starts from a standard normal 2n-vector
/// projected onto its ball; each later stage maps the previous x to
/// v = x_+^(1/P), w = x_-^(1/P) and projects.
ContinuationResult continuation_solve(const ClsProblem& p, const std::vector<int>& ls,
                                      std::uint64_t seed, const PgOptions& opts = {});

/// Parses "1,1/2,0.25" style lists into the l values {1, 2, 4}.
std::vector<int> parse_taus(const std::string& text);

}  // namespace sqvar::cls
