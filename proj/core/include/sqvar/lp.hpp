#pragma once

// Linear programs with upper bounds on a subset of the variables:
//
//   min c^T x  s.t.  A x = b,  0 <= x_I <= u,  x >= 0
//
// handled in the slack form x_I + w = u, (x, w) >= 0. Three iterations are
// provided: primal-dual path following (pdip), Mehrotra predictor-corrector
// (mpc), and SQP on the squared-variable form x = v .* v, w = y .* y (ssv).
//
// Residuals follow the Newton-system sign convention: every direction solves
// J * delta = -r.
//
//   r_c  = A^T lam + s - c   (minus t on the entries in I)
//   r_x  = A x - b
//   r_u  = x_I + w - u
//   r_xs = x .* s - sigma mu
//   r_rw = t .* w - sigma mu

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sqvar/linalg.hpp"
#include "sqvar/trace.hpp"

namespace sqvar::lp {

struct LpProblem {
  Matrix a;
  Vector b;
  Vector c;
  std::vector<Index> upper_idx;  // sorted, distinct
  Vector u;                      // one positive bound per entry of upper_idx

  Index num_vars() const { return a.cols(); }
  Index num_rows() const { return a.rows(); }
  Index num_upper() const { return u.size(); }

  /// Validates dimensions, bounds and, when `check_rank` is set, that A has
  /// full row rank (RankDeficient otherwise).
  static LpProblem create(Matrix a, Vector b, Vector c, std::vector<Index> upper_idx, Vector u,
                          bool check_rank = true);
};

struct IpmIterate {
  Vector x;
  Vector w;
  Vector lam;
  Vector s;
  Vector t;
};

struct SsvIterate {
  IpmIterate base;
  Vector v;
  Vector y;
};

struct LpResiduals {
  Vector r_cI;
  Vector r_cIbar;
  Vector r_x;
  Vector r_u;
  Vector r_xs;
  Vector r_rw;
  double mu = 0.0;
  double res = 0.0;
};

struct IpmDirection {
  Vector dx;
  Vector dw;
  Vector dlam;
  Vector ds;
  Vector dt;
};

struct SsvDirection {
  IpmDirection base;
  Vector dv;
  Vector dy;
};

/// M = max(||A||_inf, ||b||_inf, ||c||_inf); x = s = 100 M, w = t = 100 M,
/// lam = 0.
IpmIterate init_iterate(const LpProblem& p);
/// As init_iterate, with v = sqrt(x) and y = sqrt(w).
SsvIterate init_ssv_iterate(const LpProblem& p);

/// Duality measure (x^T s + w^T t) / (n + |I|).
double duality_measure(const IpmIterate& it);

/// Residual blocks at sigma = 0 and the scaled stopping measure
/// ||(r_cI, r_cIbar, r_x, r_u, r_xs, r_rw, x_-, w_-)|| / (1 + max(||b||, ||c||)).
LpResiduals compute_residuals(const LpProblem& p, const IpmIterate& it);

/// Newton direction for the perturbed KKT system with target sigma * mu.
IpmDirection pdip_direction(const LpProblem& p, const IpmIterate& it, double sigma,
                            AugmentedPath path = AugmentedPath::Normal,
                            PivotPolicy policy = PivotPolicy::Strict);

enum class MpcCorrector {
  SigmaOnly,  ///< re-solve with the new sigma only
  Mehrotra,  ///< also add the second-order term dx_aff .* ds_aff
};

struct MpcDirection {
  IpmDirection delta;
  IpmDirection affine;
  double sigma = 0.0;
  double mu = 0.0;
  double mu_aff = 0.0;
};

/// Affine probe, sigma = (mu_aff / mu)^3 clamped to [0, 1], then the
/// corrector solve against the same factorization.
MpcDirection mpc_direction(const LpProblem& p, const IpmIterate& it,
                           AugmentedPath path = AugmentedPath::Normal,
                           MpcCorrector corrector = MpcCorrector::SigmaOnly,
                           PivotPolicy policy = PivotPolicy::Strict);

/// SQP direction for the squared-variable form. With r_v = x - v .* v and
/// r_y = w - y .* y the linearization is
///
///   dx - 2 V dv = -r_v,  dw - 2 Y dy = -r_y,
///   S dv + V ds = -v .* s,  T dy + Y dt = -y .* t,
///
/// together with the dual and primal feasibility rows shared with pdip.
SsvDirection ssv_sqp_direction(const LpProblem& p, const SsvIterate& it,
                               AugmentedPath path = AugmentedPath::Normal,
                               PivotPolicy policy = PivotPolicy::Strict);

/// tau * min(1, min over delta_i < 0 of -pos_i / delta_i).
double ratio_step(const Vector& pos, const Vector& delta, double tau);

enum class Method { Pdip, Mpc, Ssv };
enum class Status { Solved, IterLimit, TimeLimit, Diverged };

std::string to_string(Method m);
std::string to_string(Status s);
Method parse_method(const std::string& name);

struct SolveOptions {
  Method method = Method::Mpc;
  double tau = 0.995;
  double eps = 1e-8;
  int max_iter = 500;
  double max_seconds = 750.0;
  double sigma = 0.1;  // pdip only
  AugmentedPath path = AugmentedPath::Normal;
  /// Degenerate late iterations produce pivots far below the global matrix
  /// scale; the modified policy keeps iterating instead of failing.
  PivotPolicy pivots = PivotPolicy::Modified;
  MpcCorrector corrector = MpcCorrector::SigmaOnly;
  /// ssv only: replace x by v .* v and w by y .* y after each step instead of
  /// stepping them along dx, dw.
  bool reset_primal_from_squares = false;
  double divergence_factor = 1e6;
  bool record_trace = true;
};

struct SolveResult {
  IpmIterate iterate;
  std::optional<Vector> v;
  std::optional<Vector> y;
  Status status = Status::IterLimit;
  int iterations = 0;
  double res = 0.0;
  double objective = 0.0;
  double seconds = 0.0;
  std::string message;
  SolveTrace trace{{"iter", "res", "mu", "alpha_p", "alpha_d", "sigma"}};
};

SolveResult lp_solve(const LpProblem& p, const SolveOptions& opts);

/// Random instance: A, c, x~ i.i.d. U[0, 1], b = A x~, floor(0.05 m) upper
/// bounds on distinct random indices with u ~ U[1, 21].
LpProblem gen_random_lp(Index n, Index m, std::uint64_t seed, bool check_rank = true);

}  // namespace sqvar::lp
