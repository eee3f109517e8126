#pragma once

// Symmetric nonnegative matrix factorization M ~ X X^T, X >= 0, either
// directly with projection (pg variants) or through X = V .* V (gd and
// lbfgs variants).

#include <cstdint>
#include <string>

#include "sqvar/linalg.hpp"
#include "sqvar/trace.hpp"

namespace sqvar::nmf {

struct NmfProblem {
  Matrix m;
  Matrix u;  // generating factor, M = U U^T
  Index rank = 0;

  Index size() const { return m.rows(); }
};

/// U i.i.d. U[0, 1] of size n x r and M = U U^T.
NmfProblem gen_nmf(Index n, Index r, std::uint64_t seed);
/// Problem generated by a caller-supplied factor.
NmfProblem from_factor(Matrix u);

struct ValueGrad {
  double f = 0.0;
  Matrix g;
};

/// F(X) = ||X X^T - M||_F^2 and its gradient 4 (X X^T - M) X.
ValueGrad nmf_x_value_grad(const Matrix& m, const Matrix& x);
/// F(V) = ||(V .* V)(V .* V)^T - M||_F^2 and its gradient 2 V .* (4 R X).
ValueGrad nmf_value_grad(const Matrix& m, const Matrix& v);

/// ||X X^T - M||_F^2 / ||M||_F^2.
double relative_error(const Matrix& m, const Matrix& x);

enum class Variant { Pg, PgPolyak, Gd, GdPolyak, Lbfgs };

std::string to_string(Variant v);
Variant parse_variant(const std::string& name);

struct NmfOptions {
  double eps = 1e-4;
  int max_iter = 20000;
  double shrink = 0.35;
  double grow = 2.0;
  double first_alpha = 1.0;
  int lbfgs_memory = 10;
  double lbfgs_armijo = 1e-4;
  double lbfgs_wolfe = 0.9;  // curvature constant of the strong Wolfe search
  bool record_trace = true;
};

struct NmfResult {
  Matrix x;
  int iterations = 0;
  double acc = 0.0;
  bool converged = false;
  int nonmonotone_steps = 0;  // Polyak steps that increased F
  SolveTrace trace{{"iter", "F", "acc"}};
};

/// V0 entries U[0, 1] scaled by (mean(M) / r)^(1/4), so V0 .* V0 has the
/// scale of a factor of M.
Matrix initial_v(const NmfProblem& p, std::uint64_t seed);

/// Runs `variant` from V0 (the pg variants start from X0 = V0 .* V0) until
/// the relative error is at most eps.
NmfResult nmf_solve(const NmfProblem& p, Variant variant, const Matrix& v0,
                    const NmfOptions& opts = {});

}  // namespace sqvar::nmf
