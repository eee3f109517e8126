#pragma once

// Reference computations for tests. Each one is deliberately naive and shares
// no code with the library routine it checks.

#include <cstdint>
#include <functional>

#include "sqvar/linalg.hpp"

namespace sqvar::testing {

/// Gaussian elimination with partial pivoting. Throws std::runtime_error on
/// an exactly singular pivot.
Vector dense_lu_solve(Matrix a, Vector b);

/// Smallest eigenvalue of a symmetric matrix by power iteration on
/// (shift I - M), with the shift taken from Gershgorin discs.
double power_min_eig(const Matrix& m, int iters = 20000, std::uint64_t seed = 7);

/// Largest singular value by power iteration on M^T M.
double power_spectral_norm(const Matrix& m, int iters = 5000);

/// Central-difference gradient of a scalar function.
Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x,
                   double h = 1e-6);

/// Central-difference Jacobian of a vector function, one column per input.
Matrix fd_jacobian(const std::function<Vector(const Vector&)>& f, const Vector& x,
                   double h = 1e-6);

/// min over unit d with rows * d = 0 of d^T H d, by random directions followed
/// by shrinking random perturbations of the best one.
double brute_force_min_curvature(const Matrix& rows, const Matrix& h, std::uint64_t seed,
                                 int samples = 20000, int refine = 20000);

/// l1-ball projection by bisection on the soft threshold level.
Vector l1_projection_by_bisection(const Vector& z, double r);

/// min c^T x s.t. A x = b, x >= 0 by enumerating every basis (small n only).
/// Returns +infinity when no basic feasible solution exists.
double lp_vertex_min(const Matrix& a, const Vector& b, const Vector& c);

/// ||a - b|| / max(1, ||b||).
double rel_diff(const Vector& a, const Vector& b);
double rel_diff(const Matrix& a, const Matrix& b);

}  // namespace sqvar::testing
