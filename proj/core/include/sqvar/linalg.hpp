#pragma once

// Dense linear algebra shared by every solver and certificate checker.
//
// Vectors and matrices are Eigen dense types. The routines here add the
// pieces the solvers need on top of Eigen: Hadamard powers, the two solve
// paths for the saddle-point system [-D A^T; A 0], a quasi-definite LDL^T
// without pivoting, and the eigenvalue/nullspace helpers used by the
// second-order checks.

#include <Eigen/Dense>

#include "sqvar/error.hpp"

namespace sqvar {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// diag(d). Products with vectors are Hadamard products.
class DiagonalMatrix {
 public:
  DiagonalMatrix() = default;
  explicit DiagonalMatrix(Vector diag) : diag_(std::move(diag)) {}

  Index size() const { return diag_.size(); }
  const Vector& diag() const { return diag_; }

  Vector operator*(const Vector& x) const { return diag_.cwiseProduct(x); }
  DiagonalMatrix inverse() const { return DiagonalMatrix(diag_.cwiseInverse()); }
  Matrix dense() const { return diag_.asDiagonal(); }

 private:
  Vector diag_;
};

bool all_finite(const Vector& v);
bool all_finite(const Matrix& m);

/// Throws Error(NonFinite) naming `what` when any entry is NaN or infinite.
void require_finite(const Vector& v, const char* what);
void require_finite(const Matrix& m, const char* what);

/// Elementwise power v_i^L for a positive integer L.
Vector hadamard_pow(const Vector& v, int L);

/// Negative part: max(-v, 0) elementwise.
Vector negative_part(const Vector& v);

enum class AugmentedPath {
  Normal,     ///< A D^{-1} A^T via Cholesky
  Augmented,  ///< quasi-definite LDL^T of the full (n+m) matrix
};

enum class PivotPolicy {
  /// Throw SingularSystem when a pivot falls below tol * (matrix scale).
  Strict,
  /// Compare each pivot with its own original diagonal entry and replace a
  /// pivot that is too small by a huge value, which zeroes that component
  /// of the solution (modified Cholesky for degenerate interior-point
  /// systems).
  Modified,
};

struct AugmentedSolution {
  Vector dx;
  Vector dlam;
};

/// LDL^T of a symmetric quasi-definite matrix in its given order, with no
/// pivoting. Only the lower triangle of the input is read.
class QuasiDefiniteLdlt {
 public:
  QuasiDefiniteLdlt() = default;

  /// Factors `k`. Under the strict policy throws SingularSystem when a pivot
  /// magnitude falls below pivot_tol * max|k_ij|.
  explicit QuasiDefiniteLdlt(Matrix k, double pivot_tol = 1e-14,
                             PivotPolicy policy = PivotPolicy::Strict);

  Vector solve(const Vector& rhs) const;
  Index size() const { return ld_.rows(); }
  /// Pivots d of the factorization.
  Vector pivots() const { return ld_.diagonal(); }
  /// Unit lower-triangular factor.
  Matrix unit_lower() const;
  /// Number of pivots replaced under the modified policy.
  Index replaced_pivots() const { return replaced_; }

  static constexpr double kReplacementPivot = 1e128;

 private:
  Matrix ld_;  // strictly lower part holds L, diagonal holds d
  Index replaced_ = 0;
};

/// Factors the saddle-point matrix
///
///     [ -D   A^T ]
///     [  A    0  ]
///
/// once so that several right-hand sides can be solved against it. D must be
/// strictly positive and A must have full row rank.
class AugmentedSolver {
 public:
  AugmentedSolver(const DiagonalMatrix& d, const Matrix& a, AugmentedPath path,
                  PivotPolicy policy = PivotPolicy::Strict);

  AugmentedSolution solve(const Vector& r_top, const Vector& r_bot) const;

  AugmentedPath path() const { return path_; }

  static constexpr double kPivotTolerance = 1e-14;
  static constexpr double kStaticRegularization = 1e-12;

 private:
  AugmentedSolution solve_once(const Vector& r_top, const Vector& r_bot) const;

  AugmentedPath path_;
  const Matrix* a_;
  Vector d_;
  Vector d_inv_;
  Eigen::LLT<Matrix> chol_;
  bool use_ldlt_ = false;  // normal path fell back to the modified factorization
  QuasiDefiniteLdlt ldlt_;
};

/// One-shot solve of -D dx + A^T dlam = r_top, A dx = r_bot.
AugmentedSolution solve_augmented(const DiagonalMatrix& d, const Matrix& a, const Vector& r_top,
                                  const Vector& r_bot, AugmentedPath path = AugmentedPath::Normal,
                                  PivotPolicy policy = PivotPolicy::Strict);

/// Smallest eigenvalue of a symmetric matrix; +infinity for an empty matrix.
/// Throws NotSymmetric when max|M - M^T| exceeds 1e-12 max|M|.
double sym_eig_min(const Matrix& m);

/// Orthonormal basis Z (n x (n-m)) of null(A) for A of size m x n, m <= n.
/// Throws RankDeficient when a column-pivoted QR pivot of A^T is below
/// 1e-12 ||A||_F.
Matrix nullspace_basis(const Matrix& a);

/// Largest singular value; 0 for an empty matrix.
double spectral_norm(const Matrix& m);

/// Rows of `m` whose indices are listed in `rows`, in that order.
template <typename IndexRange>
Matrix select_rows(const Matrix& m, const IndexRange& rows) {
  Matrix out(static_cast<Index>(rows.size()), m.cols());
  Index k = 0;
  for (auto r : rows) out.row(k++) = m.row(static_cast<Index>(r));
  return out;
}

template <typename IndexRange>
Vector select(const Vector& v, const IndexRange& idx) {
  Vector out(static_cast<Index>(idx.size()));
  Index k = 0;
  for (auto i : idx) out[k++] = v[static_cast<Index>(i)];
  return out;
}

}  // namespace sqvar
