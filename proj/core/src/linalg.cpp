#include "sqvar/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sqvar {

bool all_finite(const Vector& v) { return v.allFinite(); }
bool all_finite(const Matrix& m) { return m.allFinite(); }

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) fail(ErrorCode::NonFinite, std::string(what) + " has non-finite entries");
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) fail(ErrorCode::NonFinite, std::string(what) + " has non-finite entries");
}

Vector hadamard_pow(const Vector& v, int L) {
  require(L >= 1, ErrorCode::InvalidArgument, "hadamard_pow: power must be >= 1");
  Vector out = v;
  for (int k = 1; k < L; ++k) out = out.cwiseProduct(v);
  return out;
}

Vector negative_part(const Vector& v) { return (-v).cwiseMax(0.0); }

// ---------------------------------------------------------------------------
// QuasiDefiniteLdlt

QuasiDefiniteLdlt::QuasiDefiniteLdlt(Matrix k, double pivot_tol, PivotPolicy policy)
    : ld_(std::move(k)) {
  require(ld_.rows() == ld_.cols(), ErrorCode::DimensionMismatch, "LDL^T needs a square matrix");
  const Index n = ld_.rows();
  const double scale = n == 0 ? 0.0 : ld_.triangularView<Eigen::Lower>().toDenseMatrix().cwiseAbs().maxCoeff();
  const double threshold = pivot_tol * std::max(scale, std::numeric_limits<double>::min());
  const Vector original_diag = ld_.diagonal();

  // Right-looking elimination on the lower triangle.
  for (Index j = 0; j < n; ++j) {
    double d = ld_(j, j);
    if (policy == PivotPolicy::Modified) {
      const double local =
          pivot_tol * std::max(std::abs(original_diag[j]), std::numeric_limits<double>::min());
      if (!(std::abs(d) >= local) || d * original_diag[j] < 0.0) {
        d = ld_(j, j) = original_diag[j] < 0.0 ? -kReplacementPivot : kReplacementPivot;
        ++replaced_;
      }
    } else if (!(std::abs(d) >= threshold)) {
      fail(ErrorCode::SingularSystem,
           "LDL^T pivot " + std::to_string(j) + " = " + std::to_string(d) + " below threshold");
    }
    const Index rest = n - j - 1;
    if (rest == 0) break;
    auto col = ld_.col(j).tail(rest);
    Vector l = col / d;
    ld_.bottomRightCorner(rest, rest).selfadjointView<Eigen::Lower>().rankUpdate(l, -d);
    col = l;
  }
}

Vector QuasiDefiniteLdlt::solve(const Vector& rhs) const {
  require(rhs.size() == ld_.rows(), ErrorCode::DimensionMismatch, "LDL^T solve: rhs size");
  Vector z = ld_.triangularView<Eigen::UnitLower>().solve(rhs);
  z = z.cwiseQuotient(ld_.diagonal());
  return ld_.transpose().triangularView<Eigen::UnitUpper>().solve(z);
}

Matrix QuasiDefiniteLdlt::unit_lower() const {
  Matrix l = ld_.triangularView<Eigen::StrictlyLower>();
  l.diagonal().setOnes();
  return l;
}

// ---------------------------------------------------------------------------
// AugmentedSolver

AugmentedSolver::AugmentedSolver(const DiagonalMatrix& d, const Matrix& a, AugmentedPath path,
                                 PivotPolicy policy)
    : path_(path), a_(&a), d_(d.diag()) {
  const Index n = a.cols();
  const Index m = a.rows();
  require(d_.size() == n, ErrorCode::DimensionMismatch, "augmented solve: D and A columns differ");
  require_finite(d_, "D");
  require_finite(a, "A");
  if (n > 0 && !(d_.minCoeff() > 0.0))
    fail(ErrorCode::SingularSystem, "augmented solve: D must be strictly positive");
  d_inv_ = d_.cwiseInverse();

  if (path_ == AugmentedPath::Normal) {
    const Matrix scaled = a * d_inv_.cwiseSqrt().asDiagonal();
    Matrix normal = Matrix::Zero(m, m);
    normal.selfadjointView<Eigen::Lower>().rankUpdate(scaled);
    const double scale = m == 0 ? 0.0 : normal.diagonal().maxCoeff();
    chol_.compute(normal);
    bool ok = chol_.info() == Eigen::Success;
    if (ok && m > 0) {
      const Vector piv = chol_.matrixLLT().diagonal().cwiseAbs2();
      ok = policy == PivotPolicy::Strict
               ? piv.minCoeff() >= kPivotTolerance * scale
               : (piv.array() >= kPivotTolerance * normal.diagonal().array()).all();
    }
    if (!ok) {
      if (policy == PivotPolicy::Strict)
        fail(ErrorCode::SingularSystem, "normal-equations Cholesky pivot below threshold");
      // Only the lower triangle of `normal` is valid.
      normal.triangularView<Eigen::StrictlyUpper>() = normal.transpose();
      ldlt_ = QuasiDefiniteLdlt(std::move(normal), kPivotTolerance, PivotPolicy::Modified);
      use_ldlt_ = true;
    }
  } else {
    Matrix k = Matrix::Zero(n + m, n + m);
    k.topLeftCorner(n, n).diagonal() = -d_.array() - kStaticRegularization;
    k.bottomLeftCorner(m, n) = a;
    k.bottomRightCorner(m, m).diagonal().setConstant(kStaticRegularization);
    ldlt_ = QuasiDefiniteLdlt(std::move(k), kPivotTolerance, policy);
  }
}

AugmentedSolution AugmentedSolver::solve_once(const Vector& r_top, const Vector& r_bot) const {
  const Matrix& a = *a_;
  AugmentedSolution out;
  if (path_ == AugmentedPath::Normal) {
    const Vector rhs = r_bot + a * d_inv_.cwiseProduct(r_top);
    out.dlam = use_ldlt_ ? ldlt_.solve(rhs) : Vector(chol_.solve(rhs));
    out.dx = d_inv_.cwiseProduct(a.transpose() * out.dlam - r_top);
  } else {
    const Index n = a.cols();
    const Index m = a.rows();
    Vector rhs(n + m);
    rhs << r_top, r_bot;
    const Vector sol = ldlt_.solve(rhs);
    out.dx = sol.head(n);
    out.dlam = sol.tail(m);
  }
  return out;
}

AugmentedSolution AugmentedSolver::solve(const Vector& r_top, const Vector& r_bot) const {
  const Matrix& a = *a_;
  require(r_top.size() == a.cols() && r_bot.size() == a.rows(), ErrorCode::DimensionMismatch,
          "augmented solve: right-hand side sizes");
  AugmentedSolution sol = solve_once(r_top, r_bot);

  // Iterative refinement against the unregularized system.
  const double rhs_norm = std::sqrt(r_top.squaredNorm() + r_bot.squaredNorm());
  for (int pass = 0; pass < 2; ++pass) {
    const Vector res_top = r_top - (-d_.cwiseProduct(sol.dx) + a.transpose() * sol.dlam);
    const Vector res_bot = r_bot - a * sol.dx;
    const double res = std::sqrt(res_top.squaredNorm() + res_bot.squaredNorm());
    if (res <= 1e-14 * (1.0 + rhs_norm)) break;
    const AugmentedSolution corr = solve_once(res_top, res_bot);
    sol.dx += corr.dx;
    sol.dlam += corr.dlam;
  }
  if (!sol.dx.allFinite() || !sol.dlam.allFinite())
    fail(ErrorCode::SingularSystem, "augmented solve produced non-finite values");
  return sol;
}

AugmentedSolution solve_augmented(const DiagonalMatrix& d, const Matrix& a, const Vector& r_top,
                                  const Vector& r_bot, AugmentedPath path, PivotPolicy policy) {
  require_finite(r_top, "r_top");
  require_finite(r_bot, "r_bot");
  return AugmentedSolver(d, a, path, policy).solve(r_top, r_bot);
}

// ---------------------------------------------------------------------------
// Spectral helpers

double sym_eig_min(const Matrix& m) {
  require(m.rows() == m.cols(), ErrorCode::DimensionMismatch, "sym_eig_min: matrix not square");
  if (m.rows() == 0) return std::numeric_limits<double>::infinity();
  require_finite(m, "sym_eig_min input");
  const double scale = m.cwiseAbs().maxCoeff();
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) fail(ErrorCode::NotSymmetric, "sym_eig_min: matrix is not symmetric");
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) fail(ErrorCode::SingularSystem, "eigensolver did not converge");
  return eig.eigenvalues()(0);
}

Matrix nullspace_basis(const Matrix& a) {
  const Index m = a.rows();
  const Index n = a.cols();
  if (m == 0) return Matrix::Identity(n, n);
  if (m > n) fail(ErrorCode::RankDeficient, "nullspace_basis: more rows than columns");
  require_finite(a, "nullspace_basis input");
  const Matrix at = a.transpose();
  Eigen::ColPivHouseholderQR<Matrix> qr(at);
  const double norm = a.norm();
  const double tol = 1e-12 * norm;
  const auto r = qr.matrixR();
  for (Index k = 0; k < m; ++k) {
    if (!(std::abs(r(k, k)) >= tol) || norm == 0.0)
      fail(ErrorCode::RankDeficient, "nullspace_basis: matrix does not have full row rank");
  }
  const Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  return q.rightCols(n - m);
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace sqvar
