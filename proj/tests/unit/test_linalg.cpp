#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "sqvar/linalg.hpp"
#include "sqvar/random.hpp"

namespace sqvar {
namespace {

using testing::dense_lu_solve;

// Dense LU on the full saddle-point matrix [-D A^T; A 0].
AugmentedSolution augmented_oracle(const Vector& d, const Matrix& a, const Vector& r_top,
                                   const Vector& r_bot) {
  const Index n = a.cols(), m = a.rows();
  Matrix k = Matrix::Zero(n + m, n + m);
  k.topLeftCorner(n, n) = -Matrix(d.asDiagonal());
  k.topRightCorner(n, m) = a.transpose();
  k.bottomLeftCorner(m, n) = a;
  Vector rhs(n + m);
  rhs << r_top, r_bot;
  const Vector sol = dense_lu_solve(k, rhs);
  return {sol.head(n), sol.tail(m)};
}

TEST(HadamardPow, Examples) {
  EXPECT_EQ(hadamard_pow(Vector{{2.0, 3.0}}, 2), (Vector{{4.0, 9.0}}));
  EXPECT_EQ(hadamard_pow(Vector{{5.0, -1.0}}, 1), (Vector{{5.0, -1.0}}));
  EXPECT_EQ(hadamard_pow(Vector{{-1.0, 2.0}}, 4), (Vector{{1.0, 16.0}}));
}

TEST(HadamardPow, RejectsNonPositivePower) {
  EXPECT_THROW(hadamard_pow(Vector{{1.0}}, 0), Error);
}

TEST(NegativePart, Elementwise) {
  EXPECT_EQ(negative_part(Vector{{-2.0, 0.0, 3.0}}), (Vector{{2.0, 0.0, 0.0}}));
}

TEST(SolveAugmented, OneByOne) {
  for (auto path : {AugmentedPath::Normal, AugmentedPath::Augmented}) {
    const auto s = solve_augmented(DiagonalMatrix(Vector::Ones(1)), Matrix::Ones(1, 1),
                                   Vector::Zero(1), Vector::Ones(1), path);
    EXPECT_NEAR(s.dx[0], 1.0, 1e-12);
    EXPECT_NEAR(s.dlam[0], 1.0, 1e-12);
  }
}

TEST(SolveAugmented, TwoVariablesOneRow) {
  const Matrix a{{1.0, 1.0}};
  const Vector r_top = Vector::Zero(2), r_bot{{2.0}};
  const auto ref = augmented_oracle(Vector::Ones(2), a, r_top, r_bot);
  for (auto path : {AugmentedPath::Normal, AugmentedPath::Augmented}) {
    const auto s = solve_augmented(DiagonalMatrix(Vector::Ones(2)), a, r_top, r_bot, path);
    EXPECT_LT((s.dx - ref.dx).norm(), 1e-12);
    EXPECT_LT((s.dlam - ref.dlam).norm(), 1e-12);
    EXPECT_NEAR(s.dx[0], 1.0, 1e-12);
    EXPECT_NEAR(s.dlam[0], 1.0, 1e-12);
  }
}

TEST(SolveAugmented, RandomInstancesMatchDenseLu) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng = make_rng(seed, 900);
    const Matrix a = normal_matrix(rng, 3, 5);
    const Vector d = uniform_vector(rng, 5, 0.1, 10.0);
    const Vector r_top = normal_vector(rng, 5), r_bot = normal_vector(rng, 3);
    const auto ref = augmented_oracle(d, a, r_top, r_bot);
    const auto sn = solve_augmented(DiagonalMatrix(d), a, r_top, r_bot, AugmentedPath::Normal);
    const auto sa = solve_augmented(DiagonalMatrix(d), a, r_top, r_bot, AugmentedPath::Augmented);
    EXPECT_LT(testing::rel_diff(sn.dx, ref.dx), 1e-8);
    EXPECT_LT(testing::rel_diff(sa.dx, ref.dx), 1e-8);
    EXPECT_LT(testing::rel_diff(sn.dlam, ref.dlam), 1e-8);
    EXPECT_LT(testing::rel_diff(sa.dlam, sn.dlam), 1e-8);
  }
}

TEST(SolveAugmented, RejectsBadInput) {
  const Matrix a{{1.0, 1.0}};
  EXPECT_THROW(solve_augmented(DiagonalMatrix(Vector{{1.0, -1.0}}), a, Vector::Zero(2), Vector::Ones(1)),
               Error);
  EXPECT_THROW(solve_augmented(DiagonalMatrix(Vector::Ones(3)), a, Vector::Zero(3), Vector::Ones(1)),
               Error);
}

TEST(QuasiDefiniteLdlt, ReconstructsMatrix) {
  Rng rng = make_rng(3, 901);
  const Index n = 4, m = 2;
  const Matrix a = normal_matrix(rng, m, n);
  Matrix k = Matrix::Zero(n + m, n + m);
  k.topLeftCorner(n, n) = -Matrix(uniform_vector(rng, n, 1.0, 2.0).asDiagonal());
  k.bottomLeftCorner(m, n) = a;
  k.topRightCorner(n, m) = a.transpose();
  const QuasiDefiniteLdlt f(k);
  const Matrix l = f.unit_lower();
  const Matrix rebuilt = l * f.pivots().asDiagonal() * l.transpose();
  EXPECT_LT((rebuilt - k).norm(), 1e-12 * k.norm());
  const Vector rhs = normal_vector(rng, n + m);
  EXPECT_LT(testing::rel_diff(f.solve(rhs), dense_lu_solve(k, rhs)), 1e-10);
}

TEST(QuasiDefiniteLdlt, StrictPolicyThrowsOnZeroPivot) {
  const Matrix k = Matrix::Zero(2, 2);
  try {
    QuasiDefiniteLdlt f(k);
    FAIL() << "expected SingularSystem";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularSystem);
  }
}

TEST(QuasiDefiniteLdlt, ModifiedPolicyReplacesPivot) {
  Matrix k{{1.0, 1.0}, {1.0, 1.0}};
  const QuasiDefiniteLdlt f(k, 1e-14, PivotPolicy::Modified);
  EXPECT_EQ(f.replaced_pivots(), 1);
  EXPECT_TRUE(f.solve(Vector::Ones(2)).allFinite());
}

TEST(SymEigMin, Examples) {
  EXPECT_NEAR(sym_eig_min(Matrix::Identity(3, 3)), 1.0, 1e-14);
  EXPECT_NEAR(sym_eig_min(Matrix(Vector{{3.0, -2.0}}.asDiagonal())), -2.0, 1e-14);
  EXPECT_TRUE(std::isinf(sym_eig_min(Matrix(0, 0))));
}

TEST(SymEigMin, MatchesPowerIteration) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng = make_rng(seed, 902);
    const Matrix b = normal_matrix(rng, 6, 6);
    const Matrix m = 0.5 * (b + b.transpose());
    EXPECT_NEAR(sym_eig_min(m), testing::power_min_eig(m), 1e-8);
  }
}

TEST(SymEigMin, RejectsAsymmetric) {
  try {
    sym_eig_min(Matrix{{1.0, 2.0}, {0.0, 1.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSymmetric);
  }
}

TEST(NullspaceBasis, Examples) {
  const Matrix z = nullspace_basis(Matrix{{1.0, 1.0}});
  ASSERT_EQ(z.cols(), 1);
  EXPECT_NEAR(std::abs(z(0, 0)), 1.0 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(z(0, 0), -z(1, 0), 1e-14);
  EXPECT_EQ(nullspace_basis(Matrix::Identity(2, 2)).cols(), 0);
}

TEST(NullspaceBasis, RandomResidualAndOrthonormality) {
  Rng rng = make_rng(1, 903);
  const Matrix a = normal_matrix(rng, 3, 5);
  const Matrix z = nullspace_basis(a);
  ASSERT_EQ(z.cols(), 2);
  EXPECT_LE((a * z).norm(), 1e-10);
  EXPECT_LE((z.transpose() * z - Matrix::Identity(2, 2)).norm(), 1e-10);
}

TEST(NullspaceBasis, RankDeficient) {
  try {
    nullspace_basis(Matrix{{1.0, 1.0, 0.0}, {2.0, 2.0, 0.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RankDeficient);
  }
}

TEST(SpectralNorm, MatchesPowerIteration) {
  Rng rng = make_rng(2, 904);
  const Matrix m = normal_matrix(rng, 4, 7);
  EXPECT_NEAR(spectral_norm(m), testing::power_spectral_norm(m), 1e-8);
  EXPECT_EQ(spectral_norm(Matrix(0, 3)), 0.0);
}

TEST(RequireFinite, ThrowsNonFinite) {
  Vector v{{1.0, std::nan("")}};
  try {
    require_finite(v, "v");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonFinite);
  }
}

TEST(Random, StreamsAreReproducible) {
  Rng a = make_rng(5, 1), b = make_rng(5, 1), c = make_rng(5, 2);
  const Vector va = normal_vector(a, 8), vb = normal_vector(b, 8), vc = normal_vector(c, 8);
  EXPECT_EQ(va, vb);
  EXPECT_NE(va, vc);
}

TEST(Random, OrthogonalMatrix) {
  Rng rng = make_rng(0, 3);
  const Matrix q = random_orthogonal(rng, 6);
  EXPECT_LE((q.transpose() * q - Matrix::Identity(6, 6)).norm(), 1e-12);
}

TEST(Random, SampleWithoutReplacement) {
  Rng rng = make_rng(0, 4);
  const auto idx = sample_without_replacement(rng, 50, 12);
  ASSERT_EQ(idx.size(), 12u);
  EXPECT_TRUE(std::is_sorted(idx.begin(), idx.end()));
  EXPECT_EQ(std::set<Index>(idx.begin(), idx.end()).size(), 12u);
  for (Index i : idx) EXPECT_TRUE(i >= 0 && i < 50);
}

}  // namespace
}  // namespace sqvar
