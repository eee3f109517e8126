#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sqvar/nmf.hpp"
#include "sqvar/random.hpp"

namespace sqvar::nmf {
namespace {

Vector flat(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

Matrix shaped(const Vector& x, Index rows, Index cols) {
  return Eigen::Map<const Matrix>(x.data(), rows, cols);
}

constexpr Variant kAll[] = {Variant::Pg, Variant::PgPolyak, Variant::Gd, Variant::GdPolyak,
                            Variant::Lbfgs};

TEST(NmfValueGrad, DirectGradientMatchesFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const NmfProblem p = gen_nmf(6, 3, seed);
    Rng rng = make_rng(seed, 801);
    const Matrix x = uniform_matrix(rng, 6, 3);
    const auto vg = nmf_x_value_grad(p.m, x);
    const Vector fd = testing::fd_gradient(
        [&](const Vector& z) { return nmf_x_value_grad(p.m, shaped(z, 6, 3)).f; }, flat(x));
    EXPECT_LE(testing::rel_diff(flat(vg.g), fd), 1e-6) << "seed " << seed;
  }
}

TEST(NmfValueGrad, SubstitutedGradientMatchesFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const NmfProblem p = gen_nmf(6, 3, seed);
    Rng rng = make_rng(seed, 802);
    const Matrix v = uniform_matrix(rng, 6, 3, -1.0, 1.0);
    const auto vg = nmf_value_grad(p.m, v);
    const Vector fd = testing::fd_gradient(
        [&](const Vector& z) { return nmf_value_grad(p.m, shaped(z, 6, 3)).f; }, flat(v));
    EXPECT_LE(testing::rel_diff(flat(vg.g), fd), 1e-6) << "seed " << seed;
  }
}

TEST(NmfValueGrad, ZeroAtGeneratingFactor) {
  const NmfProblem p = gen_nmf(8, 2, 1);
  const auto vg = nmf_value_grad(p.m, p.u.cwiseSqrt());
  EXPECT_LE(vg.f, 1e-24);
  EXPECT_LE(vg.g.norm(), 1e-12);
}

TEST(NmfValueGrad, ValueAtOrigin) {
  const NmfProblem p = gen_nmf(5, 2, 2);
  const auto vg = nmf_value_grad(p.m, Matrix::Zero(5, 2));
  EXPECT_NEAR(vg.f, p.m.squaredNorm(), 1e-12 * p.m.squaredNorm());
  EXPECT_EQ(vg.g.norm(), 0.0);
}

TEST(GenNmf, Structure) {
  const NmfProblem p = gen_nmf(10, 4, 3);
  EXPECT_EQ(p.u.rows(), 10);
  EXPECT_EQ(p.u.cols(), 4);
  EXPECT_GE(p.u.minCoeff(), 0.0);
  EXPECT_LE(p.u.maxCoeff(), 1.0);
  EXPECT_LE((p.m - p.u * p.u.transpose()).norm(), 1e-12);
  EXPECT_EQ(p.rank, 4);
}

TEST(RelativeError, Examples) {
  const NmfProblem p = from_factor(Matrix::Ones(2, 1));
  EXPECT_EQ(relative_error(p.m, Matrix::Ones(2, 1)), 0.0);
  EXPECT_EQ(relative_error(p.m, Matrix::Zero(2, 1)), 1.0);
}

TEST(NmfSolve, GeneratingFactorNeedsNoIterations) {
  const NmfProblem p = gen_nmf(12, 3, 4);
  for (Variant v : kAll) {
    const auto r = nmf_solve(p, v, p.u.cwiseSqrt());
    EXPECT_TRUE(r.converged) << to_string(v);
    EXPECT_EQ(r.iterations, 0) << to_string(v);
  }
}

TEST(NmfSolve, EveryVariantConvergesWithNonnegativeFactor) {
  const NmfProblem p = gen_nmf(20, 3, 5);
  const Matrix v0 = initial_v(p, 5);
  for (Variant v : kAll) {
    const auto r = nmf_solve(p, v, v0);
    EXPECT_TRUE(r.converged) << to_string(v);
    EXPECT_LE(r.acc, 1e-4) << to_string(v);
    EXPECT_GE(r.x.minCoeff(), 0.0) << to_string(v);
    EXPECT_NEAR(relative_error(p.m, r.x), r.acc, 1e-12) << to_string(v);
    EXPECT_EQ(r.trace.size(), std::size_t(r.iterations) + 1) << to_string(v);
  }
}

TEST(NmfSolve, MonotoneVariantsDecrease) {
  const NmfProblem p = gen_nmf(15, 2, 6);
  const Matrix v0 = initial_v(p, 6);
  for (Variant v : {Variant::Pg, Variant::Gd, Variant::Lbfgs}) {
    const auto r = nmf_solve(p, v, v0);
    for (std::size_t k = 1; k < r.trace.size(); ++k)
      EXPECT_LE(r.trace.rows[k][1], r.trace.rows[k - 1][1]) << to_string(v) << " iter " << k;
  }
}

TEST(NmfSolve, IterationCap) {
  const NmfProblem p = gen_nmf(20, 3, 7);
  NmfOptions o;
  o.max_iter = 2;
  o.eps = 1e-14;
  const auto r = nmf_solve(p, Variant::Gd, initial_v(p, 7), o);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 2);
}

TEST(Variant, NamesRoundTrip) {
  for (Variant v : kAll) EXPECT_EQ(parse_variant(to_string(v)), v);
  EXPECT_THROW(parse_variant("newton"), Error);
}

TEST(InitialV, ScaleMatchesFactor) {
  const NmfProblem p = gen_nmf(30, 3, 8);
  const Matrix v0 = initial_v(p, 8);
  EXPECT_EQ(v0.rows(), 30);
  EXPECT_EQ(v0.cols(), 3);
  EXPECT_GE(v0.minCoeff(), 0.0);
  EXPECT_EQ(initial_v(p, 8), v0);
}

}  // namespace
}  // namespace sqvar::nmf
