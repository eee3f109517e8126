#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "sqvar/cls.hpp"
#include "sqvar/random.hpp"

namespace sqvar::cls {
namespace {

// Projected gradient on x directly over the l1 ball, step 1 / ||A||^2.
Vector l1_constrained_ls(const ClsProblem& p, double r, int iters) {
  const double step = 1.0 / std::pow(testing::power_spectral_norm(p.a), 2);
  Vector x = Vector::Zero(p.cols());
  for (int k = 0; k < iters; ++k)
    x = testing::l1_projection_by_bisection(x - step * p.a.transpose() * (p.a * x - p.b), r);
  return x;
}

TEST(ProjectL2Ball, Examples) {
  EXPECT_EQ(project_l2_ball(Vector{{3.0, 0.0}}, 1.0), (Vector{{1.0, 0.0}}));
  EXPECT_LE((project_l2_ball(Vector{{6.0, 8.0}}, 5.0) - Vector{{3.0, 4.0}}).norm(), 1e-15);
  EXPECT_EQ(project_l2_ball(Vector{{0.1, 0.2}}, 1.0), (Vector{{0.1, 0.2}}));
}

TEST(ProjectL1Ball, Examples) {
  EXPECT_EQ(project_l1_ball(Vector{{3.0, 0.0}}, 1.0), (Vector{{1.0, 0.0}}));
  EXPECT_LE((project_l1_ball(Vector{{2.0, -1.0}}, 1.0) - Vector{{1.0, 0.0}}).norm(), 1e-15);
  EXPECT_LE((project_l1_ball(Vector{{1.0, 1.0}}, 1.0) - Vector{{0.5, 0.5}}).norm(), 1e-15);
  EXPECT_THROW(project_l1_ball(Vector{{1.0}}, 0.0), Error);
}

TEST(ProjectL1Ball, MatchesBisection) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng = make_rng(seed, 901);
    const Vector z = 3.0 * normal_vector(rng, 25);
    const double r = uniform_vector(rng, 1, 0.1, 5.0)[0];
    const Vector got = project_l1_ball(z, r);
    EXPECT_LE((got - testing::l1_projection_by_bisection(z, r)).norm(), 1e-9) << "seed " << seed;
    EXPECT_LE(got.lpNorm<1>(), r * (1.0 + 1e-12));
  }
}

TEST(PowerValueGrad, MatchesFiniteDifferences) {
  const ClsProblem p = gen_cls(8, 5, 3, 0.1, 1);
  for (int power : {1, 2, 4, 6, 8}) {
    Rng rng = make_rng(std::uint64_t(power), 902);
    const Vector v = uniform_vector(rng, 8, 0.2, 1.0);
    const Vector w = uniform_vector(rng, 8, 0.2, 1.0);
    const auto vg = power_value_grad(p, v, w, power);
    const Vector r = p.a * (v.array().pow(power) - w.array().pow(power)).matrix() - p.b;
    EXPECT_NEAR(vg.g, 0.5 * r.squaredNorm(), 1e-12 * (1.0 + vg.g));
    Vector vw(16);
    vw << v, w;
    const Vector fd = testing::fd_gradient(
        [&](const Vector& z) { return power_value_grad(p, z.head(8), z.tail(8), power).g; }, vw);
    Vector got(16);
    got << vg.gv, vg.gw;
    EXPECT_LE(testing::rel_diff(got, fd), 1e-6) << "power " << power;
  }
}

TEST(TauStage, FromReference) {
  const Vector beta0{{0.25, 0.0, -1.0}};
  const TauStage one = TauStage::from_reference(beta0, 1);
  EXPECT_EQ(one.power(), 2);
  EXPECT_EQ(one.ball(), Ball::L2);
  EXPECT_DOUBLE_EQ(one.r, 1.25);
  EXPECT_DOUBLE_EQ(one.radius(), std::sqrt(1.25));
  const TauStage half = TauStage::from_reference(beta0, 2);
  EXPECT_EQ(half.power(), 2);
  EXPECT_EQ(half.ball(), Ball::L1);
  EXPECT_DOUBLE_EQ(half.r, 1.5);
  EXPECT_DOUBLE_EQ(half.radius(), 1.5);
  EXPECT_THROW(TauStage::from_reference(beta0, 3), Error);
}

TEST(Represented, StageSign) {
  const TauStage s4 = TauStage::from_reference(Vector{{1.0}}, 4);
  EXPECT_DOUBLE_EQ(represented(s4, Vector{{2.0}}, Vector{{1.0}})[0], 15.0);
}

TEST(PgArmijo, StaysFeasible) {
  const ClsProblem p = gen_cls(30, 20, 4, 0.05, 2);
  for (int l : {1, 2, 4}) {
    const TauStage st = TauStage::from_reference(p.beta0, l);
    Rng rng = make_rng(std::uint64_t(l), 903);
    Vector v = normal_vector(rng, 30), w = normal_vector(rng, 30);
    project_stage(st, v, w);
    PgOptions o;
    o.record_trace = true;
    const auto r = pg_armijo_solve(p, st, v, w, o);
    Vector vw(60);
    vw << r.v, r.w;
    const double size = st.ball() == Ball::L2 ? vw.norm() : vw.lpNorm<1>();
    EXPECT_LE(size, st.radius() * (1.0 + 1e-12)) << "l " << l;
    for (std::size_t k = 1; k < r.trace.size(); ++k)
      EXPECT_LE(r.trace.rows[k][1], r.trace.rows[k - 1][1]) << "l " << l;
  }
}

TEST(PgArmijo, StationaryStartTakesNoSteps) {
  const ClsProblem p = gen_cls(10, 8, 2, 0.0, 3);
  const TauStage st = TauStage::from_reference(p.beta0, 1);
  const auto r = pg_armijo_solve(p, st, Vector::Zero(10), Vector::Zero(10));
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 0);
}

TEST(Continuation, NoiselessRecoveryMatchesConvexSolver) {
  const ClsProblem p = gen_cls(20, 15, 2, 0.0, 4);
  PgOptions o;
  o.max_iter = 20000;
  o.tol = 1e-10;
  const auto res = continuation_solve(p, {1}, 4, o);
  const Vector oracle = l1_constrained_ls(p, p.beta0.lpNorm<1>(), 20000);
  EXPECT_LE((oracle - p.beta0).norm(), 1e-4 * p.beta0.norm());
  EXPECT_LE((res.x - oracle).norm(), 1e-3 * p.beta0.norm());
  ASSERT_EQ(res.stages.size(), 1u);
  EXPECT_LE(res.stages[0].recovery_error, 1e-3);
}

TEST(Continuation, StagesInOrder) {
  const ClsProblem p = gen_cls(40, 25, 3, 0.01, 5);
  const auto res = continuation_solve(p, {1, 2, 4}, 5);
  ASSERT_EQ(res.stages.size(), 3u);
  EXPECT_DOUBLE_EQ(res.stages[0].tau, 1.0);
  EXPECT_DOUBLE_EQ(res.stages[1].tau, 0.5);
  EXPECT_DOUBLE_EQ(res.stages[2].tau, 0.25);
  for (const auto& s : res.stages) EXPECT_GE(s.objective_ratio, 0.0);
}

TEST(ParseTaus, Examples) {
  EXPECT_EQ(parse_taus("1,1/2,0.25"), (std::vector<int>{1, 2, 4}));
  EXPECT_EQ(parse_taus(" 1 , 1/8 "), (std::vector<int>{1, 8}));
  EXPECT_THROW(parse_taus("1/3"), Error);
  EXPECT_THROW(parse_taus("abc"), Error);
  EXPECT_THROW(parse_taus("2"), Error);
  EXPECT_THROW(parse_taus(""), Error);
}

}  // namespace
}  // namespace sqvar::cls
