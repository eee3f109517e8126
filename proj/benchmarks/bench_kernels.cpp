#include <benchmark/benchmark.h>

#include "sqvar/cls.hpp"
#include "sqvar/linalg.hpp"
#include "sqvar/lp.hpp"
#include "sqvar/nmf.hpp"
#include "sqvar/random.hpp"

using namespace sqvar;

static void BM_SolveAugmented(benchmark::State& state) {
  const Index m = state.range(0), n = 4 * m;
  const auto path = state.range(1) ? AugmentedPath::Augmented : AugmentedPath::Normal;
  Rng rng = make_rng(0, 1000);
  const Matrix a = uniform_matrix(rng, m, n);
  const DiagonalMatrix d(uniform_vector(rng, n, 0.1, 10.0));
  const Vector top = normal_vector(rng, n), bot = normal_vector(rng, m);
  for (auto _ : state) benchmark::DoNotOptimize(solve_augmented(d, a, top, bot, path));
  state.SetLabel(path == AugmentedPath::Normal ? "normal" : "augmented");
}
BENCHMARK(BM_SolveAugmented)->ArgsProduct({{50, 200}, {0, 1}})->Unit(benchmark::kMillisecond);

static void BM_PdipDirection(benchmark::State& state) {
  const auto p = lp::gen_random_lp(10 * state.range(0), state.range(0), 0);
  const auto it = lp::init_iterate(p);
  for (auto _ : state) benchmark::DoNotOptimize(lp::pdip_direction(p, it, 0.1));
}
BENCHMARK(BM_PdipDirection)->Arg(50)->Arg(250)->Unit(benchmark::kMillisecond);

static void BM_SsvDirection(benchmark::State& state) {
  const auto p = lp::gen_random_lp(10 * state.range(0), state.range(0), 0);
  const auto it = lp::init_ssv_iterate(p);
  for (auto _ : state) benchmark::DoNotOptimize(lp::ssv_sqp_direction(p, it));
}
BENCHMARK(BM_SsvDirection)->Arg(50)->Arg(250)->Unit(benchmark::kMillisecond);

static void BM_NmfValueGrad(benchmark::State& state) {
  const auto p = nmf::gen_nmf(state.range(0), 10, 0);
  const Matrix v = nmf::initial_v(p, 0);
  for (auto _ : state) benchmark::DoNotOptimize(nmf::nmf_value_grad(p.m, v));
}
BENCHMARK(BM_NmfValueGrad)->Arg(200)->Arg(1000)->Unit(benchmark::kMicrosecond);

static void BM_ProjectL1Ball(benchmark::State& state) {
  Rng rng = make_rng(0, 1001);
  const Vector z = normal_vector(rng, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cls::project_l1_ball(z, 1.0));
}
BENCHMARK(BM_ProjectL1Ball)->Arg(2000)->Arg(20000);

static void BM_PowerValueGrad(benchmark::State& state) {
  const auto p = cls::gen_cls(1000, 207, 5, 1.0, 0);
  Rng rng = make_rng(0, 1002);
  const Vector v = uniform_vector(rng, 1000), w = uniform_vector(rng, 1000);
  for (auto _ : state) benchmark::DoNotOptimize(cls::power_value_grad(p, v, w, int(state.range(0))));
}
BENCHMARK(BM_PowerValueGrad)->Arg(2)->Arg(8)->Unit(benchmark::kMicrosecond);
