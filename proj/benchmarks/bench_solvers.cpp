#include <benchmark/benchmark.h>

#include "sqvar/bcqp.hpp"
#include "sqvar/lp.hpp"
#include "sqvar/nmf.hpp"

using namespace sqvar;

static void BM_LpSolve(benchmark::State& state) {
  const auto p = lp::gen_random_lp(500, 50, 0);
  lp::SolveOptions o;
  o.method = static_cast<lp::Method>(state.range(0));
  o.tau = o.method == lp::Method::Ssv ? 0.75 : 0.995;
  o.corrector = lp::MpcCorrector::Mehrotra;
  o.record_trace = false;
  int iters = 0;
  for (auto _ : state) iters = lp::lp_solve(p, o).iterations;
  state.counters["iterations"] = iters;
  state.SetLabel(lp::to_string(o.method));
}
BENCHMARK(BM_LpSolve)
    ->Arg(int(lp::Method::Pdip))
    ->Arg(int(lp::Method::Mpc))
    ->Arg(int(lp::Method::Ssv))
    ->Unit(benchmark::kMillisecond);

static void BM_QpSolve(benchmark::State& state) {
  const auto p = bcqp::gen_qp(500, 10.0, 0);
  const Vector x0 = bcqp::standard_start(500, 0);
  bcqp::BcOptions o;
  o.record_trace = false;
  int iters = 0;
  for (auto _ : state) {
    iters = state.range(0) ? bcqp::dss_gd_scaled_solve(p, x0.cwiseSqrt(), o).iterations
                           : bcqp::pg_solve(p, x0, o).iterations;
  }
  state.counters["iterations"] = iters;
  state.SetLabel(state.range(0) ? "dss-scaled" : "pg");
}
BENCHMARK(BM_QpSolve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_NmfSolve(benchmark::State& state) {
  const auto p = nmf::gen_nmf(200, 10, 0);
  const Matrix v0 = nmf::initial_v(p, 0);
  nmf::NmfOptions o;
  o.record_trace = false;
  const auto variant = static_cast<nmf::Variant>(state.range(0));
  int iters = 0;
  for (auto _ : state) iters = nmf::nmf_solve(p, variant, v0, o).iterations;
  state.counters["iterations"] = iters;
  state.SetLabel(nmf::to_string(variant));
}
BENCHMARK(BM_NmfSolve)
    ->Arg(int(nmf::Variant::GdPolyak))
    ->Arg(int(nmf::Variant::Lbfgs))
    ->Unit(benchmark::kMillisecond);
