// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any selected criterion fails.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "instances.hpp"
#include "oracles.hpp"
#include "sqvar/bcqp.hpp"
#include "sqvar/cls.hpp"
#include "sqvar/lp.hpp"
#include "sqvar/mps.hpp"
#include "sqvar/nmf.hpp"
#include "sqvar/optcert.hpp"
#include "sqvar/random.hpp"

namespace {

using namespace sqvar;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double mean(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / double(xs.size());
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

bool within(double x, double lo, double hi) { return x >= lo && x <= hi; }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [x]");
  }
};

void info(const std::string& line) { std::printf("INFO  %s\n", line.c_str()); }

struct LpRun {
  double mean_iters = 0.0;
  int failures = 0;
};

LpRun run_random_lp(Index n, Index m, const std::vector<std::uint64_t>& seeds, lp::Method method,
                    double tau, lp::MpcCorrector corrector) {
  std::vector<double> iters;
  LpRun out;
  for (auto seed : seeds) {
    const auto p = lp::gen_random_lp(n, m, seed);
    lp::SolveOptions o;
    o.method = method;
    o.tau = tau;
    o.corrector = corrector;
    o.record_trace = false;
    const auto r = lp::lp_solve(p, o);
    if (r.status != lp::Status::Solved) ++out.failures;
    iters.push_back(r.iterations);
  }
  out.mean_iters = mean(iters);
  return out;
}

std::vector<std::uint64_t> seed_range(std::uint64_t count) {
  std::vector<std::uint64_t> s(count);
  std::iota(s.begin(), s.end(), 0);
  return s;
}

Outcome random_lp_small() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto seeds = seed_range(10);
  const auto mpc = run_random_lp(500, 50, seeds, lp::Method::Mpc, 0.995, lp::MpcCorrector::Mehrotra);
  const auto s50 = run_random_lp(500, 50, seeds, lp::Method::Ssv, 0.5, lp::MpcCorrector::Mehrotra);
  const auto s75 = run_random_lp(500, 50, seeds, lp::Method::Ssv, 0.75, lp::MpcCorrector::Mehrotra);
  const double secs = seconds_since(t0);
  o.check(mpc.failures == 0 && within(mpc.mean_iters, 13, 19), fmt("mpc mean %.1f in [13, 19]", mpc.mean_iters));
  o.check(s50.failures == 0 && within(s50.mean_iters, 53, 69), fmt("ssv(0.5) mean %.1f in [53, 69]", s50.mean_iters));
  o.check(s75.failures == 0 && within(s75.mean_iters, 33, 45), fmt("ssv(0.75) mean %.1f in [33, 45]", s75.mean_iters));
  o.check(secs <= 120.0, fmt("%.1f s <= 120 s", secs));
  const auto plain = run_random_lp(500, 50, seeds, lp::Method::Mpc, 0.995, lp::MpcCorrector::SigmaOnly);
  info(fmt("random LP (500, 50): mpc without second-order corrector term mean %.1f, %d unsolved",
           plain.mean_iters, plain.failures));
  return o;
}

Outcome random_lp_large() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto seeds = seed_range(3);
  const auto mpc = run_random_lp(2500, 1250, seeds, lp::Method::Mpc, 0.995, lp::MpcCorrector::Mehrotra);
  const auto ssv = run_random_lp(2500, 1250, seeds, lp::Method::Ssv, 0.9, lp::MpcCorrector::Mehrotra);
  const double secs = seconds_since(t0);
  o.check(mpc.failures == 0 && within(mpc.mean_iters, 16, 22), fmt("mpc mean %.1f in [16, 22]", mpc.mean_iters));
  o.check(ssv.failures == 0 && within(ssv.mean_iters, 33, 46), fmt("ssv(0.9) mean %.1f in [33, 46]", ssv.mean_iters));
  o.check(secs <= 1200.0, fmt("%.0f s <= 1200 s", secs));
  return o;
}

Outcome netlib(const std::filesystem::path& dir) {
  Outcome o;
  const double afiro_opt = -464.753;
  for (const auto& [name, bound] : std::vector<std::pair<std::string, int>>{{"afiro", 51}, {"adlittle", 66}}) {
    const auto path = dir / (name + ".mps");
    if (!std::filesystem::exists(path)) {
      o.check(false, name + ".mps missing");
      continue;
    }
    const auto g = mps::read_mps_file(path);
    const auto [p, map] = mps::to_lp_u(g);
    lp::SolveOptions s;
    s.method = lp::Method::Mpc;
    s.tau = 0.9;
    s.eps = 1e-5;
    s.corrector = lp::MpcCorrector::Mehrotra;
    s.record_trace = false;
    const auto r = lp::lp_solve(p, s);
    const bool ok = r.status == lp::Status::Solved && r.iterations <= bound;
    o.check(ok, fmt("%s %d iters <= %d (%s)", name.c_str(), r.iterations, bound, lp::to_string(r.status).c_str()));
    if (name != "afiro") continue;

    lp::SolveOptions ref = s;
    ref.method = lp::Method::Pdip;
    ref.eps = 1e-9;
    const auto rr = lp::lp_solve(p, ref);
    const double oracle = map.original_objective(rr.objective);
    o.check(rr.status == lp::Status::Solved && std::abs(oracle - afiro_opt) <= 1e-3 * std::abs(afiro_opt),
            fmt("pdip(1e-9) oracle objective %.6f", oracle));
    const double got = map.original_objective(r.objective);
    o.check(std::abs(got - afiro_opt) <= 1e-3 * std::abs(afiro_opt), fmt("afiro objective %.4f", got));
  }
  return o;
}

Outcome qp_ratios() {
  Outcome o;
  const auto t0 = Clock::now();
  const bcqp::BcOptions opts;
  for (Index n : {100, 500}) {
    for (double kappa : {10.0, 100.0}) {
      std::vector<double> pg_it, dss_it;
      int failures = 0, mismatches = 0;
      for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const auto p = bcqp::gen_qp(n, kappa, seed);
        const Vector x0 = bcqp::standard_start(n, seed);
        const auto pg = bcqp::pg_solve(p, x0, opts);
        const auto dss = bcqp::dss_gd_scaled_solve(p, x0.cwiseSqrt(), opts);
        if (!pg.converged || !dss.converged) ++failures;
        if (std::abs(pg.objective - dss.objective) > 10.0 * opts.tol * (1.0 + std::abs(pg.objective)))
          ++mismatches;
        pg_it.push_back(pg.iterations);
        dss_it.push_back(dss.iterations);
      }
      const double ratio = mean(dss_it) / mean(pg_it);
      o.check(failures == 0 && mismatches == 0 && within(ratio, 1.0, 3.5),
              fmt("(%ld, %g): ratio %.2f, %d unconverged, %d objective mismatches", long(n), kappa, ratio,
                  failures, mismatches));
    }
  }
  const double secs = seconds_since(t0);
  o.check(secs <= 180.0, fmt("%.1f s <= 180 s", secs));
  return o;
}

Outcome certificates() {
  Outcome o;
  int roundtrip_bad = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = testing::make_bc_instance(seed, seed % 2 == 0);
    const auto bc = optcert::bc_weak_2n_check(inst.x, inst.g, inst.q, 1e-8);
    const auto grad = [&](const Vector& x) -> Vector { return inst.q * x + inst.b; };
    const auto hess = [&](const Vector&) -> Matrix { return inst.q; };
    Rng rng = make_rng(seed, 950);
    const Vector flips = normal_vector(rng, inst.x.size());
    const Vector root = inst.x.cwiseSqrt();
    for (int sign = 0; sign < 2; ++sign) {
      Vector v = root;
      if (sign == 1)
        for (Index i = 0; i < v.size(); ++i)
          if (flips[i] < 0) v[i] = -v[i];
      const auto dss = optcert::dss_bc_2n_check(grad, hess, v, 1e-8);
      if (!dss.is_first_order || dss.is_2n != bc.is_weak_2n || bc.is_weak_2n != inst.free_psd) ++roundtrip_bad;
    }
  }
  o.check(roundtrip_bad == 0, fmt("QP roundtrip %d/400 mismatches", roundtrip_bad));

  int dominance_bad = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = testing::make_nlp_instance(1000 + seed, 1e-3);
    auto eps = optcert::ssv_approx_2n_measure(inst.point, inst.v);
    eps.eps1 = std::max(eps.eps1, 1e-12);
    eps.eps2 = std::max(eps.eps2, 1e-12);
    eps.eps3 = std::max(eps.eps3, 1e-12);
    const auto t = optcert::transfer_ssv_measures(inst.point, eps, inst.zeta);
    const auto d = optcert::nlp_approx_2n_measure(inst.point, t.a, inst.zeta);
    const double slack = 1e-12;
    if (d.eps_foc > t.eps_foc + slack || d.eps_pf > t.eps_pf + slack || d.eps_cs > t.eps_cs + slack ||
        d.eps_pd > t.eps_pd + slack || d.eps_soc > t.eps_soc + slack)
      ++dominance_bad;
  }
  o.check(dominance_bad == 0, fmt("transfer dominance %d/50 violations", dominance_bad));

  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng = make_rng(seed, 951);
    const Index n = 4, m = 2;
    optcert::NlpPoint p;
    p.x = normal_vector(rng, n);
    p.s = Vector::Ones(m);
    p.grad_f = normal_vector(rng, n);
    p.c_val = Vector{{0.0, seed % 2 ? 0.0 : 1.0}};
    p.jac = normal_matrix(rng, m, n);
    const Matrix b = normal_matrix(rng, n, n);
    p.hess_l = 0.5 * (b + b.transpose());
    const auto r = optcert::nlp_approx_2n_measure(p, Vector::Zero(m), 0.1);
    const Matrix active = seed % 2 ? p.jac : Matrix(p.jac.topRows(1));
    const double brute = std::max(0.0, -testing::brute_force_min_curvature(active, p.hess_l, seed));
    worst = std::max(worst, std::abs(r.eps_soc - brute));
  }
  o.check(worst <= 1e-6, fmt("eps_soc vs brute force max diff %.1e <= 1e-6", worst));
  return o;
}

Outcome ssv_identities() {
  Outcome o;
  double worst_step = 0.0, worst_square = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng = make_rng(seed, 960);
    const Index m = 3 + Index(seed % 5), n = m + 5 + Index(seed % 7);
    const Matrix a = uniform_matrix(rng, m, n);
    const Vector x = uniform_vector(rng, n, 0.5, 2.0);
    const auto p = lp::LpProblem::create(a, a * x, uniform_vector(rng, n), {}, Vector());
    lp::SsvIterate it;
    it.base.x = x;
    it.base.s = uniform_vector(rng, n, 0.5, 2.0);
    it.base.lam = normal_vector(rng, m);
    it.v = x.cwiseSqrt();
    const auto s = lp::ssv_sqp_direction(p, it);
    const auto d = lp::pdip_direction(p, it.base, 0.0);
    worst_step = std::max(worst_step, testing::rel_diff(s.base.dx, 2.0 * d.dx));

    const double alpha = uniform_vector(rng, 1, 0.1, 1.0)[0];
    const Vector x1 = x + alpha * s.base.dx;
    const Vector v1 = it.v + alpha * s.dv;
    const Vector predicted = 0.25 * alpha * alpha * s.base.dx.cwiseAbs2().cwiseQuotient(x);
    worst_square = std::max(worst_square, testing::rel_diff(v1.cwiseAbs2() - x1, predicted));
  }
  o.check(worst_step <= 1e-9, fmt("dx_ssv vs 2 dx_pdip max rel %.1e <= 1e-9", worst_step));
  o.check(worst_square <= 1e-9, fmt("squared residual after step max rel %.1e <= 1e-9", worst_square));
  return o;
}

Outcome nmf_medians() {
  Outcome o;
  const auto t0 = Clock::now();
  std::map<nmf::Variant, std::vector<double>> iters;
  int failures = 0;
  nmf::NmfOptions opts;
  opts.record_trace = false;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = nmf::gen_nmf(200, 10, seed);
    const Matrix v0 = nmf::initial_v(p, seed);
    for (auto v : {nmf::Variant::Lbfgs, nmf::Variant::GdPolyak, nmf::Variant::Pg}) {
      const auto r = nmf::nmf_solve(p, v, v0, opts);
      if (!r.converged) ++failures;
      iters[v].push_back(r.iterations);
    }
  }
  const double secs = seconds_since(t0);
  const double lb = median(iters[nmf::Variant::Lbfgs]);
  const double gp = median(iters[nmf::Variant::GdPolyak]);
  const double pg = median(iters[nmf::Variant::Pg]);
  o.check(failures == 0, fmt("%d unconverged", failures));
  o.check(lb <= gp / 3.0, fmt("median lbfgs %.1f <= gd-polyak / 3 = %.1f", lb, gp / 3.0));
  o.check(gp <= pg, fmt("median gd-polyak %.1f <= pg %.1f", gp, pg));
  o.check(secs <= 300.0, fmt("%.1f s <= 300 s", secs));
  return o;
}

Outcome cls_medians() {
  Outcome o;
  const auto t0 = Clock::now();
  const std::vector<int> ls{1, 2, 4, 8};
  std::vector<std::vector<double>> err(ls.size());
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto p = cls::gen_cls(1000, 207, 5, 1.0, seed);
    const auto r = cls::continuation_solve(p, ls, seed);
    for (std::size_t k = 0; k < ls.size(); ++k) err[k].push_back(r.stages[k].recovery_error);
  }
  const double secs = seconds_since(t0);
  const double e1 = median(err[0]), e2 = median(err[1]), e4 = median(err[2]), e8 = median(err[3]);
  info(fmt("cls median recovery error: tau=1 %.4f, 1/2 %.4f, 1/4 %.4f, 1/8 %.4f", e1, e2, e4, e8));
  o.check(e2 < e1, fmt("median error tau=1/2 %.4f < tau=1 %.4f", e2, e1));
  const double change = std::abs(e8 - e4) / e4;
  o.check(change <= 0.2, fmt("tau=1/4 to 1/8 change %.3f <= 0.2", change));
  o.check(secs <= 600.0, fmt("%.1f s <= 600 s", secs));
  return o;
}

Outcome gradient_oracles() {
  Outcome o;
  double worst_g = 0.0, worst_h = 0.0, worst_nmf = 0.0, worst_cls = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng = make_rng(seed, 970);
    const Index n = 6;
    const Matrix b = normal_matrix(rng, n, n);
    const Matrix q = 0.5 * (b + b.transpose());
    const Vector lin = normal_vector(rng, n);
    const Vector v = normal_vector(rng, n);
    const auto f_grad = [&](const Vector& x) -> Vector { return q * x + lin; };
    const auto big_f = [&](const Vector& w) {
      const Vector x = w.cwiseProduct(w);
      return 0.5 * x.dot(q * x) + lin.dot(x);
    };
    const auto big_grad = [&](const Vector& w) -> Vector {
      return optcert::dss_gradient(w, f_grad(w.cwiseProduct(w)));
    };
    worst_g = std::max(worst_g, testing::rel_diff(big_grad(v), testing::fd_gradient(big_f, v)));
    const Matrix h = optcert::dss_hessian(v, f_grad(v.cwiseProduct(v)), q);
    worst_h = std::max(worst_h, testing::rel_diff(h, testing::fd_jacobian(big_grad, v)));

    const auto np = nmf::gen_nmf(7, 3, seed);
    const Matrix vm = uniform_matrix(rng, 7, 3, -1.0, 1.0);
    const auto vg = nmf::nmf_value_grad(np.m, vm);
    const Vector flat = Eigen::Map<const Vector>(vm.data(), vm.size());
    const Vector fd = testing::fd_gradient(
        [&](const Vector& z) { return nmf::nmf_value_grad(np.m, Eigen::Map<const Matrix>(z.data(), 7, 3)).f; },
        flat);
    worst_nmf = std::max(worst_nmf, testing::rel_diff(Eigen::Map<const Vector>(vg.g.data(), vg.g.size()), fd));

    const int power = std::vector<int>{2, 4, 6, 8}[seed % 4];
    const auto cp = cls::gen_cls(10, 6, 3, 0.1, seed);
    const Vector cv = uniform_vector(rng, 10, 0.2, 1.0);
    const Vector cw = uniform_vector(rng, 10, 0.2, 1.0);
    const auto pg = cls::power_value_grad(cp, cv, cw, power);
    Vector vw(20), got(20);
    vw << cv, cw;
    got << pg.gv, pg.gw;
    const Vector cfd = testing::fd_gradient(
        [&](const Vector& z) { return cls::power_value_grad(cp, z.head(10), z.tail(10), power).g; }, vw);
    worst_cls = std::max(worst_cls, testing::rel_diff(got, cfd));
  }
  o.check(worst_g <= 1e-6, fmt("substituted QP gradient %.1e", worst_g));
  o.check(worst_h <= 1e-6, fmt("substituted QP Hessian %.1e", worst_h));
  o.check(worst_nmf <= 1e-6, fmt("nmf chain rule %.1e", worst_nmf));
  o.check(worst_cls <= 1e-6, fmt("cls power gradient %.1e", worst_cls));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sqvar acceptance checks"};
  std::vector<int> selected;
  std::string data_dir = SQVAR_TEST_DATA_DIR;
  app.add_option("criteria", selected, "criteria to run (default: all but 2)")->check(CLI::Range(1, 9));
  app.add_option("--data-dir", data_dir, "directory holding netlib/*.mps");
  CLI11_PARSE(app, argc, argv);
  if (selected.empty()) selected = {1, 3, 4, 5, 6, 7, 8, 9};

  const std::map<int, std::pair<std::string, std::function<Outcome()>>> criteria{
      {1, {"random LP (500, 50) iteration means", random_lp_small}},
      {2, {"random LP (2500, 1250) iteration means", random_lp_large}},
      {3, {"netlib afiro/adlittle", [&] { return netlib(std::filesystem::path(data_dir) / "netlib"); }}},
      {4, {"QP substitution vs projected gradient", qp_ratios}},
      {5, {"optimality certificates", certificates}},
      {6, {"SSV step identities", ssv_identities}},
      {7, {"NMF median iterations", nmf_medians}},
      {8, {"CLS recovery across tau", cls_medians}},
      {9, {"gradient oracles", gradient_oracles}},
  };

  int failed = 0;
  for (int id : selected) {
    const auto& [name, fn] = criteria.at(id);
    Outcome out;
    try {
      out = fn();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s  [%d] %s: %s\n", out.pass ? "PASS" : "FAIL", id, name.c_str(), out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
