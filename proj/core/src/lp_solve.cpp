#include <chrono>
#include <cmath>
#include <limits>

#include "sqvar/lp.hpp"
#include "sqvar/random.hpp"

namespace sqvar::lp {

namespace {

double joint_ratio(const Vector& a, const Vector& da, const Vector& b, const Vector& db,
                   double tau) {
  return std::min(ratio_step(a, da, tau), ratio_step(b, db, tau));
}

void step_duals(IpmIterate& it, const IpmDirection& d, double alpha) {
  it.lam += alpha * d.dlam;
  it.s += alpha * d.ds;
  it.t += alpha * d.dt;
}

}  // namespace

SolveResult lp_solve(const LpProblem& p, const SolveOptions& opts) {
  require(opts.eps > 0.0, ErrorCode::InvalidArgument, "lp_solve: eps must be positive");
  require(opts.tau > 0.0 && opts.tau <= 1.0, ErrorCode::OutOfRange, "lp_solve: tau not in (0, 1]");

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  SolveResult out;
  SsvIterate it = init_ssv_iterate(p);
  const bool ssv = opts.method == Method::Ssv;
  double best = std::numeric_limits<double>::infinity();
  double alpha_p = 0.0, alpha_d = 0.0, sigma = 0.0;

  for (int k = 0;; ++k) {
    const LpResiduals r = compute_residuals(p, it.base);
    out.iterations = k;
    out.res = r.res;
    if (opts.record_trace) out.trace.add({double(k), r.res, r.mu, alpha_p, alpha_d, sigma});

    if (!std::isfinite(r.res)) {
      out.status = Status::Diverged;
      out.message = "residual is not finite";
      break;
    }
    if (r.res <= opts.eps) {
      out.status = Status::Solved;
      break;
    }
    best = std::min(best, r.res);
    if (r.res > opts.divergence_factor * best) {
      out.status = Status::Diverged;
      out.message = "residual grew by more than the divergence factor over its best value";
      break;
    }
    if (k >= opts.max_iter) {
      out.status = Status::IterLimit;
      break;
    }
    if (elapsed() >= opts.max_seconds) {
      out.status = Status::TimeLimit;
      break;
    }

    try {
      IpmIterate& b = it.base;
      if (ssv) {
        const SsvDirection d = ssv_sqp_direction(p, it, opts.path, opts.pivots);
        alpha_p = joint_ratio(it.v, d.dv, it.y, d.dy, opts.tau);
        alpha_d = joint_ratio(b.s, d.base.ds, b.t, d.base.dt, opts.tau);
        sigma = 0.0;
        it.v += alpha_p * d.dv;
        it.y += alpha_p * d.dy;
        if (opts.reset_primal_from_squares) {
          b.x = it.v.cwiseAbs2();
          b.w = it.y.cwiseAbs2();
        } else {
          b.x += alpha_p * d.base.dx;
          b.w += alpha_p * d.base.dw;
        }
        step_duals(b, d.base, alpha_d);
      } else {
        IpmDirection d;
        if (opts.method == Method::Mpc) {
          MpcDirection m = mpc_direction(p, b, opts.path, opts.corrector, opts.pivots);
          d = std::move(m.delta);
          sigma = m.sigma;
        } else {
          sigma = opts.sigma;
          d = pdip_direction(p, b, sigma, opts.path, opts.pivots);
        }
        alpha_p = joint_ratio(b.x, d.dx, b.w, d.dw, opts.tau);
        alpha_d = joint_ratio(b.s, d.ds, b.t, d.dt, opts.tau);
        b.x += alpha_p * d.dx;
        b.w += alpha_p * d.dw;
        step_duals(b, d, alpha_d);
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SingularSystem && e.code() != ErrorCode::InvalidArgument) throw;
      out.status = Status::Diverged;
      out.message = std::string("iteration ") + std::to_string(k) + ": " + e.what();
      break;
    }
  }

  out.seconds = elapsed();
  out.objective = p.c.dot(it.base.x);
  out.iterate = std::move(it.base);
  if (ssv) {
    out.v = std::move(it.v);
    out.y = std::move(it.y);
  }
  return out;
}

LpProblem gen_random_lp(Index n, Index m, std::uint64_t seed, bool check_rank) {
  require(n >= 1 && m >= 0 && m <= n, ErrorCode::InvalidArgument, "gen_random_lp: need 0 <= m <= n");
  Rng rng = make_rng(seed, 21);
  Matrix a = uniform_matrix(rng, m, n);
  Vector c = uniform_vector(rng, n);
  const Vector x_feas = uniform_vector(rng, n);
  Vector b = a * x_feas;
  const Index nu = static_cast<Index>(std::floor(0.05 * double(m)));
  std::vector<Index> upper = sample_without_replacement(rng, n, nu);
  Vector u = uniform_vector(rng, nu, 1.0, 21.0);
  return LpProblem::create(std::move(a), std::move(b), std::move(c), std::move(upper), std::move(u),
                           check_rank);
}

}  // namespace sqvar::lp
