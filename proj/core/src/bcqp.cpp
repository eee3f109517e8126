#include "sqvar/bcqp.hpp"

#include <cmath>

#include "sqvar/optcert.hpp"
#include "sqvar/random.hpp"

namespace sqvar::bcqp {

namespace {

constexpr std::uint64_t kQpStream = 11;
constexpr std::uint64_t kStartStream = 12;
constexpr double kAlphaFloor = 1e-30;

}  // namespace

QpProblem gen_qp(Index n, double kappa, std::uint64_t seed) {
  require(n >= 1, ErrorCode::InvalidArgument, "gen_qp: n must be positive");
  require(kappa >= 1.0, ErrorCode::InvalidArgument, "gen_qp: kappa must be >= 1");
  Rng rng = make_rng(seed, kQpStream);
  QpProblem p;
  p.kappa = kappa;
  if (kappa == 1.0) {
    p.q = Matrix::Identity(n, n);
  } else {
    const Matrix u = random_orthogonal(rng, n);
    const Vector lam = uniform_vector(rng, n, -std::log(kappa), 0.0).array().exp().matrix();
    p.q = u * lam.asDiagonal() * u.transpose();
    p.q = 0.5 * (p.q + p.q.transpose()).eval();
  }
  p.x_ref = normal_vector(rng, n);
  p.b = -(p.q * p.x_ref);
  return p;
}

Vector standard_start(Index n, std::uint64_t seed) {
  Rng rng = make_rng(seed, kStartStream);
  return normal_vector(rng, n).cwiseMax(0.0).array() + 1.0;
}

BcSolveResult pg_solve(const QpProblem& p, const Vector& x0, const BcOptions& opts) {
  require(x0.size() == p.size(), ErrorCode::DimensionMismatch, "pg_solve: x0 size");
  require(x0.size() == 0 || x0.minCoeff() >= 0.0, ErrorCode::InvalidArgument,
          "pg_solve: x0 must be nonnegative");
  BcSolveResult out;
  Vector x = x0;
  Vector g = p.gradient(x);
  double f = p.objective(x);
  double alpha = opts.first_alpha;
  double accepted = 0.0;

  for (int k = 0;; ++k) {
    const double prox = optcert::bc_prox_residual(g, x);
    if (opts.record_trace) out.trace.add({double(k), f, prox, accepted});
    out.iterations = k;
    out.prox_residual = prox;
    if (prox <= opts.tol) {
      out.converged = true;
      break;
    }
    if (k >= opts.max_iter) break;

    Vector trial;
    double f_trial = 0.0;
    for (;;) {
      trial = (x - alpha * g).cwiseMax(0.0);
      f_trial = p.objective(trial);
      const double bound = f + opts.armijo * g.dot(trial - x);
      if (f_trial < f && f_trial <= bound) break;
      alpha *= opts.shrink;
      if (alpha < kAlphaFloor) break;
    }
    if (alpha < kAlphaFloor) break;  // no decrease possible at working precision
    accepted = alpha;
    x = std::move(trial);
    f = f_trial;
    g = p.gradient(x);
    alpha *= opts.grow;
  }
  out.x = std::move(x);
  out.objective = f;
  return out;
}

BcSolveResult dss_gd_scaled_solve(const QpProblem& p, const Vector& v0, const BcOptions& opts) {
  require(v0.size() == p.size(), ErrorCode::DimensionMismatch, "dss_gd_scaled_solve: v0 size");
  require(v0.size() == 0 || v0.cwiseAbs().minCoeff() > 0.0, ErrorCode::InvalidArgument,
          "dss_gd_scaled_solve: v0 must have no zero entries");
  BcSolveResult out;
  Vector v = v0;
  Vector x = v.cwiseProduct(v);
  Vector g = p.gradient(x);
  double f = p.objective(x);
  double alpha = opts.first_alpha;
  double accepted = 0.0;
  const Vector q_diag = p.q.diagonal();

  for (int k = 0;; ++k) {
    const double prox = optcert::bc_prox_residual(g, x);
    const Vector grad_f = optcert::dss_gradient(v, g);
    const double grad_norm2 = grad_f.squaredNorm();
    if (opts.record_trace) out.trace.add({double(k), f, prox, accepted});
    out.iterations = k;
    out.prox_residual = prox;
    if ((opts.stop_on_grad_norm ? std::sqrt(grad_norm2) : prox) <= opts.tol) {
      out.converged = true;
      break;
    }
    if (k >= opts.max_iter) break;

    bool stepped = false;

    if (std::sqrt(grad_norm2) <= opts.scaled_switch) {
      Vector d = 2.0 * g + 4.0 * v.cwiseAbs2().cwiseProduct(q_diag);
      const double shift = std::max(0.0, opts.min_diag - d.minCoeff());
      d.array() += shift;
      const Vector trial = v - grad_f.cwiseQuotient(d);
      const Vector xt = trial.cwiseProduct(trial);
      const double ft = p.objective(xt);
      if (ft < f && ft <= f - opts.armijo * grad_f.dot(grad_f.cwiseQuotient(d))) {
        v = trial;
        x = xt;
        f = ft;
        accepted = 1.0;
        stepped = true;
      }
    }

    if (!stepped) {
      Vector trial;
      Vector xt;
      double ft = 0.0;
      for (;;) {
        trial = v - alpha * grad_f;
        xt = trial.cwiseProduct(trial);
        ft = p.objective(xt);
        if (ft < f && ft <= f - opts.armijo * alpha * grad_norm2) break;
        alpha *= opts.shrink;
        if (alpha < kAlphaFloor) break;
      }
      if (alpha < kAlphaFloor) break;
      accepted = alpha;
      v = std::move(trial);
      x = std::move(xt);
      f = ft;
      alpha *= opts.grow;
    }
    g = p.gradient(x);
  }
  out.x = std::move(x);
  out.v = std::move(v);
  out.objective = f;
  return out;
}

}  // namespace sqvar::bcqp
