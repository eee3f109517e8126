#include <algorithm>
#include <cmath>

#include "sqvar/lp.hpp"

namespace sqvar::lp {

namespace {

void check_interior(const IpmIterate& it) {
  const auto positive = [](const Vector& z) { return z.size() == 0 || z.minCoeff() > 0.0; };
  require(positive(it.x) && positive(it.s) && positive(it.w) && positive(it.t),
          ErrorCode::InvalidArgument, "direction: iterate is not strictly interior");
}

// Reduced saddle-point system shared by every direction: the caller supplies
// the diagonal D and the reduced right-hand side, everything else is
// back-substitution.
class ReducedSystem {
 public:
  ReducedSystem(const LpProblem& p, Vector d, AugmentedPath path, PivotPolicy policy)
      : solver_(DiagonalMatrix(std::move(d)), p.a, path, policy) {}

  AugmentedSolution solve(const Vector& r_top, const Vector& r_x) const {
    return solver_.solve(r_top, -r_x);
  }

 private:
  AugmentedSolver solver_;
};

Vector full_dual_residual(const LpProblem& p, const IpmIterate& it) {
  Vector r_c = p.a.transpose() * it.lam + it.s - p.c;
  for (Index k = 0; k < p.num_upper(); ++k) r_c[p.upper_idx[static_cast<std::size_t>(k)]] -= it.t[k];
  return r_c;
}

// PDIP elimination data for a fixed iterate. D depends only on the iterate,
// so one factorization serves any number of (r_xs, r_rw) right-hand sides.
class PdipSystem {
 public:
  PdipSystem(const LpProblem& p, const IpmIterate& it, AugmentedPath path, PivotPolicy policy)
      : p_(p), it_(it), r_c_(full_dual_residual(p, it)), r_x_(p.a * it.x - p.b),
        r_u_(select(it.x, p.upper_idx) + it.w - p.u), sys_(p, make_d(p, it), path, policy) {}

  IpmDirection solve(const Vector& r_xs, const Vector& r_rw) const {
    const IpmIterate& it = it_;
    Vector rhs = r_xs.cwiseQuotient(it.x) - r_c_;
    for (Index k = 0; k < p_.num_upper(); ++k) {
      const Index i = p_.upper_idx[static_cast<std::size_t>(k)];
      rhs[i] += (-r_rw[k] + it.t[k] * r_u_[k]) / it.w[k];
    }
    const AugmentedSolution sol = sys_.solve(rhs, r_x_);
    IpmDirection d;
    d.dx = sol.dx;
    d.dlam = sol.dlam;
    d.ds = (-r_xs - it.s.cwiseProduct(d.dx)).cwiseQuotient(it.x);
    d.dw = -r_u_ - select(d.dx, p_.upper_idx);
    d.dt = (-r_rw - it.t.cwiseProduct(d.dw)).cwiseQuotient(it.w);
    return d;
  }

 private:
  static Vector make_d(const LpProblem& p, const IpmIterate& it) {
    Vector d = it.s.cwiseQuotient(it.x);
    for (Index k = 0; k < p.num_upper(); ++k)
      d[p.upper_idx[static_cast<std::size_t>(k)]] += it.t[k] / it.w[k];
    return d;
  }

  const LpProblem& p_;
  const IpmIterate& it_;
  Vector r_c_;
  Vector r_x_;
  Vector r_u_;
  ReducedSystem sys_;
};

}  // namespace

IpmDirection pdip_direction(const LpProblem& p, const IpmIterate& it, double sigma,
                            AugmentedPath path, PivotPolicy policy) {
  require(sigma >= 0.0 && sigma <= 1.0, ErrorCode::OutOfRange, "pdip_direction: sigma not in [0, 1]");
  check_interior(it);
  const double target = sigma * duality_measure(it);
  const PdipSystem sys(p, it, path, policy);
  return sys.solve(it.x.cwiseProduct(it.s).array() - target,
                   it.t.cwiseProduct(it.w).array() - target);
}

MpcDirection mpc_direction(const LpProblem& p, const IpmIterate& it, AugmentedPath path,
                           MpcCorrector corrector, PivotPolicy policy) {
  check_interior(it);
  const PdipSystem sys(p, it, path, policy);
  MpcDirection out;
  const Vector xs = it.x.cwiseProduct(it.s);
  const Vector tw = it.t.cwiseProduct(it.w);
  out.affine = sys.solve(xs, tw);

  const IpmDirection& aff = out.affine;
  Vector pos_p(it.x.size() + it.w.size()), del_p(pos_p.size());
  Vector pos_d(pos_p.size()), del_d(pos_p.size());
  pos_p << it.x, it.w;
  del_p << aff.dx, aff.dw;
  pos_d << it.s, it.t;
  del_d << aff.ds, aff.dt;
  const double ap = ratio_step(pos_p, del_p, 1.0);
  const double ad = ratio_step(pos_d, del_d, 1.0);

  const double denom = double(pos_p.size());
  out.mu = duality_measure(it);
  out.mu_aff = ((it.x + ap * aff.dx).dot(it.s + ad * aff.ds) +
                (it.w + ap * aff.dw).dot(it.t + ad * aff.dt)) /
               denom;
  const double ratio = out.mu > 0.0 ? out.mu_aff / out.mu : 0.0;
  out.sigma = std::clamp(ratio * ratio * ratio, 0.0, 1.0);

  const double target = out.sigma * out.mu;
  Vector r_xs = xs.array() - target;
  Vector r_rw = tw.array() - target;
  if (corrector == MpcCorrector::Mehrotra) {
    r_xs += aff.dx.cwiseProduct(aff.ds);
    r_rw += aff.dw.cwiseProduct(aff.dt);
  }
  out.delta = sys.solve(r_xs, r_rw);
  return out;
}

SsvDirection ssv_sqp_direction(const LpProblem& p, const SsvIterate& it, AugmentedPath path,
                               PivotPolicy policy) {
  const IpmIterate& b = it.base;
  const auto positive = [](const Vector& z) { return z.size() == 0 || z.minCoeff() > 0.0; };
  require(positive(it.v) && positive(it.y) && positive(b.s) && positive(b.t),
          ErrorCode::InvalidArgument, "ssv_sqp_direction: v, y, s, t must be positive");
  require(it.v.size() == p.num_vars() && it.y.size() == p.num_upper(),
          ErrorCode::DimensionMismatch, "ssv_sqp_direction: squared variables do not match problem");

  const Vector r_c = full_dual_residual(p, b);
  const Vector r_x = p.a * b.x - p.b;
  const Vector r_u = select(b.x, p.upper_idx) + b.w - p.u;
  const Vector r_v = b.x - it.v.cwiseAbs2();
  const Vector r_y = b.w - it.y.cwiseAbs2();
  const Vector r_sv = it.v.cwiseProduct(b.s);
  const Vector r_ry = b.t.cwiseProduct(it.y);

  // Half the scaled duals: 1/2 V^-2 S and 1/2 Y^-2 T.
  const Vector hs = 0.5 * b.s.cwiseQuotient(it.v.cwiseAbs2());
  const Vector ht = 0.5 * b.t.cwiseQuotient(it.y.cwiseAbs2());

  Vector d = hs;
  Vector rhs = r_sv.cwiseQuotient(it.v) + hs.cwiseProduct(r_v) - r_c;
  for (Index k = 0; k < p.num_upper(); ++k) {
    const Index i = p.upper_idx[static_cast<std::size_t>(k)];
    d[i] += ht[k];
    rhs[i] += -r_ry[k] / it.y[k] - ht[k] * r_y[k] + ht[k] * r_u[k];
  }
  const ReducedSystem sys(p, d, path, policy);
  const AugmentedSolution sol = sys.solve(rhs, r_x);

  SsvDirection out;
  IpmDirection& db = out.base;
  db.dx = sol.dx;
  db.dlam = sol.dlam;
  const Vector vx = db.dx + r_v;
  out.dv = 0.5 * vx.cwiseQuotient(it.v);
  db.ds = -r_sv.cwiseQuotient(it.v) - hs.cwiseProduct(vx);
  db.dw = -r_u - select(db.dx, p.upper_idx);
  const Vector wy = db.dw + r_y;
  out.dy = 0.5 * wy.cwiseQuotient(it.y);
  db.dt = -r_ry.cwiseQuotient(it.y) - ht.cwiseProduct(wy);
  return out;
}

}  // namespace sqvar::lp
