#include "sqvar/cls.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <sstream>

#include "sqvar/random.hpp"

namespace sqvar::cls {

namespace {

constexpr double kAlphaFloor = 1e-30;

double objective(const ClsProblem& p, const Vector& v, const Vector& w, int power) {
  return 0.5 * (p.a * (hadamard_pow(v, power) - hadamard_pow(w, power)) - p.b).squaredNorm();
}

double prox_residual(const TauStage& stage, const Vector& v, const Vector& w, const PowerValueGrad& vg) {
  Vector pv = v - vg.gv;
  Vector pw = w - vg.gw;
  project_stage(stage, pv, pw);
  return std::sqrt((v - pv).squaredNorm() + (w - pw).squaredNorm());
}

// v^k with v^0 = 1.
Vector power_or_ones(const Vector& v, int k) {
  return k == 0 ? Vector(Vector::Ones(v.size())) : hadamard_pow(v, k);
}

}  // namespace

ClsProblem gen_cls(Index n, Index m, Index s, double sigma, std::uint64_t seed) {
  require(n >= 1 && m >= 1 && s >= 0 && s <= n, ErrorCode::InvalidArgument,
          "gen_cls: need n, m >= 1 and 0 <= s <= n");
  require(sigma >= 0.0, ErrorCode::InvalidArgument, "gen_cls: sigma must be nonnegative");
  Rng rng = make_rng(seed, 41);
  ClsProblem p;
  p.sigma = sigma;
  p.a = normal_matrix(rng, m, n);
  p.beta0 = Vector::Zero(n);
  const std::vector<Index> support = sample_without_replacement(rng, n, s);
  const Vector values = uniform_vector(rng, s, -1.0, 1.0);
  for (Index k = 0; k < s; ++k) p.beta0[support[std::size_t(k)]] = values[k];
  p.b = p.a * p.beta0 + sigma * normal_vector(rng, m);
  return p;
}

Vector project_l1_ball(const Vector& z, double r) {
  require(r > 0.0, ErrorCode::InvalidArgument, "project_l1_ball: radius must be positive");
  if (z.lpNorm<1>() <= r) return z;
  std::vector<double> u(z.size());
  for (Index i = 0; i < z.size(); ++i) u[std::size_t(i)] = std::abs(z[i]);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cum += u[j];
    const double t = (cum - r) / double(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  Vector out(z.size());
  for (Index i = 0; i < z.size(); ++i)
    out[i] = std::copysign(std::max(std::abs(z[i]) - theta, 0.0), z[i]);
  return out;
}

Vector project_l2_ball(const Vector& z, double r) {
  require(r > 0.0, ErrorCode::InvalidArgument, "project_l2_ball: radius must be positive");
  const double nz = z.norm();
  return nz > r ? Vector(z * (r / nz)) : z;
}

PowerValueGrad power_value_grad(const ClsProblem& p, const Vector& v, const Vector& w, int power) {
  require(power >= 1, ErrorCode::InvalidArgument, "power_value_grad: power must be >= 1");
  require(v.size() == p.cols() && w.size() == p.cols(), ErrorCode::DimensionMismatch,
          "power_value_grad: v and w must have n entries");
  const Vector r = p.a * (hadamard_pow(v, power) - hadamard_pow(w, power)) - p.b;
  const Vector atr = p.a.transpose() * r;
  PowerValueGrad out;
  out.g = 0.5 * r.squaredNorm();
  out.gv = double(power) * power_or_ones(v, power - 1).cwiseProduct(atr);
  out.gw = -double(power) * power_or_ones(w, power - 1).cwiseProduct(atr);
  return out;
}

double TauStage::radius() const { return ball() == Ball::L2 ? std::sqrt(r) : r; }

TauStage TauStage::from_reference(const Vector& beta0, int l) {
  require(l == 1 || (l >= 2 && l % 2 == 0), ErrorCode::InvalidArgument,
          "TauStage: l must be 1 or a positive even integer");
  TauStage st;
  st.l = l;
  st.tau = 1.0 / double(l);
  st.r = beta0.cwiseAbs().array().pow(st.tau).sum();
  require(st.r > 0.0, ErrorCode::InvalidArgument, "TauStage: reference solution is zero");
  return st;
}

void project_stage(const TauStage& stage, Vector& v, Vector& w) {
  const Index n = v.size();
  Vector z(2 * n);
  z << v, w;
  z = stage.ball() == Ball::L2 ? project_l2_ball(z, stage.radius()) : project_l1_ball(z, stage.radius());
  v = z.head(n);
  w = z.tail(n);
}

Vector represented(const TauStage& stage, const Vector& v, const Vector& w) {
  return hadamard_pow(v, stage.power()) - hadamard_pow(w, stage.power());
}

PgResult pg_armijo_solve(const ClsProblem& p, const TauStage& stage, const Vector& v0,
                         const Vector& w0, const PgOptions& opts) {
  require(v0.size() == p.cols() && w0.size() == p.cols(), ErrorCode::DimensionMismatch,
          "pg_armijo_solve: start must have n entries per block");
  const int power = stage.power();
  PgResult out;
  out.v = v0;
  out.w = w0;
  PowerValueGrad vg = power_value_grad(p, out.v, out.w, power);
  double alpha = opts.first_alpha;
  double last_alpha = 0.0;

  for (int k = 0;; ++k) {
    out.iterations = k;
    out.prox_residual = prox_residual(stage, out.v, out.w, vg);
    if (opts.record_trace) out.trace.add({double(k), vg.g, out.prox_residual, last_alpha});
    if (out.prox_residual <= opts.tol) {
      out.converged = true;
      break;
    }
    if (k >= opts.max_iter) break;

    Vector tv, tw;
    double ft = 0.0;
    for (;;) {
      tv = out.v - alpha * vg.gv;
      tw = out.w - alpha * vg.gw;
      project_stage(stage, tv, tw);
      ft = objective(p, tv, tw, power);
      const double decrease = vg.gv.dot(tv - out.v) + vg.gw.dot(tw - out.w);
      if (ft <= vg.g + opts.armijo * decrease) break;
      alpha *= opts.shrink;
      if (alpha < kAlphaFloor) break;
    }
    if (alpha < kAlphaFloor) break;
    out.v = std::move(tv);
    out.w = std::move(tw);
    vg = power_value_grad(p, out.v, out.w, power);
    last_alpha = alpha;
    alpha *= 2.0;
  }
  return out;
}

ContinuationResult continuation_solve(const ClsProblem& p, const std::vector<int>& ls,
                                      std::uint64_t seed, const PgOptions& opts) {
  require(!ls.empty(), ErrorCode::InvalidArgument, "continuation_solve: no stages");
  for (std::size_t i = 1; i < ls.size(); ++i)
    require(ls[i] > ls[i - 1], ErrorCode::InvalidArgument,
            "continuation_solve: taus must be strictly decreasing");
  const Index n = p.cols();
  const double b2 = p.b.squaredNorm();
  const double beta_norm = p.beta0.norm();

  ContinuationResult out;
  Vector v, w;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    const TauStage stage = TauStage::from_reference(p.beta0, ls[i]);
    if (i == 0) {
      Rng rng = make_rng(seed, 42);
      v = normal_vector(rng, n);
      w = normal_vector(rng, n);
    } else {
      const double inv = 1.0 / double(stage.power());
      v = out.x.cwiseMax(0.0).array().pow(inv).matrix();
      w = (-out.x).cwiseMax(0.0).array().pow(inv).matrix();
    }
    project_stage(stage, v, w);

    PgResult r = pg_armijo_solve(p, stage, v, w, opts);
    v = std::move(r.v);
    w = std::move(r.w);
    out.x = represented(stage, v, w);
    StageResult sr;
    sr.tau = stage.tau;
    sr.iterations = r.iterations;
    sr.converged = r.converged;
    sr.objective_ratio = 0.5 * (p.a * out.x - p.b).squaredNorm() / b2;
    sr.recovery_error = (out.x - p.beta0).norm() / beta_norm;
    out.stages.push_back(sr);
  }
  return out;
}

std::vector<int> parse_taus(const std::string& text) {
  std::vector<int> ls;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (tok.empty()) continue;
    double tau = 0.0;
    try {
      const auto slash = tok.find('/');
      if (slash == std::string::npos) {
        tau = std::stod(tok);
      } else {
        tau = std::stod(tok.substr(0, slash)) / std::stod(tok.substr(slash + 1));
      }
    } catch (const std::exception&) {
      fail(ErrorCode::InvalidArgument, "malformed tau '" + tok + "'");
    }
    require(tau > 0.0 && tau <= 1.0, ErrorCode::OutOfRange, "tau must lie in (0, 1]");
    const int l = static_cast<int>(std::lround(1.0 / tau));
    if (std::abs(1.0 / double(l) - tau) > 1e-9 || (l != 1 && l % 2 != 0))
      fail(ErrorCode::InvalidArgument, "tau '" + tok + "' is not 1 or 1/L for an even L");
    ls.push_back(l);
  }
  require(!ls.empty(), ErrorCode::InvalidArgument, "empty tau list");
  return ls;
}

}  // namespace sqvar::cls
