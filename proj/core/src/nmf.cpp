#include "sqvar/nmf.hpp"

#include <cmath>
#include <deque>
#include <optional>

#include "sqvar/random.hpp"

namespace sqvar::nmf {

namespace {

constexpr double kAlphaFloor = 1e-30;

double value_only(const Matrix& m, const Matrix& x) {
  Matrix r = -m;
  r.selfadjointView<Eigen::Lower>().rankUpdate(x);
  // Only the lower triangle is updated; fold in the upper part by symmetry.
  double f = 0.0;
  const Index n = m.rows();
  for (Index j = 0; j < n; ++j) {
    f += r(j, j) * r(j, j);
    for (Index i = j + 1; i < n; ++i) f += 2.0 * r(i, j) * r(i, j);
  }
  return f;
}

constexpr int kMaxSearch = 60;

struct Step {
  double alpha;
  ValueGrad vg;
};

// Strong Wolfe line search: bracket by doubling, then zoom by bisection.
template <class Eval>
std::optional<Step> wolfe_search(const Eval& at, const Matrix& dir, double f0, double slope,
                                 const NmfOptions& opts) {
  const double c1 = opts.lbfgs_armijo;
  const double c2 = opts.lbfgs_wolfe;
  const auto deriv = [&](const ValueGrad& v) { return v.g.cwiseProduct(dir).sum(); };
  const auto armijo = [&](double a, double f) { return f <= f0 + c1 * a * slope; };

  const auto zoom = [&](double lo, double f_lo, double hi) -> std::optional<Step> {
    for (int j = 0; j < kMaxSearch; ++j) {
      const double a = 0.5 * (lo + hi);
      ValueGrad v = at(a);
      if (!armijo(a, v.f) || v.f >= f_lo) {
        hi = a;
        continue;
      }
      const double d = deriv(v);
      if (std::abs(d) <= -c2 * slope) return Step{a, std::move(v)};
      if (d * (hi - lo) >= 0.0) hi = lo;
      lo = a;
      f_lo = v.f;
    }
    if (lo > 0.0) return Step{lo, at(lo)};
    return std::nullopt;
  };

  double a_prev = 0.0, f_prev = f0, a = 1.0;
  for (int i = 0; i < kMaxSearch; ++i) {
    ValueGrad v = at(a);
    if (!std::isfinite(v.f) || !armijo(a, v.f) || (i > 0 && v.f >= f_prev)) return zoom(a_prev, f_prev, a);
    const double d = deriv(v);
    if (std::abs(d) <= -c2 * slope) return Step{a, std::move(v)};
    if (d >= 0.0) return zoom(a, v.f, a_prev);
    a_prev = a;
    f_prev = v.f;
    a *= 2.0;
  }
  return Step{a_prev, at(a_prev)};
}

}  // namespace

NmfProblem gen_nmf(Index n, Index r, std::uint64_t seed) {
  require(r >= 1 && r <= n, ErrorCode::InvalidArgument, "gen_nmf: need 1 <= r <= n");
  Rng rng = make_rng(seed, 31);
  return from_factor(uniform_matrix(rng, n, r));
}

NmfProblem from_factor(Matrix u) {
  require_finite(u, "factor");
  NmfProblem p;
  p.m = u * u.transpose();
  p.rank = u.cols();
  p.u = std::move(u);
  return p;
}

ValueGrad nmf_x_value_grad(const Matrix& m, const Matrix& x) {
  require(m.rows() == m.cols() && x.rows() == m.rows(), ErrorCode::DimensionMismatch,
          "nmf_x_value_grad: dimensions");
  const Matrix r = x * x.transpose() - m;
  return {r.squaredNorm(), 4.0 * r * x};
}

ValueGrad nmf_value_grad(const Matrix& m, const Matrix& v) {
  const Matrix x = v.cwiseAbs2();
  ValueGrad out = nmf_x_value_grad(m, x);
  out.g = 2.0 * v.cwiseProduct(out.g);
  return out;
}

double relative_error(const Matrix& m, const Matrix& x) {
  return (x * x.transpose() - m).squaredNorm() / m.squaredNorm();
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::Pg: return "pg";
    case Variant::PgPolyak: return "pg_polyak";
    case Variant::Gd: return "gd";
    case Variant::GdPolyak: return "gd_polyak";
    case Variant::Lbfgs: return "lbfgs";
  }
  return "?";
}

Variant parse_variant(const std::string& name) {
  for (Variant v : {Variant::Pg, Variant::PgPolyak, Variant::Gd, Variant::GdPolyak, Variant::Lbfgs})
    if (to_string(v) == name) return v;
  fail(ErrorCode::InvalidArgument, "unknown NMF variant '" + name + "'");
}

Matrix initial_v(const NmfProblem& p, std::uint64_t seed) {
  Rng rng = make_rng(seed, 32);
  const double scale = std::pow(p.m.mean() / double(p.rank), 0.25);
  return scale * uniform_matrix(rng, p.size(), p.rank);
}

NmfResult nmf_solve(const NmfProblem& p, Variant variant, const Matrix& v0, const NmfOptions& opts) {
  require(opts.eps > 0.0, ErrorCode::InvalidArgument, "nmf_solve: eps must be positive");
  require(v0.rows() == p.size() && v0.cols() == p.rank, ErrorCode::DimensionMismatch,
          "nmf_solve: V0 must be n x r");
  const double m_norm2 = p.m.squaredNorm();
  const bool on_x = variant == Variant::Pg || variant == Variant::PgPolyak;

  // Iterate z is X for the pg variants and V otherwise.
  Matrix z = on_x ? Matrix(v0.cwiseAbs2()) : v0;
  const auto evaluate = [&](const Matrix& zz) {
    return on_x ? nmf_x_value_grad(p.m, zz) : nmf_value_grad(p.m, zz);
  };
  const auto value = [&](const Matrix& zz) {
    return on_x ? value_only(p.m, zz) : value_only(p.m, zz.cwiseAbs2());
  };
  const auto step = [&](const Matrix& zz, const Matrix& dir, double a) -> Matrix {
    if (on_x) return (zz + a * dir).cwiseMax(0.0);
    return zz + a * dir;
  };

  ValueGrad vg = evaluate(z);
  double alpha = opts.first_alpha;
  NmfResult out;

  // L-BFGS memory of (s, y, 1 / y^T s).
  struct Pair {
    Matrix s, y;
    double rho;
  };
  std::deque<Pair> memory;

  for (int k = 0;; ++k) {
    const double acc = vg.f / m_norm2;
    if (opts.record_trace) out.trace.add({double(k), vg.f, acc});
    out.iterations = k;
    out.acc = acc;
    if (acc <= opts.eps) {
      out.converged = true;
      break;
    }
    if (k >= opts.max_iter || !std::isfinite(vg.f)) break;

    const double g2 = vg.g.squaredNorm();
    if (g2 == 0.0) break;  // stationary but not converged

    switch (variant) {
      case Variant::PgPolyak:
      case Variant::GdPolyak: {
        const double a = vg.f / (2.0 * g2);
        Matrix next = step(z, -vg.g, a);
        ValueGrad nvg = evaluate(next);
        if (nvg.f > vg.f) ++out.nonmonotone_steps;
        z = std::move(next);
        vg = std::move(nvg);
        break;
      }
      case Variant::Pg:
      case Variant::Gd: {
        Matrix trial;
        double ft = 0.0;
        for (;;) {
          trial = step(z, -vg.g, alpha);
          ft = value(trial);
          if (ft < vg.f) break;
          alpha *= opts.shrink;
          if (alpha < kAlphaFloor) break;
        }
        if (alpha < kAlphaFloor) {
          out.iterations = k;
          goto done;
        }
        z = std::move(trial);
        vg = evaluate(z);
        alpha *= opts.grow;
        break;
      }
      case Variant::Lbfgs: {
        // Two-loop recursion for d = -H g.
        Matrix q = vg.g;
        std::vector<double> a_hist(memory.size());
        for (std::size_t i = memory.size(); i-- > 0;) {
          a_hist[i] = memory[i].rho * memory[i].s.cwiseProduct(q).sum();
          q -= a_hist[i] * memory[i].y;
        }
        double gamma = 1.0 / std::sqrt(g2);
        if (!memory.empty())
          gamma = memory.back().s.cwiseProduct(memory.back().y).sum() / memory.back().y.squaredNorm();
        q *= gamma;
        for (std::size_t i = 0; i < memory.size(); ++i) {
          const double b = memory[i].rho * memory[i].y.cwiseProduct(q).sum();
          q += (a_hist[i] - b) * memory[i].s;
        }
        Matrix dir = -q;
        double slope = dir.cwiseProduct(vg.g).sum();
        if (!(slope < 0.0)) {
          memory.clear();
          dir = -vg.g / std::sqrt(g2);
          slope = -std::sqrt(g2);
        }
        const auto at = [&](double a) { return evaluate(z + a * dir); };
        std::optional<Step> st = wolfe_search(at, dir, vg.f, slope, opts);
        if (!st) goto done;
        Matrix trial = z + st->alpha * dir;
        ValueGrad nvg = std::move(st->vg);
        Pair pr{trial - z, nvg.g - vg.g, 0.0};
        const double sy = pr.s.cwiseProduct(pr.y).sum();
        if (sy > 1e-12 * pr.s.norm() * pr.y.norm()) {
          pr.rho = 1.0 / sy;
          memory.push_back(std::move(pr));
          if (static_cast<int>(memory.size()) > opts.lbfgs_memory) memory.pop_front();
        }
        z = std::move(trial);
        vg = std::move(nvg);
        break;
      }
    }
  }
done:
  out.x = on_x ? z : Matrix(z.cwiseAbs2());
  out.acc = relative_error(p.m, out.x);
  return out;
}

}  // namespace sqvar::nmf
