#include "sqvar_cli/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "sqvar/bcqp.hpp"
#include "sqvar/cls.hpp"
#include "sqvar/mps.hpp"
#include "sqvar/nmf.hpp"
#include "sqvar_cli/check_kkt.hpp"

namespace sqvar::cli {

namespace {

std::string fmt(double x) { return format_cell(Cell(x)); }

const std::vector<std::string> kSummaryColumns = {
    "family", "method", "params", "trials", "solved", "mean_iter", "sd_iter", "median_iter",
    "metric", "metric_median"};

struct Aggregate {
  std::vector<double> iters;
  std::vector<double> metric;
  std::int64_t solved = 0;
};

void add_summary(Table& t, Family f, const std::string& method, const std::string& params,
                 const Aggregate& a, const std::string& metric) {
  const auto [mean, sd] = mean_sd(a.iters);
  t.add({to_string(f), method, params, std::int64_t(a.iters.size()), a.solved, mean, sd,
         median(a.iters), metric, median(a.metric)});
}

// Runs job(i) for i in [0, count) on a worker pool. Each job writes only its
// own slot, so the result does not depend on scheduling. The exception of the
// lowest failing index is rethrown.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& job) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int nw = worker_count(threads, count);
  if (nw <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < nw; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// Wraps solver errors with the seed they occurred on.
template <class F>
auto with_seed(std::uint64_t seed, F&& f) {
  try {
    return f();
  } catch (const SolverFailure&) {
    throw;
  } catch (const Error& e) {
    throw SolverFailure(seed, e);
  }
}

std::vector<std::uint64_t> sorted_seeds(const ExperimentConfig& cfg) {
  std::vector<std::uint64_t> s = cfg.seeds;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

void header_common(ExperimentReport& rep, const ExperimentConfig& cfg) {
  rep.header.push_back({"family", to_string(cfg.family)});
  std::ostringstream seeds;
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i) seeds << (i ? "," : "") << cfg.seeds[i];
  rep.header.push_back({"seeds", seeds.str()});
}

// ---------------------------------------------------------------------------
// qp

ExperimentReport run_qp(const ExperimentConfig& cfg) {
  const Index n = cfg.n.value_or(100);
  const double kappa = cfg.kappa.value_or(10.0);
  bcqp::BcOptions opts;
  opts.tol = cfg.tol.value_or(cfg.eps.value_or(1e-4));
  opts.max_iter = cfg.max_iter.value_or(100000);
  opts.record_trace = cfg.traces;
  const std::vector<std::string> methods =
      cfg.methods.empty() ? std::vector<std::string>{"pg", "dss-scaled"} : cfg.methods;
  for (const auto& m : methods)
    if (m != "pg" && m != "dss-scaled")
      fail(ErrorCode::InvalidArgument, "qp: unknown method '" + m + "' (pg, dss-scaled)");

  ExperimentReport rep;
  header_common(rep, cfg);
  rep.header.insert(rep.header.end(), {{"n", std::to_string(n)}, {"kappa", fmt(kappa)},
                                       {"tol", fmt(opts.tol)}, {"max_iter", std::to_string(opts.max_iter)},
                                       {"pg_shrink", fmt(opts.shrink)}, {"pg_grow", fmt(opts.grow)},
                                       {"scaled_switch", fmt(opts.scaled_switch)},
                                       {"min_diag", fmt(opts.min_diag)}});
  const auto seeds = sorted_seeds(cfg);
  std::vector<std::vector<bcqp::BcSolveResult>> res(seeds.size());
  parallel_for(seeds.size(), cfg.threads, [&](std::size_t i) {
    with_seed(seeds[i], [&] {
      const bcqp::QpProblem p = bcqp::gen_qp(n, kappa, seeds[i]);
      const Vector x0 = bcqp::standard_start(n, seeds[i]);
      for (const auto& m : methods)
        res[i].push_back(m == "pg" ? bcqp::pg_solve(p, x0, opts)
                                   : bcqp::dss_gd_scaled_solve(p, x0.cwiseSqrt(), opts));
      return 0;
    });
  });

  rep.runs.columns = {"seed", "method", "iterations", "objective", "prox_residual", "converged"};
  rep.summary.columns = kSummaryColumns;
  const std::string params = "n=" + std::to_string(n) + " kappa=" + fmt(kappa);
  for (std::size_t k = 0; k < methods.size(); ++k) {
    Aggregate agg;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      const auto& r = res[i][k];
      rep.runs.add({std::int64_t(seeds[i]), methods[k], std::int64_t(r.iterations), r.objective,
                    r.prox_residual, std::int64_t(r.converged)});
      agg.iters.push_back(r.iterations);
      agg.metric.push_back(r.objective);
      agg.solved += r.converged;
      if (cfg.traces) append(rep.traces, from_trace(r.trace, {"seed", "method"}, {std::int64_t(seeds[i]), methods[k]}));
    }
    add_summary(rep.summary, cfg.family, methods[k], params, agg, "objective");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// lp-random and solve-mps

double default_tau(lp::Method m, Family f) {
  if (f == Family::LpMps) return 0.9;
  return m == lp::Method::Ssv ? 0.5 : 0.995;
}

lp::SolveOptions lp_options(const ExperimentConfig& cfg, lp::Method m) {
  lp::SolveOptions o;
  o.method = m;
  o.tau = cfg.tau.value_or(default_tau(m, cfg.family));
  o.eps = cfg.eps.value_or(cfg.family == Family::LpMps ? 1e-5 : 1e-8);
  o.max_iter = cfg.max_iter.value_or(500);
  o.max_seconds = cfg.max_seconds.value_or(750.0);
  if (cfg.sigma) o.sigma = *cfg.sigma;
  o.path = cfg.path;
  o.corrector = cfg.corrector;
  o.record_trace = cfg.traces;
  return o;
}

void lp_header(ExperimentReport& rep, const ExperimentConfig& cfg, const std::vector<lp::Method>& methods) {
  for (lp::Method m : methods) {
    const lp::SolveOptions o = lp_options(cfg, m);
    const std::string k = to_string(m) + ".";
    rep.header.insert(rep.header.end(), {{k + "tau", fmt(o.tau)}, {k + "eps", fmt(o.eps)},
                                         {k + "max_iter", std::to_string(o.max_iter)},
                                         {k + "max_seconds", fmt(o.max_seconds)}});
    if (m == lp::Method::Pdip) rep.header.push_back({k + "sigma", fmt(o.sigma)});
  }
  rep.header.push_back({"solver_path", cfg.path == AugmentedPath::Normal ? "normal" : "augmented"});
  rep.header.push_back({"mpc_corrector", cfg.corrector == lp::MpcCorrector::SigmaOnly ? "sigma-only" : "mehrotra"});
}

std::vector<lp::Method> lp_methods(const ExperimentConfig& cfg) {
  std::vector<lp::Method> out;
  for (const auto& m : cfg.methods) out.push_back(lp::parse_method(m));
  if (out.empty()) out.push_back(lp::Method::Mpc);
  return out;
}

ExperimentReport run_lp_random(const ExperimentConfig& cfg) {
  const Index n = cfg.n.value_or(500);
  const Index m = cfg.m.value_or(50);
  const auto methods = lp_methods(cfg);
  ExperimentReport rep;
  header_common(rep, cfg);
  rep.header.insert(rep.header.end(), {{"n", std::to_string(n)}, {"m", std::to_string(m)}});
  lp_header(rep, cfg, methods);

  const auto seeds = sorted_seeds(cfg);
  std::vector<std::vector<lp::SolveResult>> res(seeds.size());
  parallel_for(seeds.size(), cfg.threads, [&](std::size_t i) {
    with_seed(seeds[i], [&] {
      const lp::LpProblem p = lp::gen_random_lp(n, m, seeds[i]);
      for (lp::Method meth : methods) res[i].push_back(lp::lp_solve(p, lp_options(cfg, meth)));
      return 0;
    });
  });

  rep.runs.columns = {"seed", "method", "tau", "status", "iterations", "res", "objective"};
  rep.summary.columns = kSummaryColumns;
  for (std::size_t k = 0; k < methods.size(); ++k) {
    const double tau = lp_options(cfg, methods[k]).tau;
    Aggregate agg;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      const auto& r = res[i][k];
      rep.runs.add({std::int64_t(seeds[i]), to_string(methods[k]), tau, to_string(r.status),
                    std::int64_t(r.iterations), r.res, r.objective});
      agg.iters.push_back(r.iterations);
      agg.metric.push_back(r.res);
      agg.solved += r.status == lp::Status::Solved;
      if (cfg.traces)
        append(rep.traces, from_trace(r.trace, {"seed", "method"}, {std::int64_t(seeds[i]), to_string(methods[k])}));
    }
    add_summary(rep.summary, cfg.family, to_string(methods[k]),
                "n=" + std::to_string(n) + " m=" + std::to_string(m) + " tau=" + fmt(tau), agg, "res");
  }
  return rep;
}

ExperimentReport run_lp_mps(const ExperimentConfig& cfg) {
  const mps::GeneralLp g = mps::read_mps_file(cfg.input);
  auto [p, map] = mps::to_lp_u(g);
  const auto methods = lp_methods(cfg);
  ExperimentReport rep;
  rep.header.push_back({"family", to_string(cfg.family)});
  rep.header.insert(rep.header.end(), {{"input", cfg.input}, {"problem", g.name},
                                       {"rows", std::to_string(p.num_rows())},
                                       {"cols", std::to_string(p.num_vars())},
                                       {"upper_bounds", std::to_string(p.num_upper())}});
  lp_header(rep, cfg, methods);

  std::vector<lp::SolveResult> res(methods.size());
  parallel_for(methods.size(), cfg.threads, [&](std::size_t k) {
    with_seed(0, [&] { return res[k] = lp::lp_solve(p, lp_options(cfg, methods[k])); });
  });

  rep.runs.columns = {"problem", "method", "tau", "status", "iterations", "res", "objective"};
  rep.summary.columns = kSummaryColumns;
  for (std::size_t k = 0; k < methods.size(); ++k) {
    const auto& r = res[k];
    const double tau = lp_options(cfg, methods[k]).tau;
    rep.runs.add({g.name, to_string(methods[k]), tau, to_string(r.status), std::int64_t(r.iterations),
                  r.res, map.original_objective(r.objective)});
    Aggregate agg;
    agg.iters.push_back(r.iterations);
    agg.metric.push_back(r.res);
    agg.solved = r.status == lp::Status::Solved;
    add_summary(rep.summary, cfg.family, to_string(methods[k]), g.name + " tau=" + fmt(tau), agg, "res");
    if (cfg.traces) append(rep.traces, from_trace(r.trace, {"problem", "method"}, {g.name, to_string(methods[k])}));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// nmf

ExperimentReport run_nmf(const ExperimentConfig& cfg) {
  const Index n = cfg.n.value_or(200);
  const Index r = cfg.r.value_or(10);
  nmf::NmfOptions opts;
  opts.eps = cfg.eps.value_or(1e-4);
  opts.max_iter = cfg.max_iter.value_or(20000);
  opts.record_trace = cfg.traces;
  std::vector<nmf::Variant> variants;
  for (const auto& v : cfg.methods) variants.push_back(nmf::parse_variant(v));
  if (variants.empty())
    variants = {nmf::Variant::Pg, nmf::Variant::PgPolyak, nmf::Variant::Gd, nmf::Variant::GdPolyak,
                nmf::Variant::Lbfgs};

  ExperimentReport rep;
  header_common(rep, cfg);
  rep.header.insert(rep.header.end(), {{"n", std::to_string(n)}, {"r", std::to_string(r)},
                                       {"eps", fmt(opts.eps)}, {"max_iter", std::to_string(opts.max_iter)},
                                       {"backtrack_shrink", fmt(opts.shrink)}, {"backtrack_grow", fmt(opts.grow)},
                                       {"lbfgs_memory", std::to_string(opts.lbfgs_memory)}});
  const auto seeds = sorted_seeds(cfg);
  std::vector<std::vector<nmf::NmfResult>> res(seeds.size());
  parallel_for(seeds.size(), cfg.threads, [&](std::size_t i) {
    with_seed(seeds[i], [&] {
      const nmf::NmfProblem p = nmf::gen_nmf(n, r, seeds[i]);
      const Matrix v0 = nmf::initial_v(p, seeds[i]);
      for (nmf::Variant v : variants) {
        nmf::NmfResult out = nmf::nmf_solve(p, v, v0, opts);
        out.x.resize(0, 0);  // factors are not reported
        res[i].push_back(std::move(out));
      }
      return 0;
    });
  });

  rep.runs.columns = {"seed", "variant", "iterations", "acc", "converged", "nonmonotone_steps"};
  rep.summary.columns = kSummaryColumns;
  for (std::size_t k = 0; k < variants.size(); ++k) {
    const std::string name = nmf::to_string(variants[k]);
    Aggregate agg;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      const auto& o = res[i][k];
      rep.runs.add({std::int64_t(seeds[i]), name, std::int64_t(o.iterations), o.acc,
                    std::int64_t(o.converged), std::int64_t(o.nonmonotone_steps)});
      agg.iters.push_back(o.iterations);
      agg.metric.push_back(o.acc);
      agg.solved += o.converged;
      if (cfg.traces) append(rep.traces, from_trace(o.trace, {"seed", "variant"}, {std::int64_t(seeds[i]), name}));
    }
    add_summary(rep.summary, cfg.family, name, "n=" + std::to_string(n) + " r=" + std::to_string(r), agg, "acc");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// cls

ExperimentReport run_cls(const ExperimentConfig& cfg) {
  const Index n = cfg.n.value_or(1000);
  const Index m = cfg.m.value_or(207);
  const Index s = cfg.s.value_or(5);
  const double sigma = cfg.sigma.value_or(1.0);
  const std::string taus = cfg.taus.empty() ? "1,1/2,1/4,1/6,1/8" : cfg.taus;
  const std::vector<int> ls = cls::parse_taus(taus);
  cls::PgOptions opts;
  opts.max_iter = cfg.max_iter.value_or(200);
  opts.tol = cfg.tol.value_or(1e-6);

  ExperimentReport rep;
  header_common(rep, cfg);
  rep.header.insert(rep.header.end(), {{"n", std::to_string(n)}, {"m", std::to_string(m)},
                                       {"s", std::to_string(s)}, {"sigma", fmt(sigma)}, {"taus", taus},
                                       {"max_iter", std::to_string(opts.max_iter)}, {"tol", fmt(opts.tol)},
                                       {"armijo", fmt(opts.armijo)}, {"shrink", fmt(opts.shrink)}});
  const auto seeds = sorted_seeds(cfg);
  std::vector<cls::ContinuationResult> res(seeds.size());
  parallel_for(seeds.size(), cfg.threads, [&](std::size_t i) {
    with_seed(seeds[i], [&] {
      const cls::ClsProblem p = cls::gen_cls(n, m, s, sigma, seeds[i]);
      res[i] = cls::continuation_solve(p, ls, seeds[i], opts);
      return 0;
    });
  });

  rep.runs.columns = {"seed", "tau", "iterations", "converged", "objective_ratio", "recovery_error"};
  rep.summary.columns = kSummaryColumns;
  for (std::size_t k = 0; k < ls.size(); ++k) {
    Aggregate agg;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      const cls::StageResult& st = res[i].stages[k];
      rep.runs.add({std::int64_t(seeds[i]), st.tau, std::int64_t(st.iterations), std::int64_t(st.converged),
                    st.objective_ratio, st.recovery_error});
      agg.iters.push_back(st.iterations);
      agg.metric.push_back(st.recovery_error);
      agg.solved += st.converged;
    }
    const std::string stage = ls[k] == 1 ? "tau=1" : "tau=1/" + std::to_string(ls[k]);
    add_summary(rep.summary, cfg.family, stage,
                "n=" + std::to_string(n) + " m=" + std::to_string(m) + " s=" + std::to_string(s), agg,
                "recovery_error");
  }
  return rep;
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::Qp: return "qp";
    case Family::LpRandom: return "lp-random";
    case Family::LpMps: return "solve-mps";
    case Family::Nmf: return "nmf";
    case Family::Cls: return "cls";
    case Family::Check: return "check-kkt";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  for (Family f : {Family::Qp, Family::LpRandom, Family::LpMps, Family::Nmf, Family::Cls, Family::Check})
    if (to_string(f) == name) return f;
  fail(ErrorCode::InvalidArgument, "unknown family '" + name + "'");
}

void ExperimentConfig::validate() const {
  if (family != Family::LpMps && family != Family::Check)
    require(!seeds.empty(), ErrorCode::InvalidArgument, "seed list is empty");
  if (family == Family::LpMps || family == Family::Check)
    require(!input.empty(), ErrorCode::InvalidArgument, "an input file is required");
  for (const auto* v : {&eps, &tol, &kappa, &max_seconds})
    if (*v) require(**v > 0.0, ErrorCode::InvalidArgument, "eps, tol, kappa and max-seconds must be positive");
  if (kappa) require(*kappa >= 1.0, ErrorCode::OutOfRange, "kappa must be at least 1");
  if (tau) require(*tau > 0.0 && *tau <= 1.0, ErrorCode::OutOfRange, "tau must lie in (0, 1]");
  if (sigma) require(*sigma >= 0.0, ErrorCode::InvalidArgument, "sigma must be nonnegative");
  if (max_iter) require(*max_iter >= 0, ErrorCode::InvalidArgument, "max-iter must be nonnegative");
  for (const auto* d : {&n, &m, &r})
    if (*d) require(**d >= 1, ErrorCode::InvalidArgument, "dimensions must be positive");
  if (s) require(*s >= 0, ErrorCode::InvalidArgument, "s must be nonnegative");
  if (family == Family::LpRandom && n && m) require(*m <= *n, ErrorCode::InvalidArgument, "need m <= n");
  if (family == Family::Nmf && n && r) require(*r <= *n, ErrorCode::InvalidArgument, "need r <= n");
  if (family == Family::Cls) {
    if (s) require(*s <= n.value_or(1000), ErrorCode::InvalidArgument, "need s <= n");
    if (!taus.empty()) cls::parse_taus(taus);
  }
  // Method names are checked here so a typo fails before any solve.
  for (const auto& name : methods) {
    switch (family) {
      case Family::LpRandom:
      case Family::LpMps: lp::parse_method(name); break;
      case Family::Nmf: nmf::parse_variant(name); break;
      case Family::Qp:
        require(name == "pg" || name == "dss-scaled", ErrorCode::InvalidArgument,
                "qp methods are pg and dss-scaled");
        break;
      default: break;
    }
  }
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string tok;
  const auto number = [&](const std::string& s) -> std::uint64_t {
    require(!s.empty() && s.find_first_not_of("0123456789") == std::string::npos, ErrorCode::InvalidArgument,
            "seeds must be nonnegative integers or ranges a-b");
    return std::stoull(s);
  };
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (tok.empty()) continue;
    const auto dash = tok.find('-');
    if (dash == std::string::npos) {
      out.push_back(number(tok));
      continue;
    }
    const std::uint64_t lo = number(tok.substr(0, dash));
    const std::uint64_t hi = number(tok.substr(dash + 1));
    require(lo <= hi, ErrorCode::InvalidArgument, "seed range a-b needs a <= b");
    for (std::uint64_t k = lo; k <= hi; ++k) out.push_back(k);
  }
  return out;
}

int worker_count(int requested, std::size_t jobs) {
  int n = requested;
  if (n <= 0) {
    n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("SQVAR_THREADS")) {
      const int cap = std::atoi(env);
      if (cap > 0) n = std::min(n, cap);
    }
  }
  return static_cast<int>(std::max<std::size_t>(1, std::min<std::size_t>(std::size_t(n), jobs)));
}

SolverFailure::SolverFailure(std::uint64_t seed, const Error& cause)
    : Error(cause.code(), "seed " + std::to_string(seed) + ": " + cause.what()), seed_(seed) {}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  switch (cfg.family) {
    case Family::Qp: return run_qp(cfg);
    case Family::LpRandom: return run_lp_random(cfg);
    case Family::LpMps: return run_lp_mps(cfg);
    case Family::Nmf: return run_nmf(cfg);
    case Family::Cls: return run_cls(cfg);
    case Family::Check: {
      ExperimentReport rep;
      rep.header = {{"family", to_string(cfg.family)}, {"input", cfg.input}};
      rep.summary = check_kkt_file(cfg.input);
      return rep;
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown family");
}

ExperimentReport bench_all(const ExperimentConfig& base) {
  ExperimentReport all;
  all.header.push_back({"family", "bench-all"});
  all.summary.columns = kSummaryColumns;
  const auto run = [&](Family f, std::vector<std::string> methods, std::vector<std::uint64_t> default_seeds) {
    ExperimentConfig cfg;
    cfg.family = f;
    cfg.methods = std::move(methods);
    cfg.seeds = base.seeds.empty() ? std::move(default_seeds) : base.seeds;
    cfg.threads = base.threads;
    cfg.path = base.path;
    cfg.corrector = base.corrector;
    ExperimentReport rep = run_experiment(cfg);
    for (auto& [k, v] : rep.header)
      if (k != "family" && k != "seeds") all.header.push_back({to_string(f) + "." + k, v});
    append(all.summary, rep.summary);
  };
  const auto range = [](std::uint64_t n) {
    std::vector<std::uint64_t> s(n);
    for (std::uint64_t k = 0; k < n; ++k) s[k] = k;
    return s;
  };
  run(Family::Qp, {"pg", "dss-scaled"}, range(5));
  run(Family::LpRandom, {"mpc"}, range(10));
  {
    // SSV runs once per step scaling.
    for (double tau : {0.5, 0.75}) {
      ExperimentConfig cfg;
      cfg.family = Family::LpRandom;
      cfg.methods = {"ssv"};
      cfg.tau = tau;
      cfg.seeds = base.seeds.empty() ? range(10) : base.seeds;
      cfg.threads = base.threads;
      cfg.path = base.path;
      append(all.summary, run_experiment(cfg).summary);
    }
  }
  run(Family::Nmf, {}, range(5));
  run(Family::Cls, {}, range(10));
  return all;
}

void write_report(const ExperimentReport& report, const ExperimentConfig& cfg) {
  if (cfg.out.empty()) {
    for (const auto& [k, v] : report.header) std::cout << "# " << k << " = " << v << '\n';
    emit_report(report.summary, cfg.format, std::cout);
    return;
  }
  const std::filesystem::path prefix(cfg.out);
  if (prefix.has_parent_path()) std::filesystem::create_directories(prefix.parent_path());
  const std::string ext = "." + extension(cfg.format);
  Table header;
  header.columns = {"key", "value"};
  for (const auto& [k, v] : report.header) header.add({k, v});
  emit_report(header, cfg.format, cfg.out + "_header" + ext);
  emit_report(report.summary, cfg.format, cfg.out + "_summary" + ext);
  if (!report.runs.columns.empty()) emit_report(report.runs, cfg.format, cfg.out + "_runs" + ext);
  if (!report.traces.columns.empty()) emit_report(report.traces, cfg.format, cfg.out + "_trace" + ext);
  for (const auto& [k, v] : report.header) std::cout << "# " << k << " = " << v << '\n';
  emit_report(report.summary, Format::Csv, std::cout);
}

std::pair<double, double> mean_sd(const std::vector<double>& xs) {
  if (xs.empty()) return {std::nan(""), std::nan("")};
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= double(xs.size());
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / double(xs.size() - 1))};
}

double median(std::vector<double> xs) {
  if (xs.empty()) return std::nan("");
  std::sort(xs.begin(), xs.end());
  const std::size_t h = xs.size() / 2;
  return xs.size() % 2 ? xs[h] : 0.5 * (xs[h - 1] + xs[h]);
}

}  // namespace sqvar::cli
