#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sqvar_cli/experiment.hpp"

namespace {

using namespace sqvar;
using namespace sqvar::cli;

constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;

struct RawFlags {
  Index n = 0, m = 0, r = 0, s = 0;
  double kappa = 0, sigma = 0, tau = 0, eps = 0, tol = 0, max_seconds = 0;
  int max_iter = 0;
  std::vector<std::string> methods;
  std::string taus, seeds = "0-9", out, format = "csv", path = "normal", corrector = "sigma-only", input;
  bool traces = false;
  int threads = 0;
};

void add_shared(CLI::App* cmd, RawFlags& f) {
  cmd->add_option("--n", f.n, "Problem size n");
  cmd->add_option("--m", f.m, "Number of rows m");
  cmd->add_option("--r", f.r, "Factor rank r (nmf)");
  cmd->add_option("--s", f.s, "Sparsity s (cls)");
  cmd->add_option("--kappa", f.kappa, "Condition number (qp)");
  cmd->add_option("--sigma", f.sigma, "Noise level (cls) or centering parameter (pdip)");
  cmd->add_option("--method,--variant", f.methods, "Methods or variants to run (repeatable)");
  cmd->add_option("--tau", f.tau, "Step scaling in (0, 1]");
  cmd->add_option("--eps", f.eps, "Stopping tolerance");
  cmd->add_option("--tol", f.tol, "Stopping tolerance (qp, cls)");
  cmd->add_option("--max-iter", f.max_iter, "Iteration cap");
  cmd->add_option("--max-seconds", f.max_seconds, "Wall-clock cap per solve (lp)");
  cmd->add_option("--seeds", f.seeds, "Seeds, e.g. 0-9 or 1,5,7")->capture_default_str();
  cmd->add_option("--out", f.out, "Output prefix; files <out>_summary.<ext> etc.");
  cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--solver-path", f.path, "Reduced system for lp")->check(CLI::IsMember({"normal", "augmented"}));
  cmd->add_option("--mpc-corrector", f.corrector, "MPC corrector")->check(CLI::IsMember({"sigma-only", "mehrotra"}));
  cmd->add_option("--threads", f.threads, "Worker threads (default: SQVAR_THREADS or all cores)");
  cmd->add_flag("--trace", f.traces, "Also write per-iteration traces");
}

ExperimentConfig to_config(Family family, const RawFlags& f, const CLI::App* cmd) {
  ExperimentConfig c;
  c.family = family;
  const auto given = [&](const char* name) { return cmd->count(name) > 0; };
  if (given("--n")) c.n = f.n;
  if (given("--m")) c.m = f.m;
  if (given("--r")) c.r = f.r;
  if (given("--s")) c.s = f.s;
  if (given("--kappa")) c.kappa = f.kappa;
  if (given("--sigma")) c.sigma = f.sigma;
  if (given("--tau")) c.tau = f.tau;
  if (given("--eps")) c.eps = f.eps;
  if (given("--tol")) c.tol = f.tol;
  if (given("--max-iter")) c.max_iter = f.max_iter;
  if (given("--max-seconds")) c.max_seconds = f.max_seconds;
  c.methods = f.methods;
  c.taus = f.taus;
  c.seeds = parse_seeds(f.seeds);
  c.input = f.input;
  c.out = f.out;
  c.format = parse_format(f.format);
  c.path = f.path == "augmented" ? AugmentedPath::Augmented : AugmentedPath::Normal;
  c.corrector = f.corrector == "mehrotra" ? lp::MpcCorrector::Mehrotra : lp::MpcCorrector::SigmaOnly;
  c.traces = f.traces;
  c.threads = f.threads;
  return c;
}

void error_record(const std::string& kind, const std::string& code, const std::string& message) {
  nlohmann::json rec = {{"error", kind}, {"code", code}, {"message", message}};
  std::cerr << rec.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Squared-variable optimization experiments"};
  app.require_subcommand(1);
  RawFlags flags;

  struct Sub {
    const char* name;
    Family family;
    const char* help;
  };
  const Sub subs[] = {
      {"qp", Family::Qp, "Bound-constrained QP: projected gradient vs. scaled DSS descent"},
      {"lp-random", Family::LpRandom, "Random LPs with upper bounds: pdip, mpc, ssv"},
      {"solve-mps", Family::LpMps, "Solve an MPS file"},
      {"nmf", Family::Nmf, "Symmetric NMF variants"},
      {"cls", Family::Cls, "Pseudo-norm constrained least squares with continuation over tau"},
      {"check-kkt", Family::Check, "Optimality measures at a point given as JSON"},
  };
  std::vector<std::pair<CLI::App*, Family>> cmds;
  for (const Sub& s : subs) {
    CLI::App* cmd = app.add_subcommand(s.name, s.help);
    add_shared(cmd, flags);
    if (s.family == Family::LpMps || s.family == Family::Check)
      cmd->add_option("file", flags.input, "Input file")->required();
    if (s.family == Family::Cls) cmd->add_option("--taus", flags.taus, "Stage list, e.g. 1,1/2,1/4");
    cmds.push_back({cmd, s.family});
  }
  CLI::App* bench = app.add_subcommand("bench-all", "Desk-scale sweep over every family");
  add_shared(bench, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    ExperimentReport report;
    ExperimentConfig cfg;
    if (bench->parsed()) {
      cfg = to_config(Family::LpRandom, flags, bench);
      if (bench->count("--seeds") == 0) cfg.seeds.clear();
      report = bench_all(cfg);
    } else {
      for (auto& [cmd, family] : cmds)
        if (cmd->parsed()) cfg = to_config(family, flags, cmd);
      report = run_experiment(cfg);
    }
    write_report(report, cfg);
  } catch (const SolverFailure& e) {
    error_record("solver", std::string(to_string(e.code())), e.what());
    return kExitSolver;
  } catch (const Error& e) {
    error_record("validation", std::string(to_string(e.code())), e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    error_record("solver", "internal", e.what());
    return kExitSolver;
  }
  return 0;
}
