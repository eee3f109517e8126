#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sqvar/error.hpp"
#include "sqvar/linalg.hpp"
#include "sqvar/lp.hpp"
#include "sqvar_cli/report.hpp"

namespace sqvar::cli {

enum class Family { Qp, LpRandom, LpMps, Nmf, Cls, Check };

std::string to_string(Family f);
Family parse_family(const std::string& name);

/// Options shared by every subcommand. Unset optionals take the family
/// defaults listed by `describe`.
struct ExperimentConfig {
  Family family = Family::LpRandom;
  std::optional<Index> n, m, r, s;
  std::optional<double> kappa, sigma, tau, eps, tol, max_seconds;
  std::optional<int> max_iter;
  std::vector<std::string> methods;  // method or variant names; empty means family default
  std::string taus;                  // cls stage list
  std::vector<std::uint64_t> seeds;
  std::string input;                 // MPS file or JSON point file
  std::string out;                   // output prefix; empty prints to stdout
  Format format = Format::Csv;
  AugmentedPath path = AugmentedPath::Normal;
  lp::MpcCorrector corrector = lp::MpcCorrector::SigmaOnly;
  bool traces = false;
  int threads = 0;  // 0 means SQVAR_THREADS or the hardware count

  /// Throws InvalidArgument / OutOfRange on an unusable configuration.
  void validate() const;
};

/// Parses "0-9", "1,4,7" or a mix of both.
std::vector<std::uint64_t> parse_seeds(const std::string& text);

/// Worker count: the explicit request, else SQVAR_THREADS, else the hardware
/// count; never more than `jobs`.
int worker_count(int requested, std::size_t jobs);

struct ExperimentReport {
  std::vector<std::pair<std::string, std::string>> header;  // effective parameters
  Table summary;  // one row per configuration
  Table runs;     // one row per (configuration, seed) or (seed, stage)
  Table traces;   // per-iteration rows when requested
};

/// Raised when a solver throws during a run, after validation succeeded.
class SolverFailure : public Error {
 public:
  SolverFailure(std::uint64_t seed, const Error& cause);
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

/// Runs the configured family over every seed (in parallel) and aggregates
/// results after sorting by seed, so the output does not depend on the
/// worker count.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Desk-scale sweep over every family with their default parameters.
ExperimentReport bench_all(const ExperimentConfig& cfg);

/// Writes summary, runs and (if present) traces as <out>_summary.<ext> etc.,
/// or prints the summary to stdout when `out` is empty.
void write_report(const ExperimentReport& report, const ExperimentConfig& cfg);

/// Mean and sample standard deviation.
std::pair<double, double> mean_sd(const std::vector<double>& xs);
double median(std::vector<double> xs);

}  // namespace sqvar::cli
