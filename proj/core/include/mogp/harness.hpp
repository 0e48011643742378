#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mogp/tuples.hpp"

namespace mogp {

enum class Model { pspin, ksat };

std::string_view model_name(Model m) noexcept;
Model parse_model(std::string_view name);

// `steps` equally spaced points from start to stop inclusive (one point when
// steps == 1).
std::vector<double> gamma_grid(double start, double stop, int steps);

struct ExperimentConfig {
  Model model = Model::pspin;
  int n = 10;
  int pk = 3;            // p for pspin, k for ksat
  int m = 2;
  double xi_beta = 0.5;  // xi for pspin, beta for ksat
  double eta = 0.25;
  double kappa = 0.0;    // ksat only
  bool kappa_auto = false;  // ksat: kappa = C(gamma) 2^{-k/2} per grid point
  std::vector<double> gammas;
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  Budget budget;
  unsigned threads = 1;

  // Throws DomainError on an invalid configuration.
  void validate() const;
};

// Stream id of trial t: hash_words({seed, model, n, t}). Rerunning any subset
// of trials reproduces their draws.
std::uint64_t trial_stream_id(std::uint64_t seed, Model model, int n, std::uint64_t trial);

struct ScanRow {
  double gamma = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t seed = 0;
  double kappa = 0.0;
  std::int64_t clauses = 0;  // M at this gamma (ksat)
  bool degenerate = false;   // pspin gamma <= 0, or ksat M == 0
  bool incomplete = false;   // some trial ran out of budget
};

struct ScanResult {
  ExperimentConfig config;
  std::vector<ScanRow> rows;
  // One entry per completed trial: T for pspin; for ksat with kappa = 0 the
  // largest clause prefix some tuple satisfies entirely, otherwise Z at the
  // largest gamma.
  std::vector<double> trial_statistics;
  std::uint64_t failed_trials = 0;
  std::string version;

  bool incomplete() const noexcept { return failed_trials != 0; }
};

// Each trial draws one instance at the largest gamma (ksat: the largest
// clause count; smaller counts use its prefix) and evaluates the statistic
// once; every grid point is a threshold on that value, so the success
// indicator of a trial is nonincreasing in gamma. Trials run on
// config.threads workers; results are assembled in trial order.
// Throws EmptyFamily when the constrained family is empty.
ScanResult run_scan(const ExperimentConfig& config);

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

inline constexpr double kZ95 = 1.959963984540054;

// Wilson score interval, widened if needed so it contains successes / trials.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ95);

// Linear interpolation of the first downward crossing of `level`. Needs two
// or more points.
std::optional<double> estimate_crossing(std::span<const double> gammas, std::span<const double> p_hat,
                                        double level = 0.5);
std::optional<double> estimate_crossing(const ScanResult& result, double level = 0.5);

std::string_view library_version() noexcept;

}  // namespace mogp
