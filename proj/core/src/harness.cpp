#include "mogp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "mogp/bounds.hpp"
#include "mogp/error.hpp"
#include "mogp/ksat.hpp"
#include "mogp/pspin.hpp"
#include "mogp/random.hpp"

#ifndef MOGP_VERSION
#define MOGP_VERSION "0.0.0"
#endif

namespace mogp {

namespace {

// What one trial contributes: per grid point success, plus the statistic.
struct TrialOutcome {
  std::vector<char> success;
  double statistic = 0.0;
  bool failed = false;
};

double row_kappa(const ExperimentConfig& c, double gamma) {
  if (c.model != Model::ksat) return 0.0;
  if (!c.kappa_auto) return c.kappa;
  if (gamma <= 0.0) return 0.0;
  return std::min(1.0, ksat_kappa(gamma, c.pk));
}

TrialOutcome run_pspin_trial(const ExperimentConfig& c, const OffsetPatterns& patterns, std::uint64_t trial) {
  RandomStream stream(c.seed, trial_stream_id(c.seed, c.model, c.n, trial));
  const auto J = sample_disorder(c.n, c.pk, stream, c.budget);
  const auto t = t_statistic(energy_table(J, c.budget), patterns, c.budget).value;
  TrialOutcome out;
  out.statistic = t;
  for (double g : c.gammas) out.success.push_back(t >= GroundStateTarget::from_gamma(g).threshold);
  return out;
}

TrialOutcome run_ksat_trial(const ExperimentConfig& c, const OffsetPatterns& patterns,
                            const std::vector<std::int64_t>& clauses, std::uint64_t trial) {
  RandomStream stream(c.seed, trial_stream_id(c.seed, c.model, c.n, trial));
  const auto phi = sample_formula(c.n, c.pk, clauses.back(), stream);
  TrialOutcome out;
  const bool exact = !c.kappa_auto && c.kappa == 0.0;
  if (exact) {
    // Every member satisfies the first M clauses iff its first violation
    // index is at least M, so one maximin serves the whole grid.
    const auto first = first_violation_table(phi, c.budget);
    const auto best = maximin<std::int32_t>(first, patterns, c.budget).value;
    out.statistic = best;
    for (auto M : clauses) out.success.push_back(M <= best);
    return out;
  }
  // Grow the violated-count table through the clause prefixes.
  Formula prefix{phi.n, phi.k, {}};
  std::vector<std::int32_t> violated(std::size_t{1} << c.n, 0);
  std::vector<std::int32_t> satisfied(violated.size());
  std::int64_t done = 0;
  for (std::size_t g = 0; g < clauses.size(); ++g) {
    const auto M = clauses[g];
    if (M > done) {
      prefix.clauses.assign(phi.clauses.begin() + done, phi.clauses.begin() + M);
      const auto added = violated_table(prefix, c.budget);
      for (std::size_t r = 0; r < violated.size(); ++r) violated[r] += added[r];
      done = M;
    }
    for (std::size_t r = 0; r < violated.size(); ++r) satisfied[r] = static_cast<std::int32_t>(M) - violated[r];
    const auto z = maximin<std::int32_t>(satisfied, patterns, c.budget).value;
    out.success.push_back(z >= sat_threshold(M, row_kappa(c, c.gammas[g])));
    out.statistic = z;
  }
  return out;
}

}  // namespace

std::string_view model_name(Model m) noexcept { return m == Model::pspin ? "pspin" : "ksat"; }

Model parse_model(std::string_view name) {
  if (name == "pspin") return Model::pspin;
  if (name == "ksat") return Model::ksat;
  throw DomainError("unknown model: " + std::string(name));
}

std::vector<double> gamma_grid(double start, double stop, int steps) {
  if (steps < 1) throw DomainError("gamma_grid: steps must be positive");
  if (steps == 1) return {start};
  std::vector<double> g(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) g[static_cast<std::size_t>(i)] = start + (stop - start) * i / (steps - 1);
  g.back() = stop;
  return g;
}

void ExperimentConfig::validate() const {
  if (n < 1) throw DomainError("config: n must be positive");
  if (m < 1) throw DomainError("config: m must be positive");
  if (trials < 1) throw DomainError("config: trials must be positive");
  if (gammas.empty()) throw DomainError("config: empty gamma grid");
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    if (!std::isfinite(gammas[i]) || gammas[i] < 0.0) throw DomainError("config: gamma must be finite and nonnegative");
    if (i > 0 && !(gammas[i] > gammas[i - 1])) throw DomainError("config: gamma grid must be strictly increasing");
  }
  if (!(eta >= 0.0)) throw DomainError("config: eta must be nonnegative");
  if (model == Model::pspin) {
    if (pk < 2) throw DomainError("config: p must be at least 2");
    if (!(xi_beta >= -1.0 && xi_beta <= 1.0)) throw DomainError("config: xi must lie in [-1, 1]");
  } else {
    if (pk < 1) throw DomainError("config: k must be positive");
    if (!(xi_beta >= 0.0 && xi_beta <= 1.0)) throw DomainError("config: beta must lie in [0, 1]");
    if (m >= 3 && xi_beta > 0.5) throw DomainError("config: beta > 1/2 is not supported for m >= 3");
    if (!(kappa >= 0.0 && kappa <= 1.0)) throw DomainError("config: kappa must lie in [0, 1]");
  }
}

std::uint64_t trial_stream_id(std::uint64_t seed, Model model, int n, std::uint64_t trial) {
  return hash_words({seed, static_cast<std::uint64_t>(model), static_cast<std::uint64_t>(n), trial});
}

ScanResult run_scan(const ExperimentConfig& config) {
  config.validate();
  const auto kind = config.model == Model::pspin ? ConstraintKind::spin_overlap : ConstraintKind::hamming_distance;
  const auto constraint = kind == ConstraintKind::spin_overlap
                              ? OverlapConstraint::spin_overlap(config.n, config.m, config.xi_beta, config.eta)
                              : OverlapConstraint::hamming_distance(config.n, config.m, config.xi_beta, config.eta);
  const auto patterns = anchored_patterns(constraint, config.budget);
  if (config.m > 1 && patterns.offsets.empty()) throw EmptyFamily("run_scan: constrained family is empty at this n");

  std::vector<std::int64_t> clauses;
  if (config.model == Model::ksat)
    for (double g : config.gammas) clauses.push_back(clause_count(config.n, config.pk, g));

  std::vector<TrialOutcome> outcomes(config.trials);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t t = next++; t < config.trials; t = next++) {
      try {
        outcomes[t] = config.model == Model::pspin ? run_pspin_trial(config, patterns, t)
                                                   : run_ksat_trial(config, patterns, clauses, t);
      } catch (const BudgetExceeded&) {
        outcomes[t] = TrialOutcome{};
        outcomes[t].failed = true;
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(config.trials)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  ScanResult result;
  result.config = config;
  result.version = std::string(library_version());
  for (const auto& o : outcomes) {
    if (o.failed) {
      ++result.failed_trials;
    } else {
      result.trial_statistics.push_back(o.statistic);
    }
  }
  for (std::size_t g = 0; g < config.gammas.size(); ++g) {
    ScanRow row;
    row.gamma = config.gammas[g];
    row.seed = config.seed;
    row.kappa = row_kappa(config, row.gamma);
    if (config.model == Model::ksat) row.clauses = clauses[g];
    row.degenerate = config.model == Model::pspin ? row.gamma <= 0.0 : row.clauses == 0;
    row.incomplete = result.failed_trials != 0;
    for (const auto& o : outcomes) {
      if (o.failed) continue;
      ++row.trials;
      if (o.success[g]) ++row.successes;
    }
    if (row.trials > 0) {
      row.p_hat = static_cast<double>(row.successes) / static_cast<double>(row.trials);
      const auto ci = wilson_interval(row.successes, row.trials);
      row.ci_low = ci.low;
      row.ci_high = ci.high;
    } else {
      row.ci_low = 0.0;
      row.ci_high = 1.0;
    }
    result.rows.push_back(row);
  }
  return result;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw DomainError("wilson_interval: no trials");
  if (successes > trials) throw DomainError("wilson_interval: successes exceed trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  Interval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
  ci.low = std::min(ci.low, p);
  ci.high = std::max(ci.high, p);
  return ci;
}

std::optional<double> estimate_crossing(std::span<const double> gammas, std::span<const double> p_hat, double level) {
  if (gammas.size() != p_hat.size()) throw DimensionMismatch("estimate_crossing: length mismatch");
  if (gammas.size() < 2) throw DomainError("estimate_crossing: needs at least two points");
  for (std::size_t i = 0; i + 1 < gammas.size(); ++i) {
    const double a = p_hat[i], b = p_hat[i + 1];
    if (a >= level && b < level) {
      const double f = (a - level) / (a - b);
      return gammas[i] + f * (gammas[i + 1] - gammas[i]);
    }
  }
  return std::nullopt;
}

std::optional<double> estimate_crossing(const ScanResult& result, double level) {
  std::vector<double> g, p;
  for (const auto& r : result.rows) {
    g.push_back(r.gamma);
    p.push_back(r.p_hat);
  }
  return estimate_crossing(g, p, level);
}

std::string_view library_version() noexcept { return MOGP_VERSION; }

}  // namespace mogp
