#include "cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mogp/bounds.hpp"
#include "mogp/error.hpp"
#include "mogp/harness.hpp"
#include "mogp/io.hpp"
#include "mogp/ksat.hpp"
#include "mogp/pspin.hpp"
#include "mogp/selftest.hpp"
#include "mogp/tuples.hpp"

namespace mogp::cli {

namespace {

using nlohmann::json;

struct GridOptions {
  double start = 0.05;
  double stop = 1.0;
  int steps = 20;
  std::vector<double> values;

  std::vector<double> grid() const { return values.empty() ? gamma_grid(start, stop, steps) : values; }
};

struct BudgetOptions {
  std::size_t memory_bytes = Budget{}.memory_bytes;
  std::uint64_t max_nodes = Budget{}.max_nodes;

  Budget budget() const { return {memory_bytes, max_nodes}; }
};

void add_grid(CLI::App* app, GridOptions& g) {
  app->add_option("--gamma-start", g.start, "First grid point")->capture_default_str();
  app->add_option("--gamma-stop", g.stop, "Last grid point")->capture_default_str();
  app->add_option("--gamma-steps", g.steps, "Number of grid points")->capture_default_str();
  app->add_option("--gammas", g.values, "Explicit grid (overrides start/stop/steps)")->delimiter(',');
}

void add_budget(CLI::App* app, BudgetOptions& b) {
  app->add_option("--memory-bytes", b.memory_bytes, "Memory budget per instance")->capture_default_str();
  app->add_option("--max-nodes", b.max_nodes, "Enumeration node budget")->capture_default_str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot open " + path + " for writing");
  f << text;
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int emit_scan(const ScanResult& r, const std::string& out_path, bool json_stdout, std::ostream& out,
              std::ostream& err) {
  if (!out_path.empty()) {
    write_text(out_path, ends_with(out_path, ".json") ? scan_json(r) : scan_csv(r));
  } else {
    out << (json_stdout ? scan_json(r) + "\n" : scan_csv(r));
  }
  if (r.incomplete()) {
    err << "scan incomplete: " << r.failed_trials << " trial(s) exhausted the budget\n";
    return kBudget;
  }
  return kOk;
}

Eigen::MatrixXd parse_matrix(const std::string& text) {
  // Rows separated by ';', entries by ','.
  std::vector<std::vector<double>> rows;
  std::stringstream rs(text);
  std::string row;
  while (std::getline(rs, row, ';')) {
    std::vector<double> r;
    std::stringstream es(row);
    std::string e;
    while (std::getline(es, e, ',')) r.push_back(std::stod(e));
    rows.push_back(std::move(r));
  }
  const auto d = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != d)
      throw DimensionMismatch("matrix must be square");
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"m-OGP numerical laboratory: random p-spin and k-SAT ensembles, maximin statistics, bounds"};
  app.set_version_flag("--version", std::string(library_version()));
  app.require_subcommand(1);
  // Sections name subcommands: [pspin-scan], [ksat-scan], [bounds.pspin], ...
  app.set_config("--config", "", "INI/TOML file of option = value pairs, one section per subcommand");

  std::function<int()> action;

  // ------------------------------------------------------------ pspin-scan
  ExperimentConfig ps;
  ps.model = Model::pspin;
  GridOptions ps_grid;
  BudgetOptions ps_budget;
  std::string ps_out;
  bool ps_json = false;
  auto* pscan = app.add_subcommand("pspin-scan", "Empirical P[S nonempty] across a gamma grid, p-spin model");
  pscan->add_option("--n", ps.n, "Number of spins")->capture_default_str();
  pscan->add_option("--p", ps.pk, "Interaction order")->capture_default_str();
  pscan->add_option("--m", ps.m, "Tuple size")->capture_default_str();
  pscan->add_option("--xi", ps.xi_beta, "Overlap upper end")->capture_default_str();
  pscan->add_option("--eta", ps.eta, "Overlap band width")->capture_default_str();
  pscan->add_option("--trials", ps.trials, "Trials per grid point")->capture_default_str();
  pscan->add_option("--seed", ps.seed, "Master seed")->required();
  pscan->add_option("--threads", ps.threads, "Worker threads")->capture_default_str();
  pscan->add_option("--out", ps_out, "Output path (.json for JSON, otherwise CSV)");
  pscan->add_flag("--json", ps_json, "Print JSON instead of CSV on stdout");
  add_grid(pscan, ps_grid);
  add_budget(pscan, ps_budget);
  pscan->callback([&] {
    action = [&] {
      ps.gammas = ps_grid.grid();
      ps.budget = ps_budget.budget();
      return emit_scan(run_scan(ps), ps_out, ps_json, out, err);
    };
  });

  // ------------------------------------------------------------ ksat-scan
  ExperimentConfig ks;
  ks.model = Model::ksat;
  ks.n = 10;
  ks.pk = 3;
  ks.xi_beta = 0.5;
  ks.eta = 0.2;
  GridOptions ks_grid;
  ks_grid.stop = 1.5;
  BudgetOptions ks_budget;
  std::string ks_out;
  bool ks_json = false;
  auto* kscan = app.add_subcommand("ksat-scan", "Empirical P[S nonempty] across a gamma grid, random k-SAT");
  kscan->add_option("--n", ks.n, "Number of variables")->capture_default_str();
  kscan->add_option("--k", ks.pk, "Clause width")->capture_default_str();
  kscan->add_option("--m", ks.m, "Tuple size")->capture_default_str();
  kscan->add_option("--beta", ks.xi_beta, "Normalized distance upper end")->capture_default_str();
  kscan->add_option("--eta", ks.eta, "Distance band width")->capture_default_str();
  auto* kappa_opt = kscan->add_option("--kappa", ks.kappa, "Allowed violated fraction")->capture_default_str();
  kscan->add_flag("--kappa-auto", ks.kappa_auto, "kappa = C(gamma) 2^{-k/2} at each grid point")->excludes(kappa_opt);
  kscan->add_option("--trials", ks.trials, "Trials per grid point")->capture_default_str();
  kscan->add_option("--seed", ks.seed, "Master seed")->required();
  kscan->add_option("--threads", ks.threads, "Worker threads")->capture_default_str();
  kscan->add_option("--out", ks_out, "Output path (.json for JSON, otherwise CSV)");
  kscan->add_flag("--json", ks_json, "Print JSON instead of CSV on stdout");
  add_grid(kscan, ks_grid);
  add_budget(kscan, ks_budget);
  kscan->callback([&] {
    action = [&] {
      ks.gammas = ks_grid.grid();
      ks.budget = ks_budget.budget();
      return emit_scan(run_scan(ks), ks_out, ks_json, out, err);
    };
  });

  // ------------------------------------------------------------ bounds
  auto* bounds = app.add_subcommand("bounds", "Closed-form bounds and exponents");
  bounds->require_subcommand(1);
  struct {
    int m = 2, p = 3, k = 10, n = 100, count_n = 10;
    double gamma = 0.5, xi = 0.5, eta = 0.25, beta = 0.3, eps = -1.0, x = 2.0, alpha = 0.5;
    std::string sigma, t;
  } b;

  auto* b_pspin = bounds->add_subcommand("pspin", "p-spin moment exponents");
  b_pspin->add_option("--m", b.m)->capture_default_str();
  b_pspin->add_option("--gamma", b.gamma)->capture_default_str();
  b_pspin->add_option("--p", b.p)->capture_default_str();
  b_pspin->add_option("--xi", b.xi)->capture_default_str();
  b_pspin->add_option("--eta", b.eta)->capture_default_str();
  b_pspin->add_option("--epsilon-star", b.eps, "Defaults to epsilon_star(m, gamma)");
  b_pspin->callback([&] {
    action = [&] {
      const double e = b.eps > 0 ? b.eps : epsilon_star(b.m, b.gamma);
      auto report = json::parse(exponent_json(pspin_exponents(b.m, b.gamma, b.p, b.xi, b.eta, e)));
      const auto p_min = min_p_for_positive_margin(b.m, b.gamma, b.xi, b.eta, e);
      report["min_p_positive_margin"] = p_min ? json(*p_min) : json(nullptr);
      out << report.dump(2) << '\n';
      return kOk;
    };
  });

  auto* b_ksat = bounds->add_subcommand("ksat", "k-SAT moment exponents");
  b_ksat->add_option("--m", b.m)->capture_default_str();
  b_ksat->add_option("--gamma", b.gamma)->capture_default_str();
  b_ksat->add_option("--k", b.k)->capture_default_str();
  b_ksat->add_option("--beta", b.beta)->capture_default_str();
  b_ksat->add_option("--eta", b.eta)->capture_default_str();
  b_ksat->add_option("--epsilon", b.eps)->required();
  b_ksat->callback([&] {
    action = [&] {
      out << exponent_json(ksat_exponents(b.m, b.gamma, b.k, b.beta, b.eta, b.eps)) << '\n';
      return kOk;
    };
  });

  auto* b_eps = bounds->add_subcommand("epsilon-star", "Separation radius for (m, gamma)");
  b_eps->add_option("--m", b.m)->capture_default_str();
  b_eps->add_option("--gamma", b.gamma)->capture_default_str();
  b_eps->callback([&] {
    action = [&] {
      const double e = epsilon_star(b.m, b.gamma);
      out << json{{"epsilon_star", e}, {"entropy", binary_entropy(e)}, {"limit", 1.0 - b.m * b.gamma * b.gamma}}.dump(2)
          << '\n';
      return kOk;
    };
  });

  auto* b_dp = bounds->add_subcommand("delta-p", "Frobenius envelope of the covariance deviation");
  b_dp->add_option("--m", b.m)->capture_default_str();
  b_dp->add_option("--xi", b.xi)->capture_default_str();
  b_dp->add_option("--epsilon-star", b.eps)->required();
  b_dp->add_option("--p", b.p)->capture_default_str();
  b_dp->callback([&] {
    action = [&] {
      out << json{{"delta_p", delta_p(b.m, b.xi, b.eps, b.p)}}.dump(2) << '\n';
      return kOk;
    };
  });

  auto* b_kappa = bounds->add_subcommand("kappa", "Violation fraction constant C and C 2^{-k/2}");
  b_kappa->add_option("--gamma", b.gamma)->capture_default_str();
  b_kappa->add_option("--k", b.k)->capture_default_str();
  b_kappa->callback([&] {
    action = [&] {
      out << json{{"C", ksat_kappa_constant(b.gamma)}, {"kappa", ksat_kappa(b.gamma, b.k)}}.dump(2) << '\n';
      return kOk;
    };
  });

  auto* b_repair = bounds->add_subcommand("repair", "Concentration deviation t* for the k-SAT repair step");
  b_repair->add_option("--n", b.n)->capture_default_str();
  b_repair->add_option("--k", b.k)->capture_default_str();
  b_repair->add_option("--m", b.m)->capture_default_str();
  b_repair->add_option("--gamma", b.gamma)->capture_default_str();
  b_repair->add_option("--beta", b.beta)->capture_default_str();
  b_repair->add_option("--eta", b.eta)->capture_default_str();
  b_repair->add_option("--epsilon", b.eps)->required();
  b_repair->callback([&] {
    action = [&] {
      out << repair_json(repair_threshold(b.n, b.k, b.m, b.gamma, b.beta, b.eta, b.eps)) << '\n';
      return kOk;
    };
  });

  auto* b_count = bounds->add_subcommand("counting", "Hamming-ball size against 2^{n h_b(alpha)}");
  b_count->add_option("--n", b.count_n)->capture_default_str();
  b_count->add_option("--alpha", b.alpha)->capture_default_str();
  b_count->callback([&] {
    action = [&] {
      const auto r = counting_bound_check(b.count_n, b.alpha);
      out << json{{"holds", r.holds}, {"sum", r.sum.str()}, {"log2_sum", r.log2_sum}, {"log2_bound", r.log2_bound}}.dump(2)
          << '\n';
      return r.holds ? kOk : kCheckFailed;
    };
  });

  auto* b_tail = bounds->add_subcommand("gaussian-tail", "Standard normal tail and its lower bound");
  b_tail->add_option("--x", b.x)->capture_default_str();
  b_tail->callback([&] {
    action = [&] {
      out << json{{"tail", gaussian_tail(b.x)}, {"lower", gaussian_tail_lower(b.x)}}.dump(2) << '\n';
      return kOk;
    };
  });

  auto* b_savage = bounds->add_subcommand("savage", "Sandwich for a multivariate normal upper tail");
  b_savage->add_option("--sigma", b.sigma, "Rows split by ';', entries by ','")->required();
  b_savage->add_option("--t", b.t, "Comma-separated thresholds")->required();
  b_savage->callback([&] {
    action = [&] {
      const auto sigma = parse_matrix(b.sigma);
      std::vector<double> tvals;
      std::stringstream ts(b.t);
      std::string e;
      while (std::getline(ts, e, ',')) tvals.push_back(std::stod(e));
      const Eigen::VectorXd t = Eigen::Map<Eigen::VectorXd>(tvals.data(), static_cast<Eigen::Index>(tvals.size()));
      const auto r = savage_bounds(sigma, t);
      out << json{{"lower", r.lower}, {"upper", r.upper}, {"density", r.density}}.dump(2) << '\n';
      return kOk;
    };
  });

  // ------------------------------------------------------------ tuple
  auto* tuple = app.add_subcommand("tuple", "Constrained tuple families");
  tuple->require_subcommand(1);
  struct {
    int n = 6, m = 2, attempts = 1;
    std::string kind = "spin";
    double upper = 0.5, eta = 0.25, delta = 0.05;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> anchor;
    std::size_t limit = 100;
    std::string out;
    BudgetOptions budget;
  } tu;
  auto constraint = [&] {
    if (tu.kind == "spin") return OverlapConstraint::spin_overlap(tu.n, tu.m, tu.upper, tu.eta);
    if (tu.kind == "assignment") return OverlapConstraint::hamming_distance(tu.n, tu.m, tu.upper, tu.eta);
    throw DomainError("--kind must be spin or assignment");
  };
  auto add_family = [&](CLI::App* a) {
    a->add_option("--n", tu.n)->capture_default_str();
    a->add_option("--m", tu.m)->capture_default_str();
    a->add_option("--kind", tu.kind, "spin (overlap band) or assignment (distance band)")->capture_default_str();
    a->add_option("--upper", tu.upper, "xi for spins, beta for assignments")->capture_default_str();
    a->add_option("--eta", tu.eta)->capture_default_str();
    add_budget(a, tu.budget);
  };

  auto* t_count = tuple->add_subcommand("count", "Exact family size and anchored count");
  add_family(t_count);
  t_count->callback([&] {
    action = [&] {
      const auto c = constraint();
      const auto w = c.distance_window();
      const auto anchored = anchored_count(c, 0, tu.budget.budget());
      const auto total = family_count(c, tu.budget.budget(), 1);
      out << json{{"n", c.n()},          {"m", c.m()},         {"lower", c.lower()},
                  {"upper", c.upper()},  {"min_distance", w.min_d}, {"max_distance", w.max_d},
                  {"anchored", anchored.str()}, {"total", total.str()}}
                 .dump(2)
          << '\n';
      return kOk;
    };
  });

  auto* t_enum = tuple->add_subcommand("enumerate", "Witnesses in enumeration order, as JSON lines");
  add_family(t_enum);
  t_enum->add_option("--anchor", tu.anchor, "Rank of the first member");
  t_enum->add_option("--limit", tu.limit)->capture_default_str();
  t_enum->add_option("--out", tu.out, "Output path (stdout otherwise)");
  t_enum->callback([&] {
    action = [&] {
      std::string text;
      for (const auto& w : collect_family(constraint(), tu.anchor, tu.limit, tu.budget.budget()))
        text += witness_json(w) + "\n";
      if (tu.out.empty()) out << text;
      else write_text(tu.out, text);
      return kOk;
    };
  });

  auto* t_sample = tuple->add_subcommand("sample", "Product-measure sampler for spin tuples");
  t_sample->add_option("--n", tu.n)->capture_default_str();
  t_sample->add_option("--m", tu.m)->capture_default_str();
  t_sample->add_option("--xi", tu.upper)->capture_default_str();
  t_sample->add_option("--eta", tu.eta)->capture_default_str();
  t_sample->add_option("--delta", tu.delta)->capture_default_str();
  t_sample->add_option("--seed", tu.seed)->required();
  t_sample->add_option("--attempts", tu.attempts, "Independent attempts (stream id = attempt index)")
      ->capture_default_str();
  t_sample->callback([&] {
    action = [&] {
      int successes = 0;
      for (int a = 0; a < tu.attempts; ++a) {
        RandomStream st(tu.seed, static_cast<std::uint64_t>(a));
        const auto w = construct_tuple_probabilistic(tu.n, tu.m, tu.upper, tu.eta, tu.delta, st);
        if (w) {
          ++successes;
          out << witness_json(*w) << '\n';
        }
      }
      err << successes << " of " << tu.attempts << " attempts succeeded\n";
      return successes > 0 ? kOk : kCheckFailed;
    };
  });

  // ------------------------------------------------------------ oracle
  auto* oracle = app.add_subcommand("oracle", "Exact statistic for one seeded instance");
  oracle->require_subcommand(1);
  struct {
    int n = 8, pk = 3, m = 2;
    double upper = 0.5, eta = 0.25, gamma = 0.5, kappa = 0.0;
    std::uint64_t seed = 0;
    std::string save, load;
    BudgetOptions budget;
  } orc;

  auto* o_pspin = oracle->add_subcommand("pspin", "T over the overlap family");
  o_pspin->add_option("--n", orc.n)->capture_default_str();
  o_pspin->add_option("--p", orc.pk)->capture_default_str();
  o_pspin->add_option("--m", orc.m)->capture_default_str();
  o_pspin->add_option("--xi", orc.upper)->capture_default_str();
  o_pspin->add_option("--eta", orc.eta)->capture_default_str();
  o_pspin->add_option("--gamma", orc.gamma, "Report S nonemptiness at this gamma")->capture_default_str();
  o_pspin->add_option("--seed", orc.seed)->capture_default_str();
  o_pspin->add_option("--save-disorder", orc.save, "Write the sampled disorder (binary)");
  o_pspin->add_option("--load-disorder", orc.load, "Read disorder instead of sampling");
  add_budget(o_pspin, orc.budget);
  o_pspin->callback([&] {
    action = [&] {
      const auto budget = orc.budget.budget();
      auto J = [&] {
        if (!orc.load.empty()) {
          std::ifstream f(orc.load, std::ios::binary);
          if (!f) throw FormatError("cannot open " + orc.load);
          return read_disorder(f);
        }
        RandomStream st(orc.seed, 0);
        return sample_disorder(orc.n, orc.pk, st, budget);
      }();
      if (!orc.save.empty()) {
        std::ofstream f(orc.save, std::ios::binary);
        write_disorder(f, J);
      }
      const auto r = t_statistic(J, orc.m, orc.upper, orc.eta, budget);
      const double threshold = GroundStateTarget::from_gamma(orc.gamma).threshold;
      out << json{{"T", r.value},
                  {"threshold", threshold},
                  {"nonempty", r.value >= threshold},
                  {"nodes", r.nodes},
                  {"witness", json::parse(witness_json(r.witness))}}
                 .dump(2)
          << '\n';
      return kOk;
    };
  });

  auto* o_ksat = oracle->add_subcommand("ksat", "Z over the distance family");
  o_ksat->add_option("--n", orc.n)->capture_default_str();
  o_ksat->add_option("--k", orc.pk)->capture_default_str();
  o_ksat->add_option("--m", orc.m)->capture_default_str();
  o_ksat->add_option("--beta", orc.upper)->capture_default_str();
  o_ksat->add_option("--eta", orc.eta)->capture_default_str();
  o_ksat->add_option("--gamma", orc.gamma, "Clause density")->capture_default_str();
  o_ksat->add_option("--kappa", orc.kappa)->capture_default_str();
  o_ksat->add_option("--seed", orc.seed)->capture_default_str();
  o_ksat->add_option("--save-formula", orc.save, "Write the sampled formula (DIMACS)");
  o_ksat->add_option("--load-formula", orc.load, "Read a formula instead of sampling");
  add_budget(o_ksat, orc.budget);
  o_ksat->callback([&] {
    action = [&] {
      const auto budget = orc.budget.budget();
      auto phi = [&] {
        if (!orc.load.empty()) {
          std::ifstream f(orc.load);
          if (!f) throw FormatError("cannot open " + orc.load);
          return read_dimacs(f);
        }
        RandomStream st(orc.seed, 0);
        return sample_formula(DensityParams::make(orc.n, orc.pk, orc.gamma), st);
      }();
      if (!orc.save.empty()) {
        std::ofstream f(orc.save);
        write_dimacs(f, phi, orc.gamma, orc.seed);
      }
      const auto r = z_statistic(phi, orc.m, orc.upper, orc.eta, budget);
      const auto threshold = sat_threshold(phi.size(), orc.kappa);
      out << json{{"Z", r.value},
                  {"M", phi.size()},
                  {"threshold", threshold},
                  {"nonempty", r.value >= threshold},
                  {"nodes", r.nodes},
                  {"witness", json::parse(witness_json(r.witness))}}
                 .dump(2)
          << '\n';
      return kOk;
    };
  });

  // ------------------------------------------------------------ selftest
  std::string suite = "all";
  auto* st = app.add_subcommand("selftest", "Invariant checks with fixed seeds, one JSON line per check");
  st->add_option("--suite", suite, "lemmas, pspin, ksat, bounds or all")
      ->check(CLI::IsMember(selftest_suites()))
      ->capture_default_str();
  st->callback([&] {
    action = [&] {
      const auto report = selftest(suite);
      out << report.json_lines();
      return report.passed() ? kOk : kCheckFailed;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  try {
    return action ? action() : kUsage;
  } catch (const BudgetExceeded& e) {
    err << "budget exhausted: " << e.what() << '\n';
    return kBudget;
  } catch (const EmptyFamily& e) {
    err << "empty family: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

int run_cli(int argc, const char* const* argv) { return run_cli(argc, argv, std::cout, std::cerr); }

}  // namespace mogp::cli
