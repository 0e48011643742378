#include "mogp/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "mogp/bounds.hpp"
#include "mogp/error.hpp"
#include "mogp/ksat.hpp"
#include "mogp/pspin.hpp"
#include "mogp/random.hpp"
#include "mogp/tuples.hpp"

namespace mogp {

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

Outcome pass(std::string detail = {}) { return {true, std::move(detail)}; }
Outcome fail(std::string detail) { return {false, std::move(detail)}; }

template <class F>
void run_check(SelftestReport& report, std::string_view suite, std::string_view name, F&& body) {
  CheckResult r;
  r.suite = suite;
  r.name = name;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Outcome o = body();
    r.passed = o.passed;
    r.detail = o.detail;
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  report.checks.push_back(std::move(r));
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(10);
  s << x;
  return s.str();
}

// Uniform member of the family: the family is {(r, r ^ x_2, ...)} over all
// anchors r and anchored patterns x, each tuple exactly once.
TupleWitness random_member(const OffsetPatterns& patterns, RandomStream& stream) {
  const std::uint64_t anchor = stream.uniform_below(std::uint64_t{1} << patterns.n);
  const auto idx = stream.uniform_below(patterns.size());
  std::vector<std::uint64_t> ranks{anchor};
  for (auto x : patterns.pattern(idx)) ranks.push_back(anchor ^ x);
  return make_witness(patterns.n, ConstraintKind::spin_overlap, ranks);
}

Eigen::MatrixXd random_symmetric(int d, double scale, RandomStream& s) {
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = scale * s.standard_normal();
  return a;
}

// ---------------------------------------------------------------- lemmas

void suite_lemmas(SelftestReport& rep) {
  const std::string_view s = "lemmas";

  run_check(rep, s, "overlap_equals_n_minus_2d", [] {
    for (int n = 1; n <= 8; ++n) {
      const std::uint64_t count = std::uint64_t{1} << n;
      for (std::uint64_t a = 0; a < count; ++a) {
        for (std::uint64_t b = 0; b < count; ++b) {
          const auto x = SpinConfiguration::from_rank(n, a), y = SpinConfiguration::from_rank(n, b);
          int direct = 0;
          for (int i = 0; i < n; ++i) direct += x.spin(i) * y.spin(i);
          if (overlap(x, y) != direct || direct != n - 2 * hamming(x, y))
            return fail("n=" + std::to_string(n) + " a=" + std::to_string(a) + " b=" + std::to_string(b));
        }
      }
    }
    return pass("n <= 8 exhaustive");
  });

  run_check(rep, s, "hamming_is_metric", [] {
    RandomStream st(11, 1);
    for (int trial = 0; trial < 1000; ++trial) {
      const int n = 1 + static_cast<int>(st.uniform_below(150));
      std::vector<BooleanAssignment> v;
      for (int j = 0; j < 3; ++j) {
        BitString b(n);
        for (int i = 0; i < n; ++i) b.set(i, st.bernoulli(0.5));
        v.emplace_back(std::move(b));
      }
      const int ab = hamming(v[0], v[1]), bc = hamming(v[1], v[2]), ac = hamming(v[0], v[2]);
      if (ab != hamming(v[1], v[0]) || hamming(v[0], v[0]) != 0 || ab < 0 || ac > ab + bc || ab > n)
        return fail("trial " + std::to_string(trial));
    }
    return pass("1000 random triples");
  });

  run_check(rep, s, "stream_reproducibility", [] {
    RandomStream a(123, 7), b(123, 7), c(123, 8);
    int same_as_other = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto x = a.next_u64();
      if (x != b.next_u64()) return fail("identical streams diverged at draw " + std::to_string(i));
      if (x == c.next_u64()) ++same_as_other;
    }
    if (same_as_other > 0) return fail("distinct stream ids produced equal draws");
    return pass();
  });

  run_check(rep, s, "counting_bound_grid", [] {
    for (int n = 0; n <= 30; ++n)
      for (int a = 1; a <= 10; ++a)
        if (!counting_bound_check(n, 0.05 * a).holds)
          return fail("n=" + std::to_string(n) + " alpha=" + fmt(0.05 * a));
    return pass("n <= 30, alpha in {0.05, ..., 0.5}");
  });

  run_check(rep, s, "paley_zygmund_sample_identity", [] {
    RandomStream st(12, 1);
    for (int set = 0; set < 1000; ++set) {
      const auto size = 1 + st.uniform_below(200);
      std::vector<double> z(size);
      const int shape = set % 3;
      for (auto& x : z) {
        if (shape == 0) x = -std::log1p(-st.uniform());
        else if (shape == 1) x = st.bernoulli(0.25) ? 1.0 : 0.0;
        else x = std::abs(st.standard_normal());
      }
      const double theta = st.uniform();
      const auto r = paley_zygmund_check(z, theta);
      if (!r.holds) return fail("set " + std::to_string(set) + " lhs=" + fmt(r.lhs) + " rhs=" + fmt(r.rhs));
    }
    return pass("1000 sample sets");
  });

  run_check(rep, s, "wielandt_hoffman", [] {
    RandomStream st(13, 1);
    for (int trial = 0; trial < 1000; ++trial) {
      const int d = 1 + static_cast<int>(st.uniform_below(20));
      const auto a = random_symmetric(d, 1.0, st);
      const auto e = random_symmetric(d, st.uniform(), st);
      const auto r = wielandt_hoffman_check(a, e);
      if (!r.holds) return fail("trial " + std::to_string(trial));
    }
    return pass("1000 random pairs, d <= 20");
  });

  run_check(rep, s, "gaussian_tail_lower_below_tail", [] {
    for (double x = 1.05; x <= 12.0; x += 0.05)
      if (!(gaussian_tail_lower(x) <= gaussian_tail(x))) return fail("x=" + fmt(x));
    return pass();
  });

  run_check(rep, s, "savage_sandwich", [] {
    RandomStream st(14, 1);
    int checked = 0;
    while (checked < 20) {
      const int d = 1 + static_cast<int>(st.uniform_below(4));
      Eigen::MatrixXd sigma = Eigen::MatrixXd::Identity(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < i; ++j) sigma(i, j) = sigma(j, i) = 0.1 * (st.uniform() - 0.5);
      Eigen::VectorXd t(d);
      for (int i = 0; i < d; ++i) t[i] = 1.0 + (2.0 / d) * st.uniform();
      if ((sigma.llt().solve(t).array() <= 0.0).any()) continue;
      const auto b = savage_bounds(sigma, t);
      const auto mc = mvn_tail_mc(sigma, t, 200000, st);
      if (mc.value < b.lower - 3.0 * mc.standard_error || mc.value > b.upper + 3.0 * mc.standard_error)
        return fail("d=" + std::to_string(d) + " mc=" + fmt(mc.value) + " bounds=[" + fmt(b.lower) + ", " +
                    fmt(b.upper) + "]");
      ++checked;
    }
    return pass("20 matrices, 2e5 samples each");
  });

  run_check(rep, s, "slepian_direction", [] {
    RandomStream st(15, 1);
    for (int d = 2; d <= 3; ++d) {
      Eigen::MatrixXd x = Eigen::MatrixXd::Identity(d, d);
      Eigen::MatrixXd y = Eigen::MatrixXd::Constant(d, d, 0.5);
      y.diagonal().setOnes();
      const auto r = slepian_check(x, y, Eigen::VectorXd::Ones(d), 200000, st);
      if (!r.holds || !(r.y.value - r.x.value > 5.0 * r.pooled_se))
        return fail("d=" + std::to_string(d) + " x=" + fmt(r.x.value) + " y=" + fmt(r.y.value));
    }
    return pass();
  });
}

// ---------------------------------------------------------------- pspin

void suite_pspin(SelftestReport& rep) {
  const std::string_view s = "pspin";

  run_check(rep, s, "energy_table_matches_direct", [] {
    for (auto [n, p] : {std::pair{3, 2}, std::pair{10, 3}, std::pair{8, 4}}) {
      RandomStream st(21, static_cast<std::uint64_t>(n * 10 + p));
      const auto J = sample_disorder(n, p, st);
      const auto fast = energy_table(J);
      const auto slow = energy_table_direct(J);
      double worst = 0.0, scale = 0.0;
      for (std::size_t r = 0; r < fast.values.size(); ++r) {
        worst = std::max(worst, std::abs(fast.values[r] - slow.values[r]));
        scale = std::max(scale, std::abs(slow.values[r]));
      }
      if (!fast.gray_code || worst > std::ldexp(scale, -40))
        return fail("n=" + std::to_string(n) + " p=" + std::to_string(p) + " err=" + fmt(worst));
    }
    return pass();
  });

  run_check(rep, s, "even_p_sign_symmetry", [] {
    RandomStream st(22, 1);
    const auto J = sample_disorder(9, 2, st);
    const auto t = energy_table(J);
    const auto full = full_mask(9);
    for (std::uint64_t r = 0; r <= full; ++r)
      if (std::abs(t.values[r] - t.values[r ^ full]) > 1e-12) return fail("rank " + std::to_string(r));
    return pass();
  });

  run_check(rep, s, "hamiltonian_linear_in_disorder", [] {
    RandomStream st(23, 1);
    for (int trial = 0; trial < 50; ++trial) {
      const auto J1 = sample_disorder(6, 3, st), J2 = sample_disorder(6, 3, st);
      const double a = st.standard_normal(), b = st.standard_normal();
      std::vector<double> mix(J1.entries().size());
      for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = a * J1.entries()[i] + b * J2.entries()[i];
      const DisorderTensor J(6, 3, std::move(mix));
      const auto x = SpinConfiguration::from_rank(6, st.uniform_below(64));
      const double lhs = hamiltonian(J, x), rhs = a * hamiltonian(J1, x) + b * hamiltonian(J2, x);
      if (std::abs(lhs - rhs) > 1e-12 * (1.0 + std::abs(rhs))) return fail("trial " + std::to_string(trial));
    }
    return pass();
  });

  run_check(rep, s, "covariance_law", [] {
    RandomStream st(24, 1);
    const auto a = SpinConfiguration::all_plus(8);
    for (int p : {2, 3}) {
      for (int d : {0, 2, 4, 8}) {
        const auto b = SpinConfiguration::from_rank(8, full_mask(8) ^ full_mask(d));
        const double q = (8.0 - 2.0 * d) / 8.0;
        const auto est = empirical_covariance(a, b, p, 20000, st);
        const double expect = std::pow(q, p);
        if (std::abs(est.value - expect) > 5.0 * est.standard_error + 1e-12)
          return fail("p=" + std::to_string(p) + " d=" + std::to_string(d) + " est=" + fmt(est.value));
      }
    }
    return pass("n=8, 2e4 disorders per pair");
  });

  run_check(rep, s, "t_monotone_under_refinement", [] {
    RandomStream st(25, 1);
    for (int trial = 0; trial < 10; ++trial) {
      const auto J = sample_disorder(8, 3, st);
      double prev = INFINITY;
      for (double eta : {0.5, 0.25, 0.0}) {
        const double t = t_statistic(J, 2, 0.5, eta).value;
        if (t > prev) return fail("trial " + std::to_string(trial));
        prev = t;
      }
    }
    return pass();
  });

  run_check(rep, s, "s_nonempty_monotone_in_gamma", [] {
    RandomStream st(26, 1);
    const auto J = sample_disorder(8, 3, st);
    bool prev = true;
    for (double g = 0.0; g <= 1.5; g += 0.05) {
      const bool now = s_nonempty(J, g, 2, 0.5, 0.25);
      if (now && !prev) return fail("gamma=" + fmt(g));
      prev = now;
    }
    return pass();
  });

  run_check(rep, s, "t_lipschitz", [] {
    RandomStream st(27, 1);
    for (int trial = 0; trial < 20; ++trial) {
      const auto J = sample_disorder(8, 3, st);
      auto e = J.entries();
      const double scale = st.uniform();
      for (auto& x : e) x += scale * st.standard_normal();
      const auto r = t_lipschitz_check(J, DisorderTensor(8, 3, std::move(e)), 2, 0.5, 0.25);
      if (!r.holds) return fail("trial " + std::to_string(trial));
    }
    return pass("20 perturbation pairs");
  });

  run_check(rep, s, "t_single_member_is_ground_state", [] {
    RandomStream st(28, 1);
    const auto J = sample_disorder(9, 3, st);
    const auto table = energy_table(J);
    const double best = *std::max_element(table.values.begin(), table.values.end());
    const double t = t_statistic(J, 1, 0.5, 0.25).value;
    return t == best ? pass() : fail("T=" + fmt(t) + " max=" + fmt(best));
  });
}

// ---------------------------------------------------------------- ksat

void suite_ksat(SelftestReport& rep) {
  const std::string_view s = "ksat";

  run_check(rep, s, "pair_violation_exhaustive", [] {
    for (int n = 1; n <= 4; ++n) {
      for (int k = 1; k <= 3; ++k) {
        const std::uint64_t count = std::uint64_t{1} << n;
        std::uint64_t clauses = 1;
        for (int j = 0; j < k; ++j) clauses *= 2 * n;
        for (std::uint64_t a = 0; a < count; ++a) {
          for (std::uint64_t b = 0; b < count; ++b) {
            const auto x = BooleanAssignment::from_rank(n, a), y = BooleanAssignment::from_rank(n, b);
            std::uint64_t both = 0;
            for (std::uint64_t c = 0; c < clauses; ++c) {
              Clause cl;
              std::uint64_t code = c;
              for (int j = 0; j < k; ++j, code /= 2 * n) {
                const auto u = code % (2 * n);
                cl.literals.push_back({static_cast<int>(u >> 1), (u & 1u) != 0});
              }
              if (!cl.satisfied_by(x) && !cl.satisfied_by(y)) ++both;
            }
            if (pair_violation_prob(n, k, x, y) != Rational(both, clauses))
              return fail("n=" + std::to_string(n) + " k=" + std::to_string(k));
          }
        }
      }
    }
    return pass("n <= 4, k <= 3");
  });

  run_check(rep, s, "satisfied_plus_violated_is_M", [] {
    RandomStream st(31, 1);
    const auto phi = sample_formula(7, 3, 40, st);
    const auto sat = satisfied_table(phi);
    for (std::uint64_t r = 0; r < sat.size(); ++r)
      if (sat[r] + violated_count(phi, BooleanAssignment::from_rank(7, r)) != phi.size())
        return fail("rank " + std::to_string(r));
    return pass();
  });

  run_check(rep, s, "single_violation_rate", [] {
    RandomStream st(32, 1);
    const int k = 3;
    const auto x = BooleanAssignment::from_string("011010");
    const auto phi = sample_formula(6, k, 100000, st);
    const double rate = static_cast<double>(violated_count(phi, x)) / 100000.0;
    const double p = std::ldexp(1.0, -k);
    const double se = std::sqrt(p * (1.0 - p) / 100000.0);
    return std::abs(rate - p) <= 5.0 * se ? pass(fmt(rate)) : fail(fmt(rate));
  });

  run_check(rep, s, "append_clause_moves_z_by_at_most_one", [] {
    RandomStream st(33, 1);
    for (int trial = 0; trial < 50; ++trial) {
      auto phi = sample_formula(6, 3, 10, st);
      const auto before = z_statistic(phi, 2, 0.5, 1.0 / 6.0).value;
      phi.clauses.push_back(sample_clause(6, 3, st));
      const auto after = z_statistic(phi, 2, 0.5, 1.0 / 6.0).value;
      if (after - before < 0 || after - before > 1) return fail("trial " + std::to_string(trial));
    }
    return pass();
  });

  run_check(rep, s, "z_resample_lipschitz", [] {
    RandomStream st(34, 1);
    for (int trial = 0; trial < 50; ++trial) {
      const auto phi = sample_formula(6, 3, 12, st);
      const auto idx = st.uniform_below(12);
      if (!z_resample_lipschitz_check(phi, idx, sample_clause(6, 3, st), 2, 0.5, 1.0 / 6.0).holds)
        return fail("trial " + std::to_string(trial));
    }
    return pass();
  });

  run_check(rep, s, "first_violation_table", [] {
    RandomStream st(35, 1);
    const auto phi = sample_formula(8, 3, 25, st);
    const auto first = first_violation_table(phi);
    for (std::uint64_t r = 0; r < first.size(); ++r) {
      const auto x = BooleanAssignment::from_rank(8, r);
      std::int64_t expect = phi.size();
      for (std::int64_t i = 0; i < phi.size(); ++i) {
        if (!phi.clauses[static_cast<std::size_t>(i)].satisfied_by(x)) {
          expect = i;
          break;
        }
      }
      if (first[r] != expect) return fail("rank " + std::to_string(r));
    }
    return pass();
  });

  run_check(rep, s, "azuma_envelope_small", [] {
    const int n = 8, k = 3, m = 2;
    const auto M = clause_count(n, k, 0.25);
    std::vector<double> z;
    for (std::uint64_t i = 0; i < 2000; ++i) {
      RandomStream st(36, i);
      z.push_back(static_cast<double>(z_statistic(sample_formula(n, k, M, st), m, 0.5, 0.25).value));
    }
    double mean = 0.0;
    for (double v : z) mean += v;
    mean /= static_cast<double>(z.size());
    for (double mult : {1.0, 2.0}) {
      const double t0 = mult * std::sqrt(static_cast<double>(M));
      double hits = 0.0;
      for (double v : z)
        if (std::abs(v - mean) >= t0) hits += 1.0;
      const double freq = hits / static_cast<double>(z.size());
      const double bound = azuma_tail_bound(t0, static_cast<double>(M));
      const double pb = std::min(1.0, bound);
      const double se = std::sqrt(pb * (1.0 - pb) / static_cast<double>(z.size()));
      if (freq > bound + 3.0 * se) return fail("t0=" + fmt(t0) + " freq=" + fmt(freq));
    }
    return pass("2000 instances");
  });
}

// ---------------------------------------------------------------- bounds

void suite_bounds(SelftestReport& rep, const SelftestHooks& hooks) {
  const std::string_view s = "bounds";
  const auto dp = hooks.delta_p ? hooks.delta_p
                                : std::function<double(int, double, double, int)>(
                                      [](int m, double xi, double e, int p) { return delta_p(m, xi, e, p); });

  run_check(rep, s, "epsilon_star_strict", [] {
    for (int m = 1; m <= 6; ++m) {
      for (int i = 0; i < 20; ++i) {
        const double g = i / 20.0 / std::sqrt(static_cast<double>(m));
        const double e = epsilon_star(m, g);
        if (!(e > 0.0 && e < 0.5 && binary_entropy(e) < 1.0 - m * g * g))
          return fail("m=" + std::to_string(m) + " gamma=" + fmt(g));
      }
    }
    return pass();
  });

  run_check(rep, s, "delta_p_geometry", [&] {
    const int n = 12, m = 2;
    const double xi = 0.5, eta = 0.25;
    const double eps = epsilon_star(m, 0.5);
    const auto patterns = anchored_patterns(OverlapConstraint::spin_overlap(n, m, xi, eta));
    for (int p : {2, 4}) {
      const double D = dp(m, xi, eps, p);
      RandomStream st(41, static_cast<std::uint64_t>(p));
      int used = 0;
      while (used < 100) {
        std::vector<TuplePair> pair{{random_member(patterns, st), random_member(patterns, st)}};
        if (partition_by_closeness(pair, eps).separated.empty()) continue;
        const auto a = tuple_covariance(pair[0].first, pair[0].second, p);
        const Eigen::MatrixXd e = a - Eigen::MatrixXd::Identity(2 * m, 2 * m);
        if (e.norm() > D) return fail("p=" + std::to_string(p) + " ||E||_F=" + fmt(e.norm()) + " > " + fmt(D));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < 1.0 - D - 1e-12 || es.eigenvalues().maxCoeff() > 1.0 + D + 1e-12)
          return fail("p=" + std::to_string(p) + " eigenvalue outside [1 - D, 1 + D]");
        ++used;
      }
    }
    return pass("100 separated pairs per p");
  });

  run_check(rep, s, "delta_p_decreasing_in_p", [&] {
    for (int m = 1; m <= 4; ++m)
      for (double xi : {0.2, 0.5, 0.8})
        for (double e : {0.05, 0.25, 0.45})
          for (int p = 2; p < 40; ++p)
            if (!(dp(m, xi, e, p + 1) < dp(m, xi, e, p)))
              return fail("m=" + std::to_string(m) + " xi=" + fmt(xi) + " eps=" + fmt(e) + " p=" + std::to_string(p));
    return pass();
  });

  run_check(rep, s, "delta_p_closed_form", [&] {
    const double v = dp(2, 0.5, 0.25, 2);
    return std::abs(v - 1.0) <= 1e-12 ? pass() : fail(fmt(v));
  });

  run_check(rep, s, "margin_sweep_terminates", [] {
    for (int m = 1; m <= 4; ++m) {
      for (double frac : {0.2, 0.5, 0.8, 0.95}) {
        const double g = frac / std::sqrt(static_cast<double>(m));
        const double e = epsilon_star(m, g);
        for (double xi : {0.3, 0.5, 0.7})
          if (!min_p_for_positive_margin(m, g, xi, 0.5 * xi, e))
            return fail("m=" + std::to_string(m) + " gamma=" + fmt(g) + " xi=" + fmt(xi));
      }
    }
    return pass();
  });

  run_check(rep, s, "threshold_sign_changes", [] {
    for (int m = 1; m <= 6; ++m) {
      const double gp = 1.0 / std::sqrt(static_cast<double>(m));
      auto first = [&](double g) { return pspin_exponents(m, g, 3, 0.5, 0.25, 0.25).value("first_moment"); };
      if (std::abs(first(gp)) > 1e-12 || !(first(gp * (1 - 1e-6)) > 0) || !(first(gp * (1 + 1e-6)) < 0))
        return fail("pspin m=" + std::to_string(m));
      const double gk = 1.0 / m;
      auto lead = [&](double g) { return ksat_exponents(m, g, 5, 0.3, 0.1, 0.2).value("phi_leading"); };
      if (std::abs(lead(gk)) > 1e-12 || !(lead(gk * (1 - 1e-6)) > 0) || !(lead(gk * (1 + 1e-6)) < 0))
        return fail("ksat m=" + std::to_string(m));
    }
    return pass();
  });

  run_check(rep, s, "kappa_constant", [] {
    const double c1 = ksat_kappa_constant(1.0);
    const double expect = std::sqrt(std::log(3.0)) / std::numbers::ln2;
    if (std::abs(c1 - expect) > 1e-14) return fail(fmt(c1));
    if (std::abs(ksat_kappa_constant(0.25) - 2.0 * c1) > 1e-13) return fail("gamma scaling");
    for (int k = 1; k < 20; ++k)
      if (std::abs(ksat_kappa(0.3, k + 2) / ksat_kappa(0.3, k) - 0.5) > 1e-14) return fail("k=" + std::to_string(k));
    return pass();
  });
}

}  // namespace

bool SelftestReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string SelftestReport::json_lines() const {
  std::string out;
  for (const auto& c : checks) {
    nlohmann::json j{{"suite", c.suite}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail},
                     {"millis", c.millis}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

const std::vector<std::string>& selftest_suites() {
  static const std::vector<std::string> names{"lemmas", "pspin", "ksat", "bounds", "all"};
  return names;
}

SelftestReport selftest(std::string_view suite, const SelftestHooks& hooks) {
  SelftestReport rep;
  const bool all = suite == "all";
  if (!all && std::find(selftest_suites().begin(), selftest_suites().end(), suite) == selftest_suites().end())
    throw DomainError("selftest: unknown suite " + std::string(suite));
  if (all || suite == "lemmas") suite_lemmas(rep);
  if (all || suite == "pspin") suite_pspin(rep);
  if (all || suite == "ksat") suite_ksat(rep);
  if (all || suite == "bounds") suite_bounds(rep, hooks);
  return rep;
}

}  // namespace mogp
