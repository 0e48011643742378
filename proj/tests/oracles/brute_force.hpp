#pragma once

// Slow, independent reference implementations. Nothing here calls the
// library's enumeration, table or interval code; configurations are plain
// vectors of +-1 or 0/1 built from integer ranks.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Float50 = boost::multiprecision::cpp_bin_float_50;
using Rational = boost::multiprecision::cpp_rational;

inline std::vector<int> spins_of(int n, std::uint64_t rank) {
  std::vector<int> s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = ((rank >> i) & 1u) ? 1 : -1;
  return s;
}

inline std::vector<int> bits_of(int n, std::uint64_t rank) {
  std::vector<int> s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = static_cast<int>((rank >> i) & 1u);
  return s;
}

inline int dot(const std::vector<int>& a, const std::vector<int>& b) {
  int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline int distance(const std::vector<int>& a, const std::vector<int>& b) {
  int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] != b[i];
  return s;
}

// Sum over every multi-index of J * prod sigma, digit by digit.
inline double hamiltonian(const std::vector<double>& J, int n, int p, const std::vector<int>& s) {
  double total = 0.0;
  std::vector<int> idx(static_cast<std::size_t>(p), 0);
  for (std::size_t flat = 0; flat < J.size(); ++flat) {
    std::size_t rem = flat;
    int prod = 1;
    for (int j = p - 1; j >= 0; --j) {
      prod *= s[rem % static_cast<std::size_t>(n)];
      rem /= static_cast<std::size_t>(n);
    }
    total += J[flat] * prod;
  }
  return total * std::pow(static_cast<double>(n), -(p + 1) / 2.0);
}

// Real-interval membership lo <= x / n <= hi, with a tolerance far below 1/n.
inline bool in_band(int x, int n, double lo, double hi) {
  const double v = static_cast<double>(x) / n;
  return v >= lo - 1e-12 && v <= hi + 1e-12;
}

// Visits every ordered m-tuple of ranks in [0, 2^n).
inline void for_each_tuple(int n, int m, const std::function<void(const std::vector<std::uint64_t>&)>& f) {
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<std::uint64_t> t(static_cast<std::size_t>(m), 0);
  while (true) {
    f(t);
    int j = m - 1;
    while (j >= 0 && ++t[static_cast<std::size_t>(j)] == count) t[static_cast<std::size_t>(j--)] = 0;
    if (j < 0) return;
  }
}

inline bool spin_tuple_ok(int n, const std::vector<std::uint64_t>& t, double xi, double eta) {
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (!in_band(dot(spins_of(n, t[i]), spins_of(n, t[j])), n, xi - eta, xi)) return false;
  return true;
}

inline bool assignment_tuple_ok(int n, const std::vector<std::uint64_t>& t, double beta, double eta) {
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (!in_band(distance(bits_of(n, t[i]), bits_of(n, t[j])), n, beta - eta, beta)) return false;
  return true;
}

// max over admissible ordered tuples of min energy; NaN when none.
inline double brute_t(const std::vector<double>& J, int n, int p, int m, double xi, double eta) {
  std::vector<double> energy(std::size_t{1} << n);
  for (std::uint64_t r = 0; r < energy.size(); ++r) energy[r] = hamiltonian(J, n, p, spins_of(n, r));
  double best = std::numeric_limits<double>::quiet_NaN();
  for_each_tuple(n, m, [&](const std::vector<std::uint64_t>& t) {
    if (!spin_tuple_ok(n, t, xi, eta)) return;
    double v = INFINITY;
    for (auto r : t) v = std::min(v, energy[r]);
    if (std::isnan(best) || v > best) best = v;
  });
  return best;
}

struct Lit {
  int var;
  bool neg;
};
using Cnf = std::vector<std::vector<Lit>>;

inline bool clause_true(const std::vector<Lit>& c, const std::vector<int>& x) {
  for (const auto& l : c)
    if ((x[static_cast<std::size_t>(l.var)] == 1) != l.neg) return true;
  return false;
}

inline int satisfied(const Cnf& f, const std::vector<int>& x) {
  int s = 0;
  for (const auto& c : f) s += clause_true(c, x);
  return s;
}

// max over admissible ordered tuples of min satisfied count; -1 when none.
inline long brute_z(const Cnf& f, int n, int m, double beta, double eta) {
  std::vector<int> sat(std::size_t{1} << n);
  for (std::uint64_t r = 0; r < sat.size(); ++r) sat[r] = satisfied(f, bits_of(n, r));
  long best = -1;
  for_each_tuple(n, m, [&](const std::vector<std::uint64_t>& t) {
    if (!assignment_tuple_ok(n, t, beta, eta)) return;
    long v = std::numeric_limits<long>::max();
    for (auto r : t) v = std::min<long>(v, sat[r]);
    best = std::max(best, v);
  });
  return best;
}

// Fraction of all (2n)^k literal sequences violated by both assignments.
inline Rational clause_space_pair_violation(int n, int k, const std::vector<int>& a, const std::vector<int>& b) {
  std::uint64_t total = 1;
  for (int j = 0; j < k; ++j) total *= static_cast<std::uint64_t>(2 * n);
  std::uint64_t both = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<Lit> c;
    std::uint64_t rest = code;
    for (int j = 0; j < k; ++j) {
      const auto u = rest % static_cast<std::uint64_t>(2 * n);
      rest /= static_cast<std::uint64_t>(2 * n);
      c.push_back({static_cast<int>(u / 2), u % 2 == 1});
    }
    if (!clause_true(c, a) && !clause_true(c, b)) ++both;
  }
  return Rational(both, total);
}

inline Float50 entropy50(const Float50& x) {
  if (x == 0 || x == 1) return 0;
  return -(x * log(x) + (1 - x) * log(1 - x)) / log(Float50(2));
}

// Upper tail of N(0,1) by composite Simpson on [x, x + 40].
inline double normal_tail_quadrature(double x) {
  const int steps = 200000;
  const double h = 40.0 / steps;
  auto phi = [](double u) { return std::exp(-0.5 * u * u) / std::sqrt(2.0 * M_PI); };
  double s = phi(x) + phi(x + 40.0);
  for (int i = 1; i < steps; ++i) s += (i % 2 ? 4.0 : 2.0) * phi(x + i * h);
  return s * h / 3.0;
}

}  // namespace oracle
