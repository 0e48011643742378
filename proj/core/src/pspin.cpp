#include "mogp/pspin.hpp"

#include <bit>
#include <cmath>
#include <unordered_map>

#include "mogp/error.hpp"

namespace mogp {

namespace {

constexpr std::uint64_t kResyncInterval = 1024;

double spin_of(std::uint64_t rank, int i) { return (rank >> i) & 1u ? 1.0 : -1.0; }

// Contracts J against the spins encoded by `spin(i)`, last index first.
template <class Spin>
double contract(const DisorderTensor& J, Spin&& spin, std::vector<double>& scratch) {
  const auto n = static_cast<std::size_t>(J.n());
  const auto& e = J.entries();
  std::size_t rows = e.size() / n;
  scratch.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    double acc = 0.0;
    const double* row = e.data() + r * n;
    for (std::size_t i = 0; i < n; ++i) acc += row[i] * spin(static_cast<int>(i));
    scratch[r] = acc;
  }
  while (rows > 1) {
    rows /= n;
    for (std::size_t r = 0; r < rows; ++r) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += scratch[r * n + i] * spin(static_cast<int>(i));
      scratch[r] = acc;
    }
  }
  return scratch[0] * J.scale();
}

std::uint64_t table_bytes_checked(int n, const Budget& budget) {
  if (n > 62) throw BudgetExceeded("energy_table: dimension too large");
  const std::uint64_t count = std::uint64_t{1} << n;
  if (count > budget.memory_bytes / sizeof(double))
    throw BudgetExceeded("energy_table: 2^n values exceed memory budget");
  return count;
}

struct Monomial {
  std::uint64_t rest;  // the monomial's index set without the flipped index
  double coefficient;
};

}  // namespace

DisorderTensor::DisorderTensor(int n, int p, std::vector<double> entries, std::uint64_t seed)
    : n_(n), p_(p), seed_(seed), entries_(std::move(entries)) {
  if (n < 1) throw DomainError("DisorderTensor: n must be positive");
  if (p < 2) throw DomainError("DisorderTensor: p must be at least 2");
  std::uint64_t size = 1;
  for (int j = 0; j < p; ++j) {
    if (size > entries_.size()) break;
    size *= static_cast<std::uint64_t>(n);
  }
  if (size != entries_.size()) throw DimensionMismatch("DisorderTensor: entry count is not n^p");
}

double DisorderTensor::scale() const noexcept { return std::pow(static_cast<double>(n_), -0.5 * (p_ + 1)); }

double DisorderTensor::frobenius_distance(const DisorderTensor& other) const {
  if (other.n_ != n_ || other.p_ != p_) throw DimensionMismatch("frobenius_distance: shapes differ");
  double acc = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const double d = entries_[i] - other.entries_[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

std::uint64_t tensor_size(int n, int p, const Budget& budget) {
  if (n < 1) throw DomainError("tensor_size: n must be positive");
  if (p < 2) throw DomainError("tensor_size: p must be at least 2");
  const std::uint64_t cap = budget.memory_bytes / sizeof(double);
  std::uint64_t size = 1;
  for (int j = 0; j < p; ++j) {
    if (size > cap / static_cast<std::uint64_t>(n)) throw BudgetExceeded("sample_disorder: n^p exceeds memory budget");
    size *= static_cast<std::uint64_t>(n);
  }
  return size;
}

DisorderTensor sample_disorder(int n, int p, RandomStream& stream, const Budget& budget) {
  const std::uint64_t size = tensor_size(n, p, budget);
  std::vector<double> entries(size);
  for (auto& x : entries) x = stream.standard_normal();
  return DisorderTensor(n, p, std::move(entries), stream.seed());
}

double hamiltonian(const DisorderTensor& J, const SpinConfiguration& s) {
  if (s.size() != J.n()) throw DimensionMismatch("hamiltonian: configuration length differs from n");
  std::vector<double> scratch;
  return contract(J, [&](int i) { return static_cast<double>(s.spin(i)); }, scratch);
}

EnergyTable energy_table_direct(const DisorderTensor& J, const Budget& budget) {
  const std::uint64_t count = table_bytes_checked(J.n(), budget);
  EnergyTable t{J.n(), J.p(), std::vector<double>(count), false};
  std::vector<double> scratch;
  for (std::uint64_t r = 0; r < count; ++r)
    t.values[r] = contract(J, [r](int i) { return spin_of(r, i); }, scratch);
  return t;
}

EnergyTable energy_table(const DisorderTensor& J, const Budget& budget) {
  const int n = J.n();
  const int p = J.p();
  const std::uint64_t count = table_bytes_checked(n, budget);
  const std::size_t table_bytes = count * sizeof(double);

  // Multilinear expansion: since s_i^2 = 1, each multi-index contributes to
  // the monomial over the indices of odd multiplicity.
  std::unordered_map<std::uint64_t, double> coeff;
  const double scale = J.scale();
  const auto& e = J.entries();
  std::vector<int> digits(static_cast<std::size_t>(p), 0);
  for (std::size_t idx = 0; idx < e.size(); ++idx) {
    std::uint64_t mask = 0;
    for (int d : digits) mask ^= std::uint64_t{1} << d;
    coeff[mask] += e[idx] * scale;
    for (int j = p - 1; j >= 0; --j) {
      if (++digits[static_cast<std::size_t>(j)] < n) break;
      digits[static_cast<std::size_t>(j)] = 0;
    }
  }

  std::size_t incidences = 0;
  for (const auto& [mask, c] : coeff) incidences += static_cast<std::size_t>(std::popcount(mask));
  const std::size_t expansion_bytes = (coeff.size() + incidences) * sizeof(Monomial);
  if (table_bytes + expansion_bytes > budget.memory_bytes) return energy_table_direct(J, budget);

  std::vector<Monomial> all;
  all.reserve(coeff.size());
  std::vector<std::vector<Monomial>> by_index(static_cast<std::size_t>(n));
  for (const auto& [mask, c] : coeff) {
    all.push_back({mask, c});
    for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
      const int i = std::countr_zero(rest);
      by_index[static_cast<std::size_t>(i)].push_back({mask & ~(std::uint64_t{1} << i), c});
    }
  }
  const std::uint64_t full = full_mask(n);
  // prod_{i in S} s_i with bit 1 meaning +1: the sign counts the -1 spins in S.
  auto sign = [full](std::uint64_t set, std::uint64_t rank) {
    return std::popcount(set & ~rank & full) & 1 ? -1.0 : 1.0;
  };
  auto evaluate = [&](std::uint64_t rank) {
    double h = 0.0;
    for (const auto& mono : all) h += mono.coefficient * sign(mono.rest, rank);
    return h;
  };

  EnergyTable t{n, p, std::vector<double>(count), true};
  std::uint64_t rank = 0;
  double h = evaluate(rank);
  for (std::uint64_t g = 0; g < count; ++g) {
    t.values[rank] = h;
    if (g + 1 == count) break;
    const int i = std::countr_zero(g + 1);
    double field = 0.0;
    for (const auto& mono : by_index[static_cast<std::size_t>(i)]) field += mono.coefficient * sign(mono.rest, rank);
    const double s_i = spin_of(rank, i);
    rank ^= std::uint64_t{1} << i;
    if ((g + 1) % kResyncInterval == 0) {
      h = evaluate(rank);
    } else {
      h -= 2.0 * s_i * field;
    }
  }
  return t;
}

Estimate empirical_covariance(const SpinConfiguration& a, const SpinConfiguration& b, int p,
                              std::uint64_t trials, RandomStream& stream) {
  if (a.size() != b.size()) throw DimensionMismatch("empirical_covariance: configuration lengths differ");
  if (trials < 1000) throw PreconditionViolation("empirical_covariance: needs at least 1000 trials");
  const int n = a.size();
  const std::uint64_t size = tensor_size(n, p);

  // Sign of s^{(x) p} at every multi-index, for both configurations.
  std::vector<double> sa(size), sb(size);
  std::vector<int> digits(static_cast<std::size_t>(p), 0);
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    int pa = 1, pb = 1;
    for (int d : digits) {
      pa *= a.spin(d);
      pb *= b.spin(d);
    }
    sa[idx] = pa;
    sb[idx] = pb;
    for (int j = p - 1; j >= 0; --j) {
      if (++digits[static_cast<std::size_t>(j)] < n) break;
      digits[static_cast<std::size_t>(j)] = 0;
    }
  }
  // sqrt(n) * n^-(p+1)/2
  const double z_scale = std::pow(static_cast<double>(n), -0.5 * p);
  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    double za = 0.0, zb = 0.0;
    for (std::uint64_t idx = 0; idx < size; ++idx) {
      const double g = stream.standard_normal();
      za += g * sa[idx];
      zb += g * sb[idx];
    }
    const double prod = za * zb * z_scale * z_scale;
    sum += prod;
    sum_sq += prod * prod;
  }
  const double tn = static_cast<double>(trials);
  const double mean = sum / tn;
  const double var = std::max(0.0, (sum_sq - tn * mean * mean) / (tn - 1.0));
  return {mean, std::sqrt(var / tn)};
}

StatisticResult t_statistic(const EnergyTable& table, const OffsetPatterns& patterns, const Budget& budget) {
  if (table.n != patterns.n) throw DimensionMismatch("t_statistic: table and family dimensions differ");
  const auto r = maximin<double>(std::span<const double>(table.values), patterns, budget);
  return {r.value, make_witness(table.n, ConstraintKind::spin_overlap, r.witness), r.nodes};
}

StatisticResult t_statistic(const DisorderTensor& J, int m, double xi, double eta, const Budget& budget) {
  const auto c = OverlapConstraint::spin_overlap(J.n(), m, xi, eta);
  const auto patterns = anchored_patterns(c, budget);
  return t_statistic(energy_table(J, budget), patterns, budget);
}

bool s_nonempty(const DisorderTensor& J, double gamma, int m, double xi, double eta, const Budget& budget) {
  return t_statistic(J, m, xi, eta, budget).value >= GroundStateTarget::from_gamma(gamma).threshold;
}

LipschitzReport t_lipschitz_check(const DisorderTensor& J, const DisorderTensor& J_prime, int m, double xi,
                                  double eta, const Budget& budget) {
  if (J.n() != J_prime.n() || J.p() != J_prime.p())
    throw DimensionMismatch("t_lipschitz_check: tensors differ in shape");
  const auto c = OverlapConstraint::spin_overlap(J.n(), m, xi, eta);
  const auto patterns = anchored_patterns(c, budget);
  const double t1 = t_statistic(energy_table(J, budget), patterns, budget).value;
  const double t2 = t_statistic(energy_table(J_prime, budget), patterns, budget).value;
  LipschitzReport r;
  r.difference = std::abs(t1 - t2);
  r.bound = J.frobenius_distance(J_prime) / std::sqrt(static_cast<double>(J.n()));
  r.holds = r.difference <= r.bound + 0x1.0p-30;
  return r;
}

}  // namespace mogp
