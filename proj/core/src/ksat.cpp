#include "mogp/ksat.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "mogp/error.hpp"
#include "mogp/numeric.hpp"

namespace mogp {

namespace {

struct ClauseMasks {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
  bool tautology() const noexcept { return (pos & neg) != 0; }
};

ClauseMasks masks_of(const Clause& c) {
  ClauseMasks m;
  for (const auto& l : c.literals) (l.negated ? m.neg : m.pos) |= std::uint64_t{1} << l.var;
  return m;
}

std::uint64_t table_size_checked(const Formula& phi, const Budget& budget) {
  phi.validate();
  if (phi.n > 62) throw BudgetExceeded("ksat table: dimension too large");
  const std::uint64_t count = std::uint64_t{1} << phi.n;
  if (count > budget.memory_bytes / sizeof(std::int32_t))
    throw BudgetExceeded("ksat table: 2^n entries exceed memory budget");
  if (phi.size() > std::numeric_limits<std::int32_t>::max())
    throw BudgetExceeded("ksat table: too many clauses");
  return count;
}

// Calls f(rank) for every assignment violating c: the negated variables set,
// the positive ones clear, everything else free.
template <class F>
void for_each_violating(const Clause& c, std::uint64_t full, F&& f) {
  const auto m = masks_of(c);
  if (m.tautology()) return;
  const std::uint64_t free = full & ~(m.pos | m.neg);
  std::uint64_t s = 0;
  do {
    f(m.neg | s);
    s = (s - free) & free;
  } while (s != 0);
}

}  // namespace

bool Clause::satisfied_by(const BooleanAssignment& x) const {
  for (const auto& l : literals)
    if (l.eval(x)) return true;
  return false;
}

void Formula::validate() const {
  if (n < 1) throw DomainError("Formula: n must be positive");
  for (const auto& c : clauses) {
    if (static_cast<int>(c.literals.size()) != k) throw DimensionMismatch("Formula: clause width differs from k");
    for (const auto& l : c.literals)
      if (l.var < 0 || l.var >= n) throw DomainError("Formula: literal variable out of range");
  }
}

std::int64_t clause_count(int n, int k, double gamma) {
  if (n < 1 || k < 1) throw DomainError("clause_count: n and k must be positive");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw DomainError("clause_count: gamma must be nonnegative");
  return static_cast<std::int64_t>(std::nearbyint(n * gamma * std::ldexp(1.0, k) * std::numbers::ln2));
}

DensityParams DensityParams::make(int n, int k, double gamma) { return {gamma, k, n, clause_count(n, k, gamma)}; }

Clause sample_clause(int n, int k, RandomStream& stream) {
  Clause c;
  c.literals.reserve(static_cast<std::size_t>(k));
  const auto range = 2 * static_cast<std::uint64_t>(n);
  for (int j = 0; j < k; ++j) {
    const auto u = stream.uniform_below(range);
    c.literals.push_back({static_cast<int>(u >> 1), (u & 1u) != 0});
  }
  return c;
}

Formula sample_formula(int n, int k, std::int64_t M, RandomStream& stream) {
  if (n < 1 || k < 1) throw DomainError("sample_formula: n and k must be positive");
  if (M < 0) throw DomainError("sample_formula: negative clause count");
  Formula phi{n, k, {}};
  phi.clauses.reserve(static_cast<std::size_t>(M));
  for (std::int64_t i = 0; i < M; ++i) phi.clauses.push_back(sample_clause(n, k, stream));
  return phi;
}

Formula sample_formula(const DensityParams& params, RandomStream& stream) {
  return sample_formula(params.n, params.k, params.M, stream);
}

std::int64_t violated_count(const Formula& phi, const BooleanAssignment& x) {
  if (x.size() != phi.n) throw DimensionMismatch("violated_count: assignment length differs from n");
  std::int64_t count = 0;
  for (const auto& c : phi.clauses)
    if (!c.satisfied_by(x)) ++count;
  return count;
}

std::vector<std::int32_t> violated_table(const Formula& phi, const Budget& budget) {
  const std::uint64_t count = table_size_checked(phi, budget);
  std::vector<std::int32_t> t(count, 0);
  const std::uint64_t full = full_mask(phi.n);
  for (const auto& c : phi.clauses) for_each_violating(c, full, [&](std::uint64_t r) { ++t[r]; });
  return t;
}

std::vector<std::int32_t> satisfied_table(const Formula& phi, const Budget& budget) {
  auto t = violated_table(phi, budget);
  const auto M = static_cast<std::int32_t>(phi.size());
  for (auto& v : t) v = M - v;
  return t;
}

std::vector<std::int32_t> first_violation_table(const Formula& phi, const Budget& budget) {
  const std::uint64_t count = table_size_checked(phi, budget);
  const auto M = static_cast<std::int32_t>(phi.size());
  std::vector<std::int32_t> t(count, M);
  const std::uint64_t full = full_mask(phi.n);
  for (std::int32_t i = 0; i < M; ++i) {
    for_each_violating(phi.clauses[static_cast<std::size_t>(i)], full, [&](std::uint64_t r) {
      if (t[r] == M) t[r] = i;
    });
  }
  return t;
}

Rational pair_violation_prob(int n, int k, const BooleanAssignment& a, const BooleanAssignment& b) {
  if (n < 1 || k < 1) throw DomainError("pair_violation_prob: n and k must be positive");
  if (a.size() != n || b.size() != n) throw DimensionMismatch("pair_violation_prob: assignment length differs from n");
  // A literal is false under both assignments iff its variable agrees and
  // its sign makes it false: (n - d) / (2n) per literal.
  const Rational per_literal(n - hamming(a, b), 2 * n);
  Rational out = 1;
  for (int j = 0; j < k; ++j) out *= per_literal;
  return out;
}

SatStatisticResult z_statistic(std::span<const std::int32_t> satisfied, int n, const OffsetPatterns& patterns,
                               const Budget& budget) {
  if (patterns.n != n) throw DimensionMismatch("z_statistic: table and family dimensions differ");
  const auto r = maximin<std::int32_t>(satisfied, patterns, budget);
  return {r.value, make_witness(n, ConstraintKind::hamming_distance, r.witness), r.nodes};
}

SatStatisticResult z_statistic(const Formula& phi, int m, double beta, double eta, const Budget& budget) {
  const auto c = OverlapConstraint::hamming_distance(phi.n, m, beta, eta);
  const auto patterns = anchored_patterns(c, budget);
  const auto table = satisfied_table(phi, budget);
  return z_statistic(table, phi.n, patterns, budget);
}

std::int64_t sat_threshold(std::int64_t M, double kappa) {
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw DomainError("sat_threshold: kappa must lie in [0, 1]");
  return snapped_ceil((1.0 - kappa) * static_cast<double>(M));
}

bool s_sat_nonempty(const Formula& phi, int m, double beta, double eta, double kappa, const Budget& budget) {
  const auto threshold = sat_threshold(phi.size(), kappa);
  return z_statistic(phi, m, beta, eta, budget).value >= threshold;
}

ResampleReport z_resample_lipschitz_check(const Formula& phi, std::size_t clause_index, const Clause& new_clause,
                                          int m, double beta, double eta, const Budget& budget) {
  if (clause_index >= phi.clauses.size()) throw DomainError("z_resample_lipschitz_check: clause index out of range");
  Formula other = phi;
  other.clauses[clause_index] = new_clause;
  other.validate();
  const auto c = OverlapConstraint::hamming_distance(phi.n, m, beta, eta);
  const auto patterns = anchored_patterns(c, budget);
  ResampleReport r;
  r.before = z_statistic(satisfied_table(phi, budget), phi.n, patterns, budget).value;
  r.after = z_statistic(satisfied_table(other, budget), phi.n, patterns, budget).value;
  r.holds = std::abs(r.before - r.after) <= 1;
  return r;
}

}  // namespace mogp
