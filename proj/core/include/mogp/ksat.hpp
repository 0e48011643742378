#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mogp/bits.hpp"
#include "mogp/random.hpp"
#include "mogp/tuples.hpp"

namespace mogp {

using Rational = boost::multiprecision::cpp_rational;

struct Literal {
  int var = 0;
  bool negated = false;

  // Truth value under x.
  bool eval(const BooleanAssignment& x) const { return x.value(var) != negated; }
  friend bool operator==(const Literal&, const Literal&) = default;
};

// Disjunction of k literals; repeats and complementary pairs are kept as is.
struct Clause {
  std::vector<Literal> literals;

  bool satisfied_by(const BooleanAssignment& x) const;
  friend bool operator==(const Clause&, const Clause&) = default;
};

struct Formula {
  int n = 0;
  int k = 0;
  std::vector<Clause> clauses;

  std::int64_t size() const noexcept { return static_cast<std::int64_t>(clauses.size()); }
  void validate() const;
};

// Clause count M = n gamma 2^k ln 2 rounded to nearest, ties to even.
struct DensityParams {
  double gamma = 0.0;
  int k = 0;
  int n = 0;
  std::int64_t M = 0;

  static DensityParams make(int n, int k, double gamma);
};

std::int64_t clause_count(int n, int k, double gamma);

// k literals, each from one uniform_below(2n) draw u: variable u / 2,
// negated iff u is odd.
Clause sample_clause(int n, int k, RandomStream& stream);
// M clauses in order. A formula with fewer clauses drawn from an identical
// stream is a prefix of one with more.
Formula sample_formula(const DensityParams& params, RandomStream& stream);
Formula sample_formula(int n, int k, std::int64_t M, RandomStream& stream);

// L(x): number of clauses x violates.
std::int64_t violated_count(const Formula& phi, const BooleanAssignment& x);

// Per-rank tables over {0,1}^n (n small). Entries index by assignment rank.
std::vector<std::int32_t> violated_table(const Formula& phi, const Budget& budget = {});
std::vector<std::int32_t> satisfied_table(const Formula& phi, const Budget& budget = {});
// Index of the first violated clause, or M when x satisfies everything.
std::vector<std::int32_t> first_violation_table(const Formula& phi, const Budget& budget = {});

// P[one uniform clause is violated by both a and b] = ((n - d_H) / 2n)^k.
Rational pair_violation_prob(int n, int k, const BooleanAssignment& a, const BooleanAssignment& b);

struct SatStatisticResult {
  std::int64_t value = 0;
  TupleWitness witness;
  std::uint64_t nodes = 0;
};

// Z = max over the distance family of min_j (M - L(x_j)). Throws EmptyFamily
// when the family has no members at this n.
SatStatisticResult z_statistic(const Formula& phi, int m, double beta, double eta, const Budget& budget = {});
SatStatisticResult z_statistic(std::span<const std::int32_t> satisfied, int n, const OffsetPatterns& patterns,
                               const Budget& budget = {});

// ceil((1 - kappa) M)
std::int64_t sat_threshold(std::int64_t M, double kappa);

// Z >= ceil((1 - kappa) M). The density is the formula's own clause count.
bool s_sat_nonempty(const Formula& phi, int m, double beta, double eta, double kappa, const Budget& budget = {});

struct ResampleReport {
  bool holds = false;
  std::int64_t before = 0;
  std::int64_t after = 0;
};

// |Z(phi) - Z(phi with clause i replaced)| <= 1. Throws DomainError on a bad index.
ResampleReport z_resample_lipschitz_check(const Formula& phi, std::size_t clause_index, const Clause& new_clause,
                                          int m, double beta, double eta, const Budget& budget = {});

}  // namespace mogp
