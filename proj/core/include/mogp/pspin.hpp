#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "mogp/bits.hpp"
#include "mogp/random.hpp"
#include "mogp/tuples.hpp"

namespace mogp {

// Order-p array of n^p reals, row-major in the multi-index (i_1, ..., i_p).
class DisorderTensor {
 public:
  DisorderTensor(int n, int p, std::vector<double> entries, std::uint64_t seed = 0);

  int n() const noexcept { return n_; }
  int p() const noexcept { return p_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::vector<double>& entries() const noexcept { return entries_; }
  std::vector<double>& entries() noexcept { return entries_; }

  // n^-(p+1)/2
  double scale() const noexcept;
  double frobenius_distance(const DisorderTensor& other) const;

 private:
  int n_;
  int p_;
  std::uint64_t seed_;
  std::vector<double> entries_;
};

// n^p, or throws BudgetExceeded when n^p doubles would not fit the budget.
std::uint64_t tensor_size(int n, int p, const Budget& budget = {});

// n^p standard normals drawn in row-major order. The stream's seed is kept
// for serialization.
DisorderTensor sample_disorder(int n, int p, RandomStream& stream, const Budget& budget = {});

// n^-(p+1)/2 <J, s^{(x) p}>, contracting the last index first.
double hamiltonian(const DisorderTensor& J, const SpinConfiguration& s);

struct EnergyTable {
  int n = 0;
  int p = 0;
  std::vector<double> values;  // values[rank(s)] = H(s)
  bool gray_code = false;      // false when built by direct contraction
};

// Full table over {-1,+1}^n. Uses a Gray-code walk over the multilinear
// expansion of H (flip deltas from the monomials containing the flipped
// index, exact resync every 1024 steps). Falls back to direct contraction
// per configuration when the expansion does not fit the memory budget.
EnergyTable energy_table(const DisorderTensor& J, const Budget& budget = {});
EnergyTable energy_table_direct(const DisorderTensor& J, const Budget& budget = {});

struct Estimate {
  double value = 0.0;
  double standard_error = 0.0;
};

// Monte Carlo estimate of E[Z_a Z_b] (= covariance, the means being zero)
// with Z = sqrt(n) H over fresh disorders. trials >= 1000.
Estimate empirical_covariance(const SpinConfiguration& a, const SpinConfiguration& b, int p,
                              std::uint64_t trials, RandomStream& stream);

struct GroundStateTarget {
  double gamma = 0.0;
  double threshold = 0.0;

  static GroundStateTarget from_gamma(double gamma) {
    return {gamma, gamma * std::sqrt(2.0 * std::numbers::ln2)};
  }
};

struct StatisticResult {
  double value = 0.0;
  TupleWitness witness;
  std::uint64_t nodes = 0;
};

// T = max over the overlap family of min_j H(s_j). Throws EmptyFamily when
// the family has no members at this n.
StatisticResult t_statistic(const EnergyTable& table, const OffsetPatterns& patterns,
                            const Budget& budget = {});
StatisticResult t_statistic(const DisorderTensor& J, int m, double xi, double eta,
                            const Budget& budget = {});

// T >= gamma sqrt(2 ln 2).
bool s_nonempty(const DisorderTensor& J, double gamma, int m, double xi, double eta,
                const Budget& budget = {});

struct LipschitzReport {
  bool holds = false;
  double difference = 0.0;  // |T(J) - T(J')|
  double bound = 0.0;       // n^-1/2 ||J - J'||_F
};

// |T(J) - T(J')| <= n^-1/2 ||J - J'||_F + 2^-30.
LipschitzReport t_lipschitz_check(const DisorderTensor& J, const DisorderTensor& J_prime, int m,
                                  double xi, double eta, const Budget& budget = {});

}  // namespace mogp
