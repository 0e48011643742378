#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mogp/pspin.hpp"
#include "mogp/random.hpp"
#include "mogp/tuples.hpp"

namespace mogp {

// h_b(x) = -x log2 x - (1 - x) log2(1 - x), h_b(0) = h_b(1) = 0.
double binary_entropy(double x);

struct CountingReport {
  bool holds = false;
  BigInt sum;               // sum_{i <= alpha n} C(n, i), exact
  double log2_sum = 0.0;
  double log2_bound = 0.0;  // n h_b(alpha)
};

// sum_{i <= alpha n} C(n, i) <= 2^{n h_b(alpha)}, compared in 50-digit
// floating point against the exact sum. alpha in [0, 1/2].
CountingReport counting_bound_check(int n, double alpha);

struct InequalityReport {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
};

// P[Z > theta E Z] >= (1 - theta)^2 (E Z)^2 / E[Z^2] on the empirical
// distribution of the samples (rhs taken as 0 when all samples vanish).
// Relative slack 1e-12 absorbs rounding in the equality cases.
InequalityReport paley_zygmund_check(std::span<const double> samples, double theta);

// P[N(0,1) >= x], via erfc.
double gaussian_tail(double x);
// exp(-x^2/2) / sqrt(2 pi) * (1/x - 1/x^3); requires x > 1.
double gaussian_tail_lower(double x);

using CovarianceMatrix = Eigen::MatrixXd;

struct SavageBounds {
  double lower = 0.0;
  double upper = 0.0;
  double density = 0.0;  // phi_X(t)
};

// Mills-ratio sandwich for P[X >= t], X ~ N(0, Sigma), with u = Sigma^-1 t > 0:
//   upper = phi_X(t) / prod_i u_i,
//   lower = upper * (1 - <w, Sigma^-1 w>), w = 1 / u (entrywise).
// Throws NotPositiveDefinite, or PreconditionViolation when some u_i <= 0.
SavageBounds savage_bounds(const CovarianceMatrix& sigma, const Eigen::VectorXd& t);

// Fraction of X = L z >= t (L the Cholesky factor) over `samples` draws, with
// binomial standard error.
Estimate mvn_tail_mc(const CovarianceMatrix& sigma, const Eigen::VectorXd& t, std::uint64_t samples,
                     RandomStream& stream);

struct SlepianReport {
  bool holds = false;
  Estimate x;
  Estimate y;
  double pooled_se = 0.0;
};

// Requires equal diagonals and sigma_x <= sigma_y off the diagonal. Holds
// when the X estimate is at most the Y estimate plus 5 pooled standard errors.
SlepianReport slepian_check(const CovarianceMatrix& sigma_x, const CovarianceMatrix& sigma_y,
                            const Eigen::VectorXd& t, std::uint64_t samples, RandomStream& stream);

// sum_i (lambda_i(A + E) - lambda_i(A))^2 <= ||E||_F^2 (1 + 1e-9), sorted
// eigenvalues. Throws DomainError on asymmetric input.
InequalityReport wielandt_hoffman_check(const Eigen::MatrixXd& a, const Eigen::MatrixXd& e);

// A(X, Y) for two spin tuples: 2m x 2m with entries (<s, s'> / n)^p, blocks
// [B(X) C; C^T B(Y)] where C_ij = (<x_i, y_j> / n)^p.
CovarianceMatrix tuple_covariance(const TupleWitness& x, const TupleWitness& y, int p);

// The eps in (0, 1/2) with h_b(eps) = (1 - m gamma^2)(1 - 1e-3), bisected to
// 1e-12 and rounded down, so h_b(eps) < 1 - m gamma^2 strictly.
// Throws Infeasible when m gamma^2 >= 1.
double epsilon_star(int m, double gamma);
inline constexpr double kEpsilonStarMargin = 1e-3;

// m sqrt(2 xi^{2p} + 2 (1 - 2 eps)^{2p})
double delta_p(int m, double xi, double epsilon_star, int p);

// Named per-n exponent coefficients plus flags. Terms the model leaves
// unquantified (o(n), O(log n), O_k) are listed in `residuals` as
// "unspecified" instead of being given a value.
struct ExponentReport {
  std::string model;
  std::vector<std::pair<std::string, double>> parameters;
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::pair<std::string, bool>> flags;
  std::vector<std::pair<std::string, std::string>> residuals;
  std::vector<std::string> notes;

  double value(std::string_view name) const;
  bool flag(std::string_view name) const;
};

// first_moment = 1 - m g^2
// intra_prob = m g^2 / (1 + 2 m p xi^p)
// sigma_ij_margin = 1 - h_b(eps) - m g^2 - 2 m^2 g^2 p xi^p / (1 + 2 m p xi^p)
// second_moment_gap = 2 m g^2 D / (1 + D), D = delta_p
// Flags: margin_positive, delta_p_below_one, savage_applicable
// (D sqrt(2m) / (1 - D) < 1, which keeps Sigma^-1 t positive).
ExponentReport pspin_exponents(int m, double gamma, int p, double xi, double eta, double epsilon_star);

// Smallest p >= 2 with sigma_ij_margin > 0, scanning up to p_max.
std::optional<int> min_p_for_positive_margin(int m, double gamma, double xi, double eta, double epsilon_star,
                                             int p_max = 1'000'000);

// phi = 1 + (m-1) h_b(beta) - m g + g C(m,2) (1 - beta + eta)^k
// phi_leading = 1 - m g
// delta = 1 - h_b(eps) - m g
// a_exponent = -delta + 2 m (m-1) (1 - (beta - eta)/2)^k g
// b_residual_pairs = ln 2 g m (m-1) (1 - beta + eta)^k
// b_residual_diagonal = ln 2 g m^2 (1 - eps)^k
// Requires 0 < eta < beta <= 1/2, gamma > 0, eps in (0, 1).
ExponentReport ksat_exponents(int m, double gamma, int k, double beta, double eta, double epsilon);

// C = gamma^-1/2 sqrt(ln 3) / ln 2
double ksat_kappa_constant(double gamma);
// C 2^{-k/2}
double ksat_kappa(double gamma, int k);

// 2 exp(-t0^2 / M)
double azuma_tail_bound(double t0, double M);

// Deviation that lets the concentration bound absorb the second-moment
// estimate: (t*)^2 / M >= 2 a n m^2 T^k with M = n a, a = g 2^k ln 2 and
// T = max((1 - beta + eta)/2, (1 - eps)/2).
struct RepairThreshold {
  double alpha = 0.0;       // g 2^k ln 2
  double M = 0.0;           // n alpha
  double T = 0.0;
  double required = 0.0;    // 2 alpha n m^2 T^k
  double t_star = 0.0;      // smallest t* meeting the inequality
  double t_star_t_power = 0.0;   // n alpha sqrt(3) m T^{k/2}
  double t_star_m_power = 0.0;   // n alpha sqrt(3) m M^{k/2}, as printed
  bool t_power_satisfies = false;
  bool m_power_satisfies = false;
};

RepairThreshold repair_threshold(int n, int k, int m, double gamma, double beta, double eta, double epsilon);

}  // namespace mogp
