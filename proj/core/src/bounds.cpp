#include "mogp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "mogp/error.hpp"
#include "mogp/numeric.hpp"

namespace mogp {

namespace {

using Float50 = boost::multiprecision::cpp_bin_float_50;

void require_symmetric(const Eigen::MatrixXd& a, const char* what) {
  if (a.rows() != a.cols()) throw DimensionMismatch(std::string(what) + ": matrix is not square");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw DomainError(std::string(what) + ": matrix is not symmetric");
}

Eigen::LLT<Eigen::MatrixXd> cholesky(const CovarianceMatrix& sigma, const char* what) {
  require_symmetric(sigma, what);
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success) throw NotPositiveDefinite(std::string(what) + ": covariance is not positive definite");
  return llt;
}

double overlap_power(const BitString& a, const BitString& b, int p) {
  const int n = a.size();
  return std::pow(static_cast<double>(n - 2 * hamming(a, b)) / n, p);
}

}  // namespace

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("binary_entropy: argument outside [0, 1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

CountingReport counting_bound_check(int n, double alpha) {
  if (n < 0) throw DomainError("counting_bound_check: negative n");
  if (!(alpha >= 0.0 && alpha <= 0.5)) throw DomainError("counting_bound_check: alpha must lie in [0, 1/2]");
  const auto top = std::min<std::int64_t>(snapped_floor(alpha * n), n);
  CountingReport r;
  BigInt binom = 1;
  for (std::int64_t i = 0; i <= top; ++i) {
    r.sum += binom;
    binom = binom * (n - i) / (i + 1);
  }
  Float50 h = 0;
  if (alpha > 0.0) {
    const Float50 a(alpha);
    h = -a * log(a) / log(Float50(2)) - (1 - a) * log(1 - a) / log(Float50(2));
  }
  const Float50 bound = pow(Float50(2), h * n);
  const Float50 sum(r.sum);
  r.holds = sum <= bound;
  r.log2_sum = static_cast<double>(log(sum) / log(Float50(2)));
  r.log2_bound = static_cast<double>(h * n);
  return r;
}

InequalityReport paley_zygmund_check(std::span<const double> samples, double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw DomainError("paley_zygmund_check: theta must lie in [0, 1]");
  if (samples.empty()) throw DomainError("paley_zygmund_check: no samples");
  double sum = 0.0, sum_sq = 0.0;
  for (double z : samples) {
    if (!(z >= 0.0)) throw DomainError("paley_zygmund_check: samples must be nonnegative");
    sum += z;
    sum_sq += z * z;
  }
  const double count = static_cast<double>(samples.size());
  const double mean = sum / count;
  const double second = sum_sq / count;
  std::size_t above = 0;
  for (double z : samples)
    if (z > theta * mean) ++above;
  InequalityReport r;
  r.lhs = static_cast<double>(above) / count;
  r.rhs = second > 0.0 ? (1.0 - theta) * (1.0 - theta) * mean * mean / second : 0.0;
  r.holds = r.lhs >= r.rhs * (1.0 - 1e-12);
  return r;
}

double gaussian_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double gaussian_tail_lower(double x) {
  if (!(x > 1.0)) throw DomainError("gaussian_tail_lower: requires x > 1");
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi) * (1.0 / x - 1.0 / (x * x * x));
}

SavageBounds savage_bounds(const CovarianceMatrix& sigma, const Eigen::VectorXd& t) {
  if (sigma.rows() != t.size()) throw DimensionMismatch("savage_bounds: dimension mismatch");
  const auto llt = cholesky(sigma, "savage_bounds");
  const Eigen::VectorXd u = llt.solve(t);
  if ((u.array() <= 0.0).any()) throw PreconditionViolation("savage_bounds: Sigma^-1 t is not entrywise positive");
  const auto d = static_cast<double>(t.size());
  const Eigen::MatrixXd l = llt.matrixL();
  const double log_det = 2.0 * l.diagonal().array().log().sum();
  SavageBounds b;
  b.density = std::exp(-0.5 * d * std::log(2.0 * std::numbers::pi) - 0.5 * log_det - 0.5 * t.dot(u));
  b.upper = b.density / u.prod();
  const Eigen::VectorXd w = u.cwiseInverse();
  b.lower = b.upper * (1.0 - w.dot(llt.solve(w)));
  return b;
}

Estimate mvn_tail_mc(const CovarianceMatrix& sigma, const Eigen::VectorXd& t, std::uint64_t samples,
                     RandomStream& stream) {
  if (sigma.rows() != t.size()) throw DimensionMismatch("mvn_tail_mc: dimension mismatch");
  if (samples == 0) throw DomainError("mvn_tail_mc: no samples");
  const Eigen::MatrixXd l = cholesky(sigma, "mvn_tail_mc").matrixL();
  const auto d = t.size();
  Eigen::VectorXd z(d);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (Eigen::Index i = 0; i < d; ++i) z[i] = stream.standard_normal();
    // Lower-triangular product, row by row, stopping at the first miss.
    bool inside = true;
    for (Eigen::Index i = 0; i < d && inside; ++i) inside = l.row(i).head(i + 1).dot(z.head(i + 1)) >= t[i];
    if (inside) ++hits;
  }
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(hits) / n;
  return {p, std::sqrt(p * (1.0 - p) / n)};
}

SlepianReport slepian_check(const CovarianceMatrix& sigma_x, const CovarianceMatrix& sigma_y,
                            const Eigen::VectorXd& t, std::uint64_t samples, RandomStream& stream) {
  if (sigma_x.rows() != sigma_y.rows() || sigma_x.cols() != sigma_y.cols())
    throw PreconditionViolation("slepian_check: covariance shapes differ");
  require_symmetric(sigma_x, "slepian_check");
  require_symmetric(sigma_y, "slepian_check");
  for (Eigen::Index i = 0; i < sigma_x.rows(); ++i) {
    if (std::abs(sigma_x(i, i) - sigma_y(i, i)) > 1e-12)
      throw PreconditionViolation("slepian_check: diagonals differ");
    for (Eigen::Index j = 0; j < sigma_x.cols(); ++j)
      if (i != j && sigma_x(i, j) > sigma_y(i, j))
        throw PreconditionViolation("slepian_check: sigma_x exceeds sigma_y off the diagonal");
  }
  SlepianReport r;
  try {
    r.x = mvn_tail_mc(sigma_x, t, samples, stream);
    r.y = mvn_tail_mc(sigma_y, t, samples, stream);
  } catch (const NotPositiveDefinite& e) {
    throw PreconditionViolation(e.what());
  }
  r.pooled_se = std::hypot(r.x.standard_error, r.y.standard_error);
  r.holds = r.x.value <= r.y.value + 5.0 * r.pooled_se;
  return r;
}

InequalityReport wielandt_hoffman_check(const Eigen::MatrixXd& a, const Eigen::MatrixXd& e) {
  require_symmetric(a, "wielandt_hoffman_check");
  require_symmetric(e, "wielandt_hoffman_check");
  if (a.rows() != e.rows()) throw DimensionMismatch("wielandt_hoffman_check: sizes differ");
  const Eigen::MatrixXd b = a + e;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sa(a, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sb(b, Eigen::EigenvaluesOnly);
  InequalityReport r;
  r.lhs = (sb.eigenvalues() - sa.eigenvalues()).squaredNorm();
  r.rhs = e.squaredNorm();
  r.holds = r.lhs <= r.rhs * (1.0 + 1e-9);
  return r;
}

CovarianceMatrix tuple_covariance(const TupleWitness& x, const TupleWitness& y, int p) {
  if (x.m() != y.m() || x.n() != y.n()) throw DimensionMismatch("tuple_covariance: tuple shapes differ");
  if (p < 1) throw DomainError("tuple_covariance: p must be positive");
  const int m = x.m();
  CovarianceMatrix a(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const auto& xi = x.configurations[static_cast<std::size_t>(i)];
      const auto& xj = x.configurations[static_cast<std::size_t>(j)];
      const auto& yi = y.configurations[static_cast<std::size_t>(i)];
      const auto& yj = y.configurations[static_cast<std::size_t>(j)];
      a(i, j) = overlap_power(xi, xj, p);
      a(m + i, m + j) = overlap_power(yi, yj, p);
      a(i, m + j) = overlap_power(xi, yj, p);
      a(m + j, i) = a(i, m + j);
    }
  }
  return a;
}

double epsilon_star(int m, double gamma) {
  if (m < 1) throw DomainError("epsilon_star: m must be positive");
  if (!(gamma >= 0.0)) throw DomainError("epsilon_star: gamma must be nonnegative");
  const double slack = 1.0 - m * gamma * gamma;
  if (!(slack > 0.0)) throw Infeasible("epsilon_star: requires m gamma^2 < 1");
  const double target = slack * (1.0 - kEpsilonStarMargin);
  double lo = 0.0, hi = 0.5;
  for (int it = 0; it < 2000 && (hi - lo > 1e-12 || lo == 0.0); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (binary_entropy(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (!(lo > 0.0)) throw Infeasible("epsilon_star: bisection did not leave zero");
  return lo;
}

double delta_p(int m, double xi, double epsilon_star, int p) {
  if (m < 1) throw DomainError("delta_p: m must be positive");
  if (!(xi > 0.0 && xi < 1.0)) throw DomainError("delta_p: xi must lie in (0, 1)");
  if (!(epsilon_star > 0.0 && epsilon_star < 0.5)) throw DomainError("delta_p: epsilon_star must lie in (0, 1/2)");
  if (p < 2) throw DomainError("delta_p: p must be at least 2");
  const double a = std::pow(xi, 2 * p);
  const double b = std::pow(1.0 - 2.0 * epsilon_star, 2 * p);
  return m * std::sqrt(2.0 * a + 2.0 * b);
}

double ExponentReport::value(std::string_view name) const {
  for (const auto& [k, v] : values)
    if (k == name) return v;
  throw DomainError("ExponentReport: no value named " + std::string(name));
}

bool ExponentReport::flag(std::string_view name) const {
  for (const auto& [k, v] : flags)
    if (k == name) return v;
  throw DomainError("ExponentReport: no flag named " + std::string(name));
}

namespace {

void check_pspin_domain(int m, double gamma, int p, double xi, double eta, double eps) {
  if (m < 1) throw DomainError("pspin_exponents: m must be positive");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("pspin_exponents: gamma must be positive");
  if (p < 2) throw DomainError("pspin_exponents: p must be at least 2");
  if (!(xi > 0.0 && xi < 1.0)) throw DomainError("pspin_exponents: xi must lie in (0, 1)");
  if (!(eta > 0.0 && eta < xi)) throw DomainError("pspin_exponents: requires 0 < eta < xi");
  if (!(eps > 0.0 && eps < 0.5)) throw DomainError("pspin_exponents: epsilon_star must lie in (0, 1/2)");
}

double sigma_ij_margin(int m, double gamma, int p, double xi, double eps) {
  const double g2 = gamma * gamma;
  const double mpx = m * p * std::pow(xi, p);
  return 1.0 - binary_entropy(eps) - m * g2 - 2.0 * m * g2 * mpx / (1.0 + 2.0 * mpx);
}

}  // namespace

ExponentReport pspin_exponents(int m, double gamma, int p, double xi, double eta, double eps) {
  check_pspin_domain(m, gamma, p, xi, eta, eps);
  const double g2 = gamma * gamma;
  const double xp = std::pow(xi, p);
  const double dp = delta_p(m, xi, eps, p);
  const double margin = sigma_ij_margin(m, gamma, p, xi, eps);

  ExponentReport r;
  r.model = "pspin";
  r.parameters = {{"m", m}, {"gamma", gamma}, {"p", p}, {"xi", xi}, {"eta", eta}, {"epsilon_star", eps}};
  r.values = {
      {"first_moment", 1.0 - m * g2},
      {"intra_prob", m * g2 / (1.0 + 2.0 * m * p * xp)},
      {"sigma_ij_margin", margin},
      {"second_moment_gap", 2.0 * m * g2 * dp / (1.0 + dp)},
      {"delta_p", dp},
  };
  r.flags = {
      {"margin_positive", margin > 0.0},
      {"delta_p_below_one", dp < 1.0},
      {"savage_applicable", dp < 1.0 && dp * std::sqrt(2.0 * m) / (1.0 - dp) < 1.0},
  };
  r.residuals = {{"first_moment", "o(n)"}, {"intra_prob", "O(log2 n)"}, {"second_moment_gap", "o(n)"}};
  for (auto& res : r.residuals) res.second = "unspecified " + res.second;
  r.notes = {"coefficients of n, log base 2"};
  return r;
}

std::optional<int> min_p_for_positive_margin(int m, double gamma, double xi, double eta, double eps, int p_max) {
  check_pspin_domain(m, gamma, 2, xi, eta, eps);
  for (int p = 2; p <= p_max; ++p)
    if (sigma_ij_margin(m, gamma, p, xi, eps) > 0.0) return p;
  return std::nullopt;
}

ExponentReport ksat_exponents(int m, double gamma, int k, double beta, double eta, double eps) {
  if (m < 1) throw DomainError("ksat_exponents: m must be positive");
  if (k < 1) throw DomainError("ksat_exponents: k must be positive");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("ksat_exponents: gamma must be positive");
  if (!(eta > 0.0 && eta < beta && beta <= 0.5)) throw DomainError("ksat_exponents: requires 0 < eta < beta <= 1/2");
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("ksat_exponents: epsilon must lie in (0, 1)");

  const double pairs = 0.5 * m * (m - 1);
  const double near = std::pow(1.0 - beta + eta, k);
  const double delta = 1.0 - binary_entropy(eps) - m * gamma;

  ExponentReport r;
  r.model = "ksat";
  r.parameters = {{"m", m}, {"gamma", gamma}, {"k", k}, {"beta", beta}, {"eta", eta}, {"epsilon", eps}};
  r.values = {
      {"phi", 1.0 + (m - 1) * binary_entropy(beta) - m * gamma + gamma * pairs * near},
      {"phi_leading", 1.0 - m * gamma},
      {"delta", delta},
      {"a_exponent", -delta + 2.0 * m * (m - 1) * std::pow(1.0 - 0.5 * (beta - eta), k) * gamma},
      {"b_residual_pairs", std::numbers::ln2 * gamma * m * (m - 1) * near},
      {"b_residual_diagonal", std::numbers::ln2 * gamma * m * m * std::pow(1.0 - eps, k)},
  };
  r.flags = {{"delta_positive", delta > 0.0}};
  r.residuals = {{"phi", "unspecified O_k(m^2 2^-k) + O(ln n)/n"},
                 {"a_exponent", "unspecified O_k(m^2 2^-k) + O(ln n)/n"},
                 {"b_residual_pairs", "unspecified O(2^-k)"}};
  r.notes = {"phi, delta and a_exponent: coefficients of n ln 2",
             "b residuals: coefficients of n in the natural-log exponent"};
  return r;
}

double ksat_kappa_constant(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("ksat_kappa_constant: gamma must be positive");
  return std::sqrt(std::log(3.0)) / std::numbers::ln2 / std::sqrt(gamma);
}

double ksat_kappa(double gamma, int k) {
  if (k < 1) throw DomainError("ksat_kappa: k must be positive");
  return ksat_kappa_constant(gamma) * std::pow(2.0, -0.5 * k);
}

double azuma_tail_bound(double t0, double M) {
  if (!(t0 >= 0.0)) throw DomainError("azuma_tail_bound: t0 must be nonnegative");
  if (!(M > 0.0)) throw DomainError("azuma_tail_bound: M must be positive");
  return 2.0 * std::exp(-t0 * t0 / M);
}

RepairThreshold repair_threshold(int n, int k, int m, double gamma, double beta, double eta, double eps) {
  if (n < 1 || k < 1 || m < 1) throw DomainError("repair_threshold: n, k and m must be positive");
  if (!(gamma > 0.0)) throw DomainError("repair_threshold: gamma must be positive");
  if (!(eta > 0.0 && eta < beta && beta < 1.0)) throw DomainError("repair_threshold: requires 0 < eta < beta < 1");
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("repair_threshold: epsilon must lie in (0, 1)");
  RepairThreshold r;
  r.alpha = gamma * std::ldexp(1.0, k) * std::numbers::ln2;
  r.M = n * r.alpha;
  r.T = std::max(0.5 * (1.0 - beta + eta), 0.5 * (1.0 - eps));
  r.required = 2.0 * r.alpha * n * m * m * std::pow(r.T, k);
  r.t_star = std::sqrt(r.M * r.required);
  r.t_star_t_power = n * r.alpha * std::sqrt(3.0) * m * std::pow(r.T, 0.5 * k);
  r.t_star_m_power = n * r.alpha * std::sqrt(3.0) * m * std::pow(r.M, 0.5 * k);
  r.t_power_satisfies = r.t_star_t_power * r.t_star_t_power / r.M >= r.required;
  r.m_power_satisfies = r.t_star_m_power * r.t_star_m_power / r.M >= r.required;
  return r;
}

}  // namespace mogp
