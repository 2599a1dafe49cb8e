#ifndef POPMCMC_NUMERICS_HPP
#define POPMCMC_NUMERICS_HPP

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

namespace popmcmc {

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

// log(sum_i exp(v_i)) with max shift; -inf for an empty or all -inf input.
template <typename Derived>
double log_sum_exp(const Eigen::MatrixBase<Derived>& v) {
  if (v.size() == 0) return neg_inf;
  const double m = v.maxCoeff();
  if (!std::isfinite(m)) return m;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += std::exp(v(i) - m);
  return m + std::log(acc);
}

inline double log_sum_exp(double a, double b) {
  if (a == neg_inf) return b;
  if (b == neg_inf) return a;
  const double m = a > b ? a : b;
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

// log(1 - exp(x)) for x <= 0, stable near both ends.
inline double log1m_exp(double x) {
  if (x > 0.0) throw std::domain_error("log1m_exp: argument must be <= 0");
  if (x == 0.0) return neg_inf;
  if (x > -0.6931471805599453) return std::log(-std::expm1(x));
  return std::log1p(-std::exp(x));
}

inline double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

inline double log_choose(int n, int k) {
  if (k < 0 || k > n) throw std::domain_error("log_choose: k out of range");
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// log of the multivariate gamma function Gamma_q(a).
inline double log_mv_gamma(int q, double a) {
  double r = 0.25 * q * (q - 1) * std::log(M_PI);
  for (int i = 1; i <= q; ++i) r += std::lgamma(a + 0.5 * (1 - i));
  return r;
}

}  // namespace popmcmc

#endif
