#ifndef POPMCMC_VARSEL_HPP
#define POPMCMC_VARSEL_HPP

#include <cstdint>

#include <Eigen/Dense>

#include "popmcmc/rng.hpp"

namespace popmcmc::finite {

// Conjugate normal-inverse-gamma linear model with spike indicators. The
// intercept is always included; theta selects columns of X. Priors:
// gamma | sigma ~ N(m 1, sigma^2 v I), sigma^2 ~ IG(a, b), and
// p(theta, k) = (k_max + 1)^{-1} C(k_max, k)^{-1}.
struct VarselModel {
  Eigen::MatrixXd X;  // n x k_max
  Eigen::VectorXd y;
  double prior_mean = 0.0;
  double prior_scale = 100.0;  // V = prior_scale * I
  double a = 0.01;
  double b = 0.01;

  int n() const { return static_cast<int>(y.size()); }
  int k_max() const { return static_cast<int>(X.cols()); }
  void validate() const;
};

// Exact log marginal likelihood of y with the selected columns integrated
// over (gamma, sigma^2).
double marginal_log_likelihood(const VarselModel& model, std::uint32_t theta);

// -log(k_max + 1) - log C(k_max, k), k = popcount(theta)
double varsel_log_prior(std::uint32_t theta, int k_max);

// Enumerated tempered posterior over all 2^k_max states (max-shifted).
// Guarded at k_max <= 20.
Eigen::VectorXd exact_posterior(const VarselModel& model, double zeta);

// Deterministic synthetic instance used across the analyses: a response that
// is explained jointly by all predictors but poorly by any proper subset, so
// the posterior piles up on the null and saturated models and the single-flip
// chain is nearly frozen between the two basins.
VarselModel varsel_fixture(std::uint64_t seed = 3);

// Well-mixing companion instance (independent predictors, modest effects)
// for simulation-versus-enumeration checks.
VarselModel varsel_fixture_mild(std::uint64_t seed = 11);

}  // namespace popmcmc::finite

#endif
