#ifndef POPMCMC_MIXTURE_MODEL_HPP
#define POPMCMC_MIXTURE_MODEL_HPP

#include <vector>

#include <Eigen/Dense>

#include "popmcmc/rng.hpp"
#include "popmcmc/spd_chol.hpp"

namespace popmcmc::mix {

// Observed data, one row per point.
struct Dataset {
  Eigen::MatrixXd points;  // n x q
  Eigen::VectorXd ranges;  // per-dimension max - min

  explicit Dataset(Eigen::MatrixXd pts);
  int n() const { return static_cast<int>(points.rows()); }
  int q() const { return static_cast<int>(points.cols()); }
};

// Hyperparameters of the hierarchical prior. alpha = alpha_prime + (q+1)/2.
struct Hyperparams {
  Eigen::VectorXd xi;          // prior mean of component means
  Eigen::VectorXd kappa_diag;  // precision diag; prior covariance is kappa^{-1}
  double g = 0.0;
  double alpha = 0.0;
  double alpha_prime = 0.0;
  double delta = 1.0;
  Eigen::VectorXd h_diag;
  double dof = 4.0;  // component t degrees of freedom, fixed
  int k_max = 20;

  int q() const { return static_cast<int>(xi.size()); }
  void validate() const;
};

// One chain's parameter vector: weights, means, covariance factors, Psi.
struct MixtureState {
  Eigen::VectorXd weights;            // k, sums to 1
  std::vector<Eigen::VectorXd> means; // k vectors of dim q
  std::vector<SpdChol> chols;         // k factors: Lambda_j = Phi_j Phi_j'
  Eigen::MatrixXd psi;                // q x q SPD

  int k() const { return static_cast<int>(weights.size()); }
  int q() const { return psi.rows() > 0 ? static_cast<int>(psi.rows())
                                        : (means.empty() ? 0 : static_cast<int>(means[0].size())); }
  void validate(int k_max) const;
};

// Defaults from the observed data: xi the midpoint, kappa = diag(1/R_d^2),
// g = q/2, delta = 1, alpha' = 3, alpha = alpha' + (q+1)/2,
// h = diag(100 q / (2 alpha R_d^2)), dof = 4, k_max = 20.
// Errors when any dimension has zero range.
Hyperparams default_hyperparams(const Dataset& data);

// Per-point log density of one t component, vectorized over the data.
Eigen::VectorXd component_log_density(const Dataset& data,
                                      const Eigen::VectorXd& mu,
                                      const SpdChol& chol, double dof);

// sum_i log sum_j w_j t(y_i; mu_j, Lambda_j, dof)
double log_likelihood(const Dataset& data, const MixtureState& s,
                      const Hyperparams& h);

// Hierarchical prior in the Lambda parameterization; the Cholesky
// change-of-variable Jacobian is owned by the move kernels, not here.
double log_prior(const MixtureState& s, const Hyperparams& h);

// Single-factor prior terms used by the trans-dimensional kernels.
double log_prior_mean(const Eigen::VectorXd& mu, const Hyperparams& h);
// IW(2 alpha, 2 Psi) density of Lambda = Phi Phi', in Lambda coordinates.
double log_prior_lambda(const SpdChol& chol, const Eigen::MatrixXd& psi,
                        const Hyperparams& h);

// zeta * log_likelihood + log_prior for zeta in (0,1]. zeta == 0 is accepted
// only when allow_prior_only is set (prior-recovery runs).
double tempered_log_target(const Dataset& data, const MixtureState& s,
                           const Hyperparams& h, double zeta,
                           bool allow_prior_only = false);

// Draw a full state from the prior (k uniform on {k_lo..k_hi}).
MixtureState sample_prior(const Hyperparams& h, RngStream& rng, int k_lo,
                          int k_hi);

// Evaluation context threaded through the move kernels. use_likelihood=false
// turns the target into the bare prior (the zeta-exponent-0 test mode).
struct TargetCtx {
  const Dataset* data = nullptr;
  const Hyperparams* hp = nullptr;
  double zeta = 1.0;
  bool use_likelihood = true;

  double loglik(const MixtureState& s) const {
    return use_likelihood ? log_likelihood(*data, s, *hp) : 0.0;
  }
  double logprior(const MixtureState& s) const { return log_prior(s, *hp); }
  double tempered(const MixtureState& s) const {
    return use_likelihood ? zeta * log_likelihood(*data, s, *hp) + log_prior(s, *hp)
                          : log_prior(s, *hp);
  }
};

}  // namespace popmcmc::mix

#endif
