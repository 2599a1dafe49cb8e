#ifndef POPMCMC_RJ_MOVES_HPP
#define POPMCMC_RJ_MOVES_HPP

#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "popmcmc/mixture_model.hpp"
#include "popmcmc/move_stats.hpp"
#include "popmcmc/rng.hpp"

namespace popmcmc::rj {

// Random-walk and split proposal scales. Defaults follow the data ranges
// where a length scale is needed; everything is configurable.
struct MoveScales {
  Eigen::VectorXd cauchy_mean;    // per-dimension, additive Cauchy on means
  double cauchy_offdiag = 0.05;   // additive Cauchy on Phi off-diagonals
  double lognorm_diag_sigma = 0.3;
  double logit_weight_sigma = 0.5;
  double split_gamma = 2.0;            // u1 ~ Be(gamma, gamma)
  Eigen::VectorXd split_sigma_mu;      // per-dimension, u(2) ~ N(0, sigma_mu)
  double split_sigma_phi = 0.1;        // off-diagonal u(3)
  double split_sigma_diag = 0.3;       // diagonal u(3) ~ LN(0, sigma)

  static MoveScales defaults(const Eigen::VectorXd& ranges);
  void validate(int q) const;
};

// Dimension constraint K_i = {lo..hi} for a constrained chain; the default is
// unconstrained.
struct DimBand {
  int lo = 1;
  int hi = std::numeric_limits<int>::max();
  bool contains(int k) const { return k >= lo && k <= hi; }
  bool constrained() const { return lo != 1 || hi != std::numeric_limits<int>::max(); }
};

struct RjOptions {
  DimBand band;
  bool trans_moves = true;
};

struct SweepResult {
  mix::MixtureState state;
  std::vector<MoveOutcome> outcomes;
  double loglik = 0.0;    // 0 when the context runs prior-only
  double logprior = 0.0;
};

// --- Acceptance-ratio pieces, exposed for detailed-balance analysis ---------

// Replace component j's mean coordinate d. Cauchy proposal is symmetric, so
// the log acceptance is the tempered-target difference.
double log_accept_mean_coord(const mix::TargetCtx& ctx, const mix::MixtureState& s,
                             int j, int d, double new_value);

// Replace component j's whole strict lower triangle (symmetric proposal).
double log_accept_offdiag(const mix::TargetCtx& ctx, const mix::MixtureState& s,
                          int j, const Eigen::MatrixXd& new_lower);

// Replace diagonal entry (l,l) of component j's factor via the multiplicative
// log-normal walk: target ratio in Phi coordinates (inverse-Wishart times the
// Cholesky Jacobian) plus the phi'/phi proposal asymmetry.
double log_accept_chol_diag(const mix::TargetCtx& ctx, const mix::MixtureState& s,
                            int j, int l, double new_value);

// Replace the weight vector; includes the log-Jacobian of the multinomial
// logistic map (reference category k).
double log_accept_weights(const mix::TargetCtx& ctx, const mix::MixtureState& s,
                          const Eigen::VectorXd& new_weights);

// Shared birth acceptance, the snooker expression with the selection factors
// passed in. The vanilla move uses log_q == log p(mu*, Lambda*) and unit
// chain-selection counts so those factors cancel.
double log_birth_accept(double tempered_lik_diff, int k, double w, double delta,
                        double log_prior_mu_lambda, double log_q_mu_lambda,
                        double log_b, double log_d_rev, double log_mb = 0.0,
                        double log_md_rev = 0.0);

// --- Split / combine maps ----------------------------------------------------

struct SplitInnovations {
  double u1 = 0.5;
  Eigen::VectorXd u_mean;           // r
  Eigen::MatrixXd u_offdiag;        // r x r, strict lower used
  Eigen::VectorXd u_diag;           // r, positive
};

struct SplitParts {
  double w1 = 0, w2 = 0;
  Eigen::VectorXd mu1, mu2;
  SpdChol phi1, phi2;
  SplitParts() : phi1(SpdChol::identity(1)), phi2(SpdChol::identity(1)) {}
};

SplitParts split_component(double w_parent, const Eigen::VectorXd& mu_parent,
                           const SpdChol& phi_parent, const SplitInnovations& u);

struct CombineParts {
  double w_parent = 0;
  Eigen::VectorXd mu_parent;
  SpdChol phi_parent;
  SplitInnovations u;  // reconstructed innovations
  CombineParts() : phi_parent(SpdChol::identity(1)) {}
};

CombineParts combine_components(double w1, const Eigen::VectorXd& mu1,
                                const SpdChol& phi1, double w2,
                                const Eigen::VectorXd& mu2, const SpdChol& phi2);

// |J| = 2^{r(r+3)/2} w_parent prod_l phi_ll(parent) / u_ll, in logs.
double log_split_jacobian(double w_parent, const SpdChol& phi_parent,
                          const Eigen::VectorXd& u_diag);

// Combine-pair selection: weights inversely proportional to the symmetric
// two-term Mahalanobis distance. Returns log probabilities over unordered
// pairs (a<b), flattened row-major. When some pairs coincide exactly the
// selection concentrates uniformly on the zero-distance pairs.
Eigen::MatrixXd combine_pair_log_probs(const mix::MixtureState& s);

// --- Moves -------------------------------------------------------------------

// Fixed-dimension Metropolis-Hastings block: per-coordinate mean walks,
// per-component off-diagonal walk, per-entry diagonal walk, one weight walk.
SweepResult mh_fixed_updates(const mix::MixtureState& s, const mix::TargetCtx& ctx,
                             const MoveScales& scales, RngStream& rng);

// Psi full conditional: W(2(g + k alpha'), (2h + 2 sum Lambda_j^{-1})^{-1}).
mix::MixtureState gibbs_psi(const mix::MixtureState& s, const mix::Hyperparams& h,
                            RngStream& rng);

SweepResult birth_death(const mix::MixtureState& s, const mix::TargetCtx& ctx,
                        RngStream& rng, const DimBand& band = {});

SweepResult split_combine(const mix::MixtureState& s, const mix::TargetCtx& ctx,
                          const MoveScales& scales, RngStream& rng,
                          const DimBand& band = {});

// Full sweep: fixed-dimension updates, Psi Gibbs, then a fair coin between
// birth/death and split/combine.
SweepResult rj_sweep(const mix::MixtureState& s, const mix::TargetCtx& ctx,
                     const MoveScales& scales, RngStream& rng,
                     const RjOptions& opt = {});

}  // namespace popmcmc::rj

#endif
