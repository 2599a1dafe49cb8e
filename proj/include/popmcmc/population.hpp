#ifndef POPMCMC_POPULATION_HPP
#define POPMCMC_POPULATION_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "popmcmc/mixture_model.hpp"
#include "popmcmc/move_stats.hpp"
#include "popmcmc/rj_moves.hpp"
#include "popmcmc/rng.hpp"

namespace popmcmc::pop {

// Decreasing inverse temperatures, zeta_1 = 1 > ... > zeta_N > 0.
struct Ladder {
  Eigen::VectorXd zetas;
  int size() const { return static_cast<int>(zetas.size()); }
  void validate() const;
};

// zeta_1 = 1, zeta_i = zeta_{i-1} - varsigma * varphi^{i-1}.
Ladder ladder_geometric(int n, double varsigma, double varphi);

struct ChainSlot {
  mix::MixtureState state;
  double zeta = 1.0;
  rj::DimBand band;        // unconstrained by default
  double loglik = 0.0;     // cached log-likelihood (0 in prior-only runs)
  double logprior = 0.0;
  bool constrained() const { return band.constrained(); }
};

// Shared evaluation context for a population run.
struct PopCtx {
  const mix::Dataset* data = nullptr;
  const mix::Hyperparams* hp = nullptr;
  bool use_likelihood = true;

  mix::TargetCtx chain_ctx(double zeta) const {
    return {data, hp, zeta, use_likelihood};
  }
  double loglik(const mix::MixtureState& s) const {
    return use_likelihood ? mix::log_likelihood(*data, s, *hp) : 0.0;
  }
};

struct Population {
  std::vector<ChainSlot> chains;
  Eigen::VectorXd mutation_weights;  // tau, uniform by default

  int size() const { return static_cast<int>(chains.size()); }
  double tempered(int i) const {
    return chains[i].zeta * chains[i].loglik + chains[i].logprior;
  }
  void refresh_cache(const PopCtx& ctx);
  std::vector<int> unconstrained_indices() const;
};

// One control stream for population-level decisions plus one stream per chain
// for mutations, all keyed off a single seed.
struct PopRngs {
  RngStream control;
  std::vector<RngStream> chains;
  PopRngs(std::uint64_t seed, int n) : control(seed, 0) {
    for (int i = 0; i < n; ++i) chains.emplace_back(seed, i + 1);
  }
};

// Ladder chains first (unconstrained, in ladder order), then one chain per
// constraint band at inverse temperature constrained_zeta, states drawn from
// the prior.
Population make_population(const Ladder& ladder,
                           const std::vector<rj::DimBand>& constrained_bands,
                           double constrained_zeta, const PopCtx& ctx,
                           RngStream& rng);

// --- exchange ----------------------------------------------------------------

// log acceptance of swapping tempered chains: (zeta_i - zeta_l)(ll_l - ll_i)
double exchange_log_rho1(double zeta_i, double zeta_l, double ll_i, double ll_l);

// second-stage delayed-rejection acceptance; log_rho1_first must be < 0
double dr_log_rho2(double log_swap_34, double log_rho1_pseudo,
                   double log_rho1_first);

bool exchange_legal(const Population& pop, int i, int l);
double exchange_log_accept(const Population& pop, int i, int l);

MoveOutcome exchange_basic(Population& pop, int i, int l, RngStream& rng);

// Stage 1 swaps any unordered pair of unconstrained chains; on rejection,
// stage 2 proposes an adjacent pair with the pseudo-move correction.
std::vector<MoveOutcome> exchange_delayed_rejection(Population& pop,
                                                    RngStream& rng);

// Uniform selection among legal (constrained, unconstrained) pairs, basic
// acceptance, no delayed rejection. No-op when no pair is legal.
MoveOutcome constrained_exchange(Population& pop, RngStream& rng);

// --- crossovers ----------------------------------------------------------------

MoveOutcome crossover_variable_dim(Population& pop, const PopCtx& ctx,
                                   RngStream& rng);

MoveOutcome crossover_fixed_dim(Population& pop, const PopCtx& ctx,
                                RngStream& rng);

// --- snooker -------------------------------------------------------------------

struct SnookerScales {
  Eigen::VectorXd proposal_sigma;  // per-dimension std dev of the mean proposal

  static SnookerScales defaults(const Eigen::VectorXd& ranges) {
    return {Eigen::VectorXd(ranges / 20.0)};
  }
};

MoveOutcome snooker_birth_death(Population& pop, const PopCtx& ctx,
                                const SnookerScales& scales, RngStream& rng);

// --- the full driver -------------------------------------------------------------

struct PopSweepOptions {
  SnookerScales snooker;
  bool exchange_after_crossover = false;  // extra exchange for the cold chain
};

std::vector<MoveOutcome> population_sweep(Population& pop, const PopCtx& ctx,
                                          const rj::MoveScales& scales,
                                          const PopSweepOptions& opt,
                                          PopRngs& rngs);

// --- internals exposed for analysis and tests -----------------------------------

namespace detail {

// pair-selection weights: inversely proportional to gap; when any gap is zero
// the selection concentrates uniformly on the zero-gap pairs
Eigen::VectorXd inverse_gap_weights(const Eigen::VectorXd& gaps);

// sort components by decreasing weight (variable-dim crossover labelling)
void sort_by_weight_desc(mix::MixtureState& s);
// sort components by ascending first mean coordinate (fixed-dim labelling)
void sort_by_first_mean(mix::MixtureState& s);
bool ordered_by_first_mean(const mix::MixtureState& s);

// the involution map of the variable-dimension crossover; both inputs must be
// weight-sorted, a.k() > b.k()
void var_dim_cross(const mix::MixtureState& a, const mix::MixtureState& b,
                   mix::MixtureState& a_out, mix::MixtureState& b_out);

void permute_labels(mix::MixtureState& s, RngStream& rng);

// h-bar weights over the anchor's components: mean symmetric Mahalanobis
// distance to the current chain's components (uniform when all coincide)
Eigen::VectorXd snooker_anchor_weights(const mix::MixtureState& anchor,
                                       const mix::MixtureState& current);

// log density of the anchor-based proposal q(mu, Lambda)
double snooker_log_q(const mix::MixtureState& anchor,
                     const Eigen::VectorXd& hbar_w, const Eigen::VectorXd& mu,
                     const SpdChol& phi, const SnookerScales& sc);

}  // namespace detail

}  // namespace popmcmc::pop

#endif
