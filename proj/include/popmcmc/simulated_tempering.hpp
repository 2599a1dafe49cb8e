#ifndef POPMCMC_SIMULATED_TEMPERING_HPP
#define POPMCMC_SIMULATED_TEMPERING_HPP

#include <vector>

#include <Eigen/Dense>

#include "popmcmc/population.hpp"

namespace popmcmc::pop {

// Finite temperature grid with pseudo-prior masses; the grid must contain 1.
struct StConfig {
  Eigen::VectorXd zetas;       // descending, zetas(0) = 1
  Eigen::VectorXd log_masses;  // log p(zeta), normalized

  int size() const { return static_cast<int>(zetas.size()); }
  void validate() const;

  // p(zeta_i) proportional to 1/i over an evenly spaced descending grid
  static StConfig reciprocal(int m, double step);
};

struct StSweepResult {
  mix::MixtureState state;
  int zeta_index = 0;
  std::vector<MoveOutcome> outcomes;
  double loglik = 0.0;
  double logprior = 0.0;
};

// One reversible-jump sweep at the current temperature, then a
// delayed-rejection temperature move: stage 1 proposes uniformly over the
// grid; on rejection stage 2 proposes an adjacent level with the pseudo-move
// correction (pseudo move re-proposes the stage-1 level).
StSweepResult simulated_tempering_sweep(const mix::MixtureState& s, int zidx,
                                        const StConfig& cfg, const PopCtx& ctx,
                                        const rj::MoveScales& scales,
                                        RngStream& rng);

}  // namespace popmcmc::pop

#endif
