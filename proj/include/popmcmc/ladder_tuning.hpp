#ifndef POPMCMC_LADDER_TUNING_HPP
#define POPMCMC_LADDER_TUNING_HPP

#include <algorithm>
#include <limits>
#include <vector>

#include "popmcmc/population.hpp"
#include "popmcmc/rng.hpp"

namespace popmcmc::pop {

struct IbaTuneResult {
  Ladder ladder;
  bool converged = false;
  int rounds = 0;
  Eigen::VectorXd criterion;  // last pilot estimate per adjacent pair
};

// Tunes adjacent temperature gaps so the pilot estimate of the expected
// negative log Hastings ratio of an adjacent exchange lands in [0.5, 2]
// (targeting 1, which makes exchanges accept about half the time). Bisection
// on each gap, one bracket per gap; deterministic given the stream.
//
// mutate(state, zeta, rng) advances one chain one step at inverse temperature
// zeta; loglik(state) evaluates the untempered log-likelihood.
template <class State, class MutateFn, class LoglikFn>
IbaTuneResult ladder_tune_iba_generic(const Ladder& init,
                                      std::vector<State> states, MutateFn mutate,
                                      LoglikFn loglik, int pilot_sweeps,
                                      RngStream& rng, int max_rounds = 40) {
  if (pilot_sweeps < 1)
    throw std::invalid_argument("ladder_tune_iba: pilot_sweeps must be >= 1");
  const int n = init.size();
  if (static_cast<int>(states.size()) != n)
    throw std::invalid_argument("ladder_tune_iba: one state per ladder level");

  IbaTuneResult res;
  res.ladder = init;
  if (n < 2) {
    res.converged = true;
    return res;
  }

  const double inf = std::numeric_limits<double>::infinity();
  Eigen::VectorXd gaps(n - 1);
  for (int i = 0; i + 1 < n; ++i) gaps(i) = init.zetas(i) - init.zetas(i + 1);
  Eigen::VectorXd lo = Eigen::VectorXd::Zero(n - 1);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(n - 1, inf);
  res.criterion.resize(n - 1);

  Eigen::VectorXd best_gaps = gaps;
  double best_err = inf;

  for (int round = 0; round < max_rounds; ++round) {
    res.rounds = round + 1;
    // rebuild the ladder from the gaps, keeping every level positive
    res.ladder.zetas(0) = 1.0;
    for (int i = 0; i + 1 < n; ++i) {
      const double cap = res.ladder.zetas(i) - 1e-9;
      gaps(i) = std::min(gaps(i), cap);
      res.ladder.zetas(i + 1) = res.ladder.zetas(i) - gaps(i);
    }

    // pilot run: short burn-in, then per-sweep log-likelihood records
    const int burn = std::max(1, pilot_sweeps / 5);
    for (int t = 0; t < burn; ++t)
      for (int i = 0; i < n; ++i) mutate(states[i], res.ladder.zetas(i), rng);
    Eigen::MatrixXd ll(pilot_sweeps, n);
    for (int t = 0; t < pilot_sweeps; ++t)
      for (int i = 0; i < n; ++i) {
        mutate(states[i], res.ladder.zetas(i), rng);
        ll(t, i) = loglik(states[i]);
      }

    bool all_ok = true;
    double err = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
      double acc = 0.0;
      for (int t = 0; t < pilot_sweeps; ++t)
        acc += std::max(0.0, gaps(i) * (ll(t, i) - ll(t, i + 1)));
      res.criterion(i) = acc / pilot_sweeps;
      err += std::abs(std::log(std::max(res.criterion(i), 1e-12)));
      if (res.criterion(i) < 0.5 || res.criterion(i) > 2.0) all_ok = false;
    }
    if (err < best_err) {
      best_err = err;
      best_gaps = gaps;
    }
    if (all_ok) {
      res.converged = true;
      return res;
    }

    for (int i = 0; i + 1 < n; ++i) {
      if (res.criterion(i) > 2.0) {
        hi(i) = std::min(hi(i), gaps(i));
        gaps(i) = 0.5 * (lo(i) + hi(i));
      } else if (res.criterion(i) < 0.5) {
        lo(i) = std::max(lo(i), gaps(i));
        gaps(i) = std::isinf(hi(i)) ? std::max(1e-6, 2.0 * gaps(i))
                                    : 0.5 * (lo(i) + hi(i));
      }
    }
  }

  // bracket cap hit: report the best ladder seen with the warning flag unset
  res.converged = false;
  res.ladder.zetas(0) = 1.0;
  for (int i = 0; i + 1 < n; ++i) {
    const double cap = res.ladder.zetas(i) - 1e-9;
    res.ladder.zetas(i + 1) = res.ladder.zetas(i) - std::min(best_gaps(i), cap);
  }
  return res;
}

// Mixture-model instantiation: mutation is one full reversible-jump sweep.
IbaTuneResult ladder_tune_iba(const Ladder& init, const PopCtx& ctx,
                              const rj::MoveScales& scales, int pilot_sweeps,
                              RngStream& rng, int max_rounds = 40);

}  // namespace popmcmc::pop

#endif
