#include "popmcmc/ladder_tuning.hpp"

namespace popmcmc::pop {

IbaTuneResult ladder_tune_iba(const Ladder& init, const PopCtx& ctx,
                              const rj::MoveScales& scales, int pilot_sweeps,
                              RngStream& rng, int max_rounds) {
  std::vector<mix::MixtureState> states;
  states.reserve(init.size());
  for (int i = 0; i < init.size(); ++i)
    states.push_back(mix::sample_prior(*ctx.hp, rng, 1, ctx.hp->k_max));
  auto mutate = [&](mix::MixtureState& s, double zeta, RngStream& r) {
    s = rj::rj_sweep(s, ctx.chain_ctx(zeta), scales, r).state;
  };
  auto loglik = [&](const mix::MixtureState& s) { return ctx.loglik(s); };
  return ladder_tune_iba_generic(init, std::move(states), mutate, loglik,
                                 pilot_sweeps, rng, max_rounds);
}

}  // namespace popmcmc::pop
