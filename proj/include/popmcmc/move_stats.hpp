#ifndef POPMCMC_MOVE_STATS_HPP
#define POPMCMC_MOVE_STATS_HPP

#include <array>
#include <string_view>

namespace popmcmc {

enum class MoveKind {
  MeanWalk,
  CholOffdiagWalk,
  CholDiagWalk,
  WeightWalk,
  PsiGibbs,
  Birth,
  Death,
  Split,
  Combine,
  SnookerBirth,
  SnookerDeath,
  CrossoverVarDim,
  CrossoverFixedDim,
  ExchangeStage1,
  ExchangeStage2,
  ConstrainedExchange,
  TemperatureStage1,
  TemperatureStage2,
  None,
};

inline constexpr int move_kind_count = 19;

constexpr std::string_view move_kind_name(MoveKind k) {
  constexpr std::array<std::string_view, move_kind_count> names = {
      "mean_walk",         "chol_offdiag_walk", "chol_diag_walk",
      "weight_walk",       "psi_gibbs",         "birth",
      "death",             "split",             "combine",
      "snooker_birth",     "snooker_death",     "crossover_var_dim",
      "crossover_fixed_dim", "exchange_stage1", "exchange_stage2",
      "constrained_exchange", "temperature_stage1", "temperature_stage2",
      "none"};
  return names[static_cast<int>(k)];
}

struct MoveOutcome {
  MoveKind kind = MoveKind::None;
  bool proposed = false;
  bool accepted = false;   // accepted implies proposed
  double log_hastings = 0.0;
  int chain = 0;           // population chain index, 0 for single-chain runs
};

}  // namespace popmcmc

#endif
