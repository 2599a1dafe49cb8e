#ifndef POPMCMC_DIAGNOSTICS_HPP
#define POPMCMC_DIAGNOSTICS_HPP

#include <array>
#include <optional>
#include <vector>

#include "popmcmc/move_stats.hpp"

namespace popmcmc::diag {

struct EssResult {
  double ess = 0.0;
  double denominator = 1.0;  // 1 + 2 sum of autocorrelations up to the lag
  int lag = 10;
  long samples = 0;
  bool degenerate = false;  // constant series
  bool clipped = false;     // non-positive denominator or ess above M
};

// ESS = M / (1 + 2 sum_{t<=lag} rho_t). A constant series counts as fully
// effective (rho := 0) and is flagged; a non-positive or sub-unit denominator
// clips the estimate at M so ESS <= M always holds.
EssResult ess(const std::vector<double>& series, int lag = 10);

struct EssRate {
  double ess = 0.0;
  double sweeps = 0.0;
  double cpu_seconds = 0.0;
};

// E = 2 (ESS_p / (M_p T_p)) / (ESS_1/(M_1 T_1) + ESS_2/(M_2 T_2))
double efficiency_E(const EssRate& pop, const EssRate& van1, const EssRate& van2);

struct MoveCounter {
  long proposed = 0;
  long accepted = 0;
};

// Cumulative per-kind counters, pooled and per chain.
struct MoveTally {
  std::vector<std::array<MoveCounter, move_kind_count>> per_chain;
  std::array<MoveCounter, move_kind_count> pooled{};
  long sweeps = 0;
  long sweeps_with_accepted_exchange = 0;

  void ensure_chains(int n);
  // Records one sweep's outcomes and the per-sweep exchange success flag.
  void record_sweep(const std::vector<MoveOutcome>& outcomes);

  // acceptance fraction; absent (nullopt) when nothing was proposed
  static std::optional<double> rate(const MoveCounter& c) {
    if (c.proposed == 0) return std::nullopt;
    return static_cast<double>(c.accepted) / static_cast<double>(c.proposed);
  }
  std::optional<double> pooled_rate(MoveKind k) const {
    return rate(pooled[static_cast<int>(k)]);
  }
  double exchange_sweep_fraction() const {
    return sweeps == 0 ? 0.0
                       : static_cast<double>(sweeps_with_accepted_exchange) /
                             static_cast<double>(sweeps);
  }
};

}  // namespace popmcmc::diag

#endif
