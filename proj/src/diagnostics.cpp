#include "popmcmc/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace popmcmc::diag {

EssResult ess(const std::vector<double>& series, int lag) {
  const long m = static_cast<long>(series.size());
  if (lag < 1 || m <= lag)
    throw std::invalid_argument("ess: need series length > lag >= 1");

  EssResult res;
  res.lag = lag;
  res.samples = m;

  double mean = 0.0;
  for (double x : series) mean += x;
  mean /= m;
  double var = 0.0;
  for (double x : series) var += (x - mean) * (x - mean);

  if (var == 0.0) {
    res.degenerate = true;
    res.ess = static_cast<double>(m);
    res.denominator = 1.0;
    return res;
  }

  double acc = 0.0;
  for (int t = 1; t <= lag; ++t) {
    double c = 0.0;
    for (long i = 0; i + t < m; ++i)
      c += (series[i] - mean) * (series[i + t] - mean);
    acc += c / var;
  }
  res.denominator = 1.0 + 2.0 * acc;
  if (res.denominator <= 0.0) {
    res.clipped = true;
    res.ess = static_cast<double>(m);
    return res;
  }
  res.ess = m / res.denominator;
  if (res.ess > m) {
    res.clipped = true;
    res.ess = static_cast<double>(m);
  }
  return res;
}

double efficiency_E(const EssRate& pop, const EssRate& van1, const EssRate& van2) {
  for (const auto* r : {&pop, &van1, &van2})
    if (!(r->sweeps > 0.0) || !(r->cpu_seconds > 0.0))
      throw std::invalid_argument("efficiency_E: sweeps and cpu time must be > 0");
  const double rp = pop.ess / (pop.sweeps * pop.cpu_seconds);
  const double r1 = van1.ess / (van1.sweeps * van1.cpu_seconds);
  const double r2 = van2.ess / (van2.sweeps * van2.cpu_seconds);
  if (r1 + r2 <= 0.0)
    throw std::invalid_argument("efficiency_E: vanilla rates must be positive");
  return 2.0 * rp / (r1 + r2);
}

void MoveTally::ensure_chains(int n) {
  if (static_cast<int>(per_chain.size()) < n) per_chain.resize(n);
}

void MoveTally::record_sweep(const std::vector<MoveOutcome>& outcomes) {
  ++sweeps;
  bool exchange_hit = false;
  for (const auto& o : outcomes) {
    if (!o.proposed) continue;
    ensure_chains(o.chain + 1);
    const int k = static_cast<int>(o.kind);
    ++pooled[k].proposed;
    ++per_chain[o.chain][k].proposed;
    if (o.accepted) {
      ++pooled[k].accepted;
      ++per_chain[o.chain][k].accepted;
      if (o.kind == MoveKind::ExchangeStage1 || o.kind == MoveKind::ExchangeStage2 ||
          o.kind == MoveKind::ConstrainedExchange)
        exchange_hit = true;
    }
  }
  if (exchange_hit) ++sweeps_with_accepted_exchange;
}

}  // namespace popmcmc::diag
