#include "popmcmc/simulated_tempering.hpp"

#include <cmath>
#include <stdexcept>

#include "popmcmc/numerics.hpp"

namespace popmcmc::pop {

void StConfig::validate() const {
  if (zetas.size() < 1 || zetas.size() != log_masses.size())
    throw std::invalid_argument("StConfig: inconsistent sizes");
  bool has_one = false;
  for (int i = 0; i < zetas.size(); ++i) {
    if (!(zetas(i) > 0.0) || zetas(i) > 1.0)
      throw std::invalid_argument("StConfig: grid must lie in (0,1]");
    if (i > 0 && !(zetas(i) < zetas(i - 1)))
      throw std::invalid_argument("StConfig: grid must be strictly decreasing");
    if (zetas(i) == 1.0) has_one = true;
  }
  if (!has_one) throw std::invalid_argument("StConfig: grid must contain 1");
  const double mass = log_masses.array().exp().sum();
  if (std::abs(mass - 1.0) > 1e-9)
    throw std::invalid_argument("StConfig: masses must sum to 1");
}

StConfig StConfig::reciprocal(int m, double step) {
  if (m < 1 || step <= 0.0) throw std::invalid_argument("StConfig: bad grid spec");
  StConfig cfg;
  cfg.zetas.resize(m);
  cfg.log_masses.resize(m);
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    cfg.zetas(i) = 1.0 - i * step;
    if (!(cfg.zetas(i) > 0.0))
      throw std::invalid_argument("StConfig: grid leaves (0,1]");
    z += 1.0 / (i + 1.0);
  }
  for (int i = 0; i < m; ++i) cfg.log_masses(i) = -std::log((i + 1.0) * z);
  cfg.validate();
  return cfg;
}

namespace {

int neighbour_count(int i, int m) {
  return (i == 0 || i == m - 1) ? 1 : 2;
}

}  // namespace

StSweepResult simulated_tempering_sweep(const mix::MixtureState& s, int zidx,
                                        const StConfig& cfg, const PopCtx& ctx,
                                        const rj::MoveScales& scales,
                                        RngStream& rng) {
  const int m = cfg.size();
  if (zidx < 0 || zidx >= m)
    throw std::invalid_argument("simulated_tempering_sweep: index out of range");

  StSweepResult res;
  res.zeta_index = zidx;
  const rj::SweepResult sweep =
      rj::rj_sweep(s, ctx.chain_ctx(cfg.zetas(zidx)), scales, rng);
  res.state = sweep.state;
  res.loglik = sweep.loglik;
  res.logprior = sweep.logprior;
  res.outcomes = sweep.outcomes;
  if (m == 1) return res;

  const double ll = res.loglik;
  const int cur = res.zeta_index;

  // stage 1: uniform proposal over the grid
  const int j = rng.uniform_int(m);
  const double log_rho1 = (cfg.zetas(j) - cfg.zetas(cur)) * ll +
                          cfg.log_masses(j) - cfg.log_masses(cur);
  if (std::log(rng.uniform()) < log_rho1) {
    res.zeta_index = j;
    res.outcomes.push_back({MoveKind::TemperatureStage1, true, true, log_rho1, 0});
    return res;
  }
  res.outcomes.push_back({MoveKind::TemperatureStage1, true, false, log_rho1, 0});
  if (log_rho1 >= 0.0) return res;

  // stage 2: adjacent proposal, pseudo move re-proposes level j from there
  const int nb = neighbour_count(cur, m);
  int j2 = cur + (nb == 1 ? (cur == 0 ? 1 : -1)
                          : (rng.uniform_int(2) == 0 ? -1 : 1));
  const double log_rho1_pseudo = (cfg.zetas(j) - cfg.zetas(j2)) * ll +
                                 cfg.log_masses(j) - cfg.log_masses(j2);
  const double log_qratio = std::log(static_cast<double>(neighbour_count(cur, m))) -
                            std::log(static_cast<double>(neighbour_count(j2, m)));
  double log_rho2 = neg_inf;
  if (log_rho1_pseudo < 0.0) {
    log_rho2 = std::min(0.0, (cfg.zetas(j2) - cfg.zetas(cur)) * ll +
                                 cfg.log_masses(j2) - cfg.log_masses(cur) +
                                 log_qratio + log1m_exp(log_rho1_pseudo) -
                                 log1m_exp(log_rho1));
  }
  const bool acc = std::log(rng.uniform()) < log_rho2;
  if (acc) res.zeta_index = j2;
  res.outcomes.push_back({MoveKind::TemperatureStage2, true, acc, log_rho2, 0});
  return res;
}

}  // namespace popmcmc::pop
