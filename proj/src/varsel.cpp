#include "popmcmc/varsel.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "popmcmc/numerics.hpp"

namespace popmcmc::finite {

void VarselModel::validate() const {
  if (n() < 1 || X.rows() != y.size())
    throw std::invalid_argument("VarselModel: X and y sizes disagree");
  if (!(a > 0.0) || !(b > 0.0) || !(prior_scale > 0.0))
    throw std::invalid_argument("VarselModel: a, b, prior scale must be > 0");
  if (k_max() < 1 || k_max() > 30)
    throw std::invalid_argument("VarselModel: k_max out of range");
}

double marginal_log_likelihood(const VarselModel& model, std::uint32_t theta) {
  model.validate();
  const int n = model.n();
  const int k = std::popcount(theta);
  const int p = k + 1;  // intercept always in

  Eigen::MatrixXd w(n, p);
  w.col(0).setOnes();
  int c = 1;
  for (int j = 0; j < model.k_max(); ++j)
    if (theta & (1u << j)) w.col(c++) = model.X.col(j);

  const Eigen::VectorXd m = Eigen::VectorXd::Constant(p, model.prior_mean);
  const double v = model.prior_scale;

  // V* = (V^{-1} + W'W)^{-1}, m* = V*(V^{-1} m + W'y)
  Eigen::MatrixXd vstar_inv = w.transpose() * w;
  vstar_inv.diagonal().array() += 1.0 / v;
  const Eigen::LLT<Eigen::MatrixXd> llt(vstar_inv);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("marginal_log_likelihood: singular posterior scale");
  const Eigen::VectorXd rhs = m / v + w.transpose() * model.y;
  const Eigen::VectorXd mstar = llt.solve(rhs);

  const double log_det_vstar =
      -2.0 * Eigen::MatrixXd(llt.matrixL()).diagonal().array().log().sum();
  const double log_det_v = p * std::log(v);

  const double astar = model.a + 0.5 * n;
  const double bstar = model.b + 0.5 * (model.y.squaredNorm() +
                                        m.squaredNorm() / v - mstar.dot(rhs));
  if (!(bstar > 0.0))
    throw std::runtime_error("marginal_log_likelihood: non-positive posterior rate");

  return -0.5 * n * std::log(2.0 * M_PI) + 0.5 * (log_det_vstar - log_det_v) +
         model.a * std::log(model.b) - astar * std::log(bstar) +
         std::lgamma(astar) - std::lgamma(model.a);
}

double varsel_log_prior(std::uint32_t theta, int k_max) {
  const int k = std::popcount(theta);
  if (k > k_max) throw std::invalid_argument("varsel_log_prior: too many bits");
  return -std::log(k_max + 1.0) - log_choose(k_max, k);
}

Eigen::VectorXd exact_posterior(const VarselModel& model, double zeta) {
  if (zeta < 0.0 || zeta > 1.0)
    throw std::invalid_argument("exact_posterior: zeta must lie in [0,1]");
  if (model.k_max() > 20)
    throw std::invalid_argument("exact_posterior: k_max too large to enumerate");
  const int S = 1 << model.k_max();
  Eigen::VectorXd logp(S);
  for (int s = 0; s < S; ++s)
    logp(s) = zeta * marginal_log_likelihood(model, s) +
              varsel_log_prior(s, model.k_max());
  const double shift = logp.maxCoeff();
  Eigen::VectorXd p = (logp.array() - shift).exp();
  return p / p.sum();
}

VarselModel varsel_fixture(std::uint64_t seed) {
  // Multicollinear design: x_8 completes the sum of the first seven noisy
  // columns to the signal, so only the saturated model recovers it while each
  // proper subset carries large leftover variance. The constants put roughly
  // 0.58 posterior mass on the null model and 0.41 on the saturated one.
  const int n = 100, kmax = 8;
  RngStream rng(seed, 0);
  VarselModel m;
  m.X.resize(n, kmax);
  m.y.resize(n);
  const double tau = 3.0;      // spread of the first seven columns
  const double signal = 1.04;  // coefficient on the completed sum
  const double noise = 1.0;
  for (int i = 0; i < n; ++i) {
    double partial = 0.0;
    for (int j = 0; j < kmax - 1; ++j) {
      m.X(i, j) = tau * rng.normal();
      partial += m.X(i, j);
    }
    const double s = rng.normal();
    m.X(i, kmax - 1) = s - partial;
    m.y(i) = signal * s + noise * rng.normal();
  }
  m.validate();
  return m;
}

VarselModel varsel_fixture_mild(std::uint64_t seed) {
  const int n = 100, kmax = 8;
  RngStream rng(seed, 0);
  VarselModel m;
  m.X.resize(n, kmax);
  m.y.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < kmax; ++j) m.X(i, j) = rng.normal();
    m.y(i) = 0.35 * m.X(i, 0) + 0.3 * m.X(i, 1) + rng.normal();
  }
  m.validate();
  return m;
}

}  // namespace popmcmc::finite
