#include "popmcmc/finite_kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "popmcmc/numerics.hpp"

namespace popmcmc::finite {

void FiniteKernel::validate(double tol) const {
  if (P.rows() != P.cols() || P.rows() < 1)
    throw std::invalid_argument("FiniteKernel: matrix must be square");
  if ((P.array() < -tol).any())
    throw std::invalid_argument("FiniteKernel: negative entry");
  for (int i = 0; i < P.rows(); ++i)
    if (std::abs(P.row(i).sum() - 1.0) > tol)
      throw std::invalid_argument("FiniteKernel: row does not sum to 1");
}

FiniteKernel FiniteKernel::power(int n) const {
  if (n < 0) throw std::invalid_argument("FiniteKernel::power: n must be >= 0");
  FiniteKernel out{Eigen::MatrixXd::Identity(P.rows(), P.cols())};
  Eigen::MatrixXd base = P;
  int e = n;
  while (e > 0) {
    if (e & 1) out.P = out.P * base;
    base = base * base;
    e >>= 1;
  }
  return out;
}

Eigen::VectorXd FiniteKernel::stationary() const {
  // solve pi' P = pi' with the normalization replacing one equation
  const int s = states();
  Eigen::MatrixXd a = P.transpose() - Eigen::MatrixXd::Identity(s, s);
  a.row(0).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(s);
  rhs(0) = 1.0;
  return a.fullPivLu().solve(rhs);
}

FiniteKernel build_flip_kernel(const VarselModel& model, double zeta) {
  if (!(zeta > 0.0) || zeta > 1.0)
    throw std::invalid_argument("build_flip_kernel: zeta must lie in (0,1]");
  const int kmax = model.k_max();
  const int S = 1 << kmax;
  Eigen::VectorXd logpost(S);
  for (int s = 0; s < S; ++s)
    logpost(s) =
        zeta * marginal_log_likelihood(model, s) + varsel_log_prior(s, kmax);

  FiniteKernel k{Eigen::MatrixXd::Zero(S, S)};
  for (int s = 0; s < S; ++s) {
    double stay = 1.0;
    for (int j = 0; j < kmax; ++j) {
      const int t = s ^ (1 << j);
      const double acc = std::min(1.0, std::exp(logpost(t) - logpost(s)));
      k.P(s, t) = acc / kmax;
      stay -= acc / kmax;
    }
    k.P(s, s) = stay;
  }
  return k;
}

Eigen::VectorXd simulate_flip_chain(const VarselModel& model, double zeta,
                                    int sweeps, RngStream& rng) {
  const int kmax = model.k_max();
  const int S = 1 << kmax;
  Eigen::VectorXd logpost(S);
  for (int s = 0; s < S; ++s)
    logpost(s) =
        zeta * marginal_log_likelihood(model, s) + varsel_log_prior(s, kmax);

  Eigen::VectorXd counts = Eigen::VectorXd::Zero(S);
  std::uint32_t state = rng.uniform_int(S);
  for (int t = 0; t < sweeps; ++t) {
    for (int f = 0; f < kmax; ++f) {
      const int j = rng.uniform_int(kmax);
      const std::uint32_t prop = state ^ (1u << j);
      if (std::log(rng.uniform()) < logpost(prop) - logpost(state)) state = prop;
    }
    counts(state) += 1.0;
  }
  return counts / counts.sum();
}

MinorizationPair minorization_pair(const FiniteKernel& k, int n) {
  if (n < 1) throw std::invalid_argument("minorization_pair: n must be >= 1");
  const Eigen::MatrixXd m = k.power(n).P;
  const Eigen::VectorXd colmin = m.colwise().minCoeff();
  MinorizationPair pair;
  pair.n0 = n;
  pair.epsilon = colmin.sum();
  pair.nu = pair.epsilon > 0.0
                ? Eigen::VectorXd(colmin / pair.epsilon)
                : Eigen::VectorXd::Zero(m.cols());
  // re-verify the certificate elementwise
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) < pair.epsilon * pair.nu(j) - 1e-12)
        throw std::runtime_error("minorization_pair: certificate failed");
  return pair;
}

PopulationConstant population_minorization_constant(const MinorizationPair& pair,
                                                    const Eigen::VectorXd& pi1,
                                                    const Eigen::VectorXd& pi2) {
  if (pi1.size() != pi2.size() || pi1.size() != pair.nu.size())
    throw std::invalid_argument("population_minorization_constant: size mismatch");
  PopulationConstant out;
  out.rho1 = 0.0;
  for (int i = 0; i < pi1.size(); ++i) {
    if (pi2(i) <= 0.0) {
      if (pi1(i) > 0.0)
        throw std::invalid_argument(
            "population_minorization_constant: support mismatch");
      continue;
    }
    out.rho1 = std::max(out.rho1, pi1(i) / pi2(i));
  }
  out.phi = 0.0;
  for (int i = 0; i < pi1.size(); ++i) {
    if (pi2(i) <= 0.0) continue;
    out.phi += pair.nu(i) * std::min(1.0, pi1(i) / (pi2(i) * out.rho1));
  }
  out.epsilon_star = pair.epsilon * pair.epsilon * out.phi;
  return out;
}

long tv_bound_iterations(int n0, double epsilon, double delta) {
  if (n0 < 1) throw std::invalid_argument("tv_bound_iterations: n0 must be >= 1");
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw std::invalid_argument("tv_bound_iterations: epsilon must be in (0,1)");
  if (!(delta > 0.0) || !(delta < 1.0))
    throw std::invalid_argument("tv_bound_iterations: delta must be in (0,1)");
  return static_cast<long>(
      std::floor(n0 * std::log(delta) / std::log1p(-epsilon)));
}

FiniteKernel build_population_pair_kernel(const FiniteKernel& k1,
                                          const FiniteKernel& k2,
                                          const Eigen::VectorXd& pi1,
                                          const Eigen::VectorXd& pi2,
                                          int sweeps_each) {
  const int s = k1.states();
  if (k2.states() != s || pi1.size() != s || pi2.size() != s)
    throw std::invalid_argument("build_population_pair_kernel: size mismatch");
  const long entries = static_cast<long>(s) * s * s * s;
  if (entries > 1000000)
    throw std::invalid_argument(
        "build_population_pair_kernel: product space exceeds the entry guard");
  if (sweeps_each < 0)
    throw std::invalid_argument("build_population_pair_kernel: negative sweeps");

  const Eigen::MatrixXd a1 = k1.power(sweeps_each).P;
  const Eigen::MatrixXd a2 = k2.power(sweeps_each).P;

  // A = a1 (x) a2 on the product space, index = i * s + j
  Eigen::MatrixXd block(s * s, s * s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j)
      block.block(i * s, j * s, s, s) = a1(i, j) * a2;

  // exchange: swap (i, j) -> (j, i) with the product-target acceptance
  Eigen::MatrixXd ex = Eigen::MatrixXd::Zero(s * s, s * s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      const int from = i * s + j, to = j * s + i;
      double rho = 1.0;
      const double num = pi1(j) * pi2(i), den = pi1(i) * pi2(j);
      if (den > 0.0) rho = std::min(1.0, num / den);
      ex(from, to) += rho;
      ex(from, from) += 1.0 - rho;
    }

  FiniteKernel out{block * ex * block};
  out.validate(1e-9);
  return out;
}

double dobrushin(const FiniteKernel& k) {
  double beta = 0.0;
  for (int i = 0; i < k.states(); ++i)
    for (int j = i + 1; j < k.states(); ++j)
      beta = std::max(beta, 0.5 * (k.P.row(i) - k.P.row(j)).cwiseAbs().sum());
  return beta;
}

double mixing_condition_eps(const FiniteKernel& k) {
  double eps = 1.0;
  for (int x = 0; x < k.states(); ++x)
    for (int y = 0; y < k.states(); ++y) {
      if (x == y) continue;
      for (int z = 0; z < k.states(); ++z) {
        if (k.P(y, z) > 0.0)
          eps = std::min(eps, k.P(x, z) / k.P(y, z));
        if (eps == 0.0) return 0.0;
      }
    }
  return eps;
}

double tv_distance(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  return 0.5 * (p - q).cwiseAbs().sum();
}

Prop1Report prop1_verify(const FiniteKernel& k_m, const Eigen::VectorXd& pi1,
                         const Eigen::VectorXd& pi2, const Eigen::VectorXd& eta,
                         int n_max) {
  const int ss = k_m.states();
  const int s = static_cast<int>(pi1.size());
  if (s * s != ss || eta.size() != ss)
    throw std::invalid_argument("prop1_verify: K_M must act on the product space");

  Prop1Report rep;
  rep.eps_mixing = mixing_condition_eps(k_m);
  if (rep.eps_mixing <= 0.0)
    throw std::invalid_argument("prop1_verify: mixing condition (M) not met");

  // alpha = 1 - min over product states of the exchange acceptance (single
  // pair, weight 1)
  double min_rho = 1.0;
  Eigen::MatrixXd ex = Eigen::MatrixXd::Zero(ss, ss);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      const int from = i * s + j, to = j * s + i;
      const double num = pi1(j) * pi2(i), den = pi1(i) * pi2(j);
      const double rho = den > 0.0 ? std::min(1.0, num / den) : 1.0;
      min_rho = std::min(min_rho, rho);
      ex(from, to) += rho;
      ex(from, from) += 1.0 - rho;
    }
  rep.alpha = 1.0 - min_rho;
  rep.factor = 2.0 * (1.0 - rep.alpha) * (1.0 - rep.eps_mixing);

  Eigen::VectorXd pistar(ss);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) pistar(i * s + j) = pi1(i) * pi2(j);
  pistar /= pistar.sum();

  const Eigen::MatrixXd step = k_m.P * ex;
  Eigen::RowVectorXd dist = eta.transpose();
  const double tv0 = tv_distance(eta, pistar);
  rep.worst_ratio = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    dist = dist * step;
    const double tv = tv_distance(dist.transpose(), pistar);
    const double bound = std::pow(rep.factor, n) * tv0;
    rep.tv.push_back(tv);
    rep.bound.push_back(bound);
    if (tv > bound + 1e-12) ++rep.violations;
    // the ratio is only informative while the bound sits above round-off
    if (bound > 1e-10) rep.worst_ratio = std::max(rep.worst_ratio, tv / bound);
  }
  return rep;
}

Eigen::VectorXd theorem1_nu_star(const FiniteKernel& k1_block,
                                 const MinorizationPair& pair,
                                 const Eigen::VectorXd& pi1,
                                 const Eigen::VectorXd& pi2) {
  const int s = k1_block.states();
  if (pair.nu.size() != s || pi1.size() != s || pi2.size() != s)
    throw std::invalid_argument("theorem1_nu_star: size mismatch");
  double rho1 = 0.0;
  for (int i = 0; i < s; ++i)
    if (pi2(i) > 0.0) rho1 = std::max(rho1, pi1(i) / pi2(i));

  Eigen::VectorXd kstar = Eigen::VectorXd::Zero(s);
  double phi = 0.0;
  for (int x = 0; x < s; ++x) {
    if (pi2(x) <= 0.0) continue;
    const double w = pair.nu(x) * std::min(1.0, pi1(x) / (pi2(x) * rho1));
    phi += w;
    kstar += w * k1_block.P.row(x).transpose();
  }
  kstar /= phi;

  Eigen::VectorXd nu_star(s * s);
  for (int a1 = 0; a1 < s; ++a1)
    for (int a2 = 0; a2 < s; ++a2) nu_star(a1 * s + a2) = kstar(a1) * pair.nu(a2);
  return nu_star;
}

Theorem1Report theorem1_verify(const FiniteKernel& k_pop, double theta,
                               const Eigen::VectorXd& nu_star, double tol) {
  if (nu_star.size() != k_pop.states())
    throw std::invalid_argument("theorem1_verify: size mismatch");
  Theorem1Report rep;
  rep.min_slack = std::numeric_limits<double>::infinity();
  for (int x = 0; x < k_pop.states(); ++x)
    for (int a = 0; a < k_pop.states(); ++a) {
      const double slack = k_pop.P(x, a) - theta * nu_star(a);
      if (slack < rep.min_slack) {
        rep.min_slack = slack;
        rep.argmin_state = x;
        rep.argmin_target = a;
      }
      if (slack < -tol) ++rep.violations;
    }
  return rep;
}

}  // namespace popmcmc::finite
