#include "popmcmc/mixture_model.hpp"

#include <cmath>
#include <stdexcept>

#include "popmcmc/distributions.hpp"
#include "popmcmc/numerics.hpp"

namespace popmcmc::mix {

Dataset::Dataset(Eigen::MatrixXd pts) : points(std::move(pts)) {
  if (points.rows() < 1 || points.cols() < 1)
    throw std::invalid_argument("Dataset: need at least one point and one dimension");
  if (!points.allFinite())
    throw std::invalid_argument("Dataset: entries must be finite");
  ranges = points.colwise().maxCoeff() - points.colwise().minCoeff();
}

void Hyperparams::validate() const {
  if (xi.size() < 1 || kappa_diag.size() != xi.size() || h_diag.size() != xi.size())
    throw std::invalid_argument("Hyperparams: inconsistent dimensions");
  if (!(g > 0.0) || !(delta > 0.0) || !(dof > 0.0) || k_max < 1)
    throw std::invalid_argument("Hyperparams: g, delta, dof must be > 0 and k_max >= 1");
  if ((kappa_diag.array() <= 0.0).any() || (h_diag.array() <= 0.0).any())
    throw std::invalid_argument("Hyperparams: kappa and h must be positive");
  if (std::abs(alpha - (alpha_prime + 0.5 * (q() + 1))) > 1e-9)
    throw std::invalid_argument("Hyperparams: alpha must equal alpha' + (q+1)/2");
}

void MixtureState::validate(int k_max) const {
  const int kk = k();
  if (kk < 1 || kk > k_max)
    throw std::invalid_argument("MixtureState: k out of range");
  if (static_cast<int>(means.size()) != kk || static_cast<int>(chols.size()) != kk)
    throw std::invalid_argument("MixtureState: component count mismatch");
  if (std::abs(weights.sum() - 1.0) > 1e-12)
    throw std::invalid_argument("MixtureState: weights must sum to 1");
  if ((weights.array() < 0.0).any())
    throw std::invalid_argument("MixtureState: weights must be non-negative");
  const int d = q();
  for (int j = 0; j < kk; ++j) {
    if (means[j].size() != d || chols[j].dim() != d)
      throw std::invalid_argument("MixtureState: component dimension mismatch");
  }
  chol_factor(psi);  // throws if Psi is not SPD
}

Hyperparams default_hyperparams(const Dataset& data) {
  if ((data.ranges.array() <= 0.0).any())
    throw std::invalid_argument("default_hyperparams: zero range in some dimension");
  const int q = data.q();
  Hyperparams h;
  h.xi = 0.5 * (data.points.colwise().maxCoeff() + data.points.colwise().minCoeff());
  h.kappa_diag = data.ranges.array().square().inverse();
  h.g = 0.5 * q;
  h.delta = 1.0;
  h.alpha_prime = 3.0;
  h.alpha = h.alpha_prime + 0.5 * (q + 1);
  h.h_diag = (100.0 * q) / (2.0 * h.alpha * data.ranges.array().square());
  h.dof = 4.0;
  h.k_max = 20;
  h.validate();
  return h;
}

Eigen::VectorXd component_log_density(const Dataset& data,
                                      const Eigen::VectorXd& mu,
                                      const SpdChol& chol, double dof) {
  const int r = data.q();
  if (mu.size() != r || chol.dim() != r)
    throw std::invalid_argument("component_log_density: dimension mismatch");
  // Solve Phi Z = (Y - mu)' for all points at once.
  Eigen::MatrixXd centered = data.points.transpose().colwise() - mu;  // q x n
  chol.lower().triangularView<Eigen::Lower>().solveInPlace(centered);
  const Eigen::ArrayXd m2 = centered.colwise().squaredNorm().transpose().array();
  const double c = std::lgamma(0.5 * (dof + r)) - std::lgamma(0.5 * dof) -
                   0.5 * r * std::log(dof * M_PI) - 0.5 * chol.log_det();
  return (c - 0.5 * (dof + r) * (m2 / dof).log1p()).matrix();
}

double log_likelihood(const Dataset& data, const MixtureState& s,
                      const Hyperparams& h) {
  if (data.q() != s.q())
    throw std::invalid_argument("log_likelihood: data/state dimension mismatch");
  const int n = data.n(), k = s.k();
  Eigen::MatrixXd lw(n, k);
  for (int j = 0; j < k; ++j) {
    const double lwj = std::log(s.weights(j));
    lw.col(j) = component_log_density(data, s.means[j], s.chols[j], h.dof).array() + lwj;
  }
  double total = 0.0;
  for (int i = 0; i < n; ++i) total += log_sum_exp(lw.row(i));
  return total;
}

double log_prior_mean(const Eigen::VectorXd& mu, const Hyperparams& h) {
  const SpdChol kappa_inv_chol(
      Eigen::MatrixXd(h.kappa_diag.array().inverse().sqrt().matrix().asDiagonal()));
  return log_pdf(dist::MvNormal{h.xi, kappa_inv_chol}, mu);
}

double log_prior_lambda(const SpdChol& chol, const Eigen::MatrixXd& psi,
                        const Hyperparams& h) {
  const int q = chol.dim();
  const double m = 2.0 * h.alpha;
  const double nw = m - q - 1;  // = 2 alpha'
  const SpdChol psi_chol = chol_factor(psi);
  const double log_det_2psi = q * std::log(2.0) + psi_chol.log_det();
  const double tr = (2.0 * psi).cwiseProduct(chol.inverse()).sum();
  return 0.5 * nw * log_det_2psi - 0.5 * nw * q * std::log(2.0) -
         log_mv_gamma(q, 0.5 * nw) - 0.5 * m * chol.log_det() - 0.5 * tr;
}

double log_prior(const MixtureState& s, const Hyperparams& h) {
  const int k = s.k();
  double acc = 0.0;
  for (int j = 0; j < k; ++j) {
    acc += log_prior_mean(s.means[j], h);
    acc += log_prior_lambda(s.chols[j], s.psi, h);
  }

  acc += log_pdf(dist::Wishart{2.0 * h.g,
                               Eigen::MatrixXd((0.5 * h.h_diag.array().inverse())
                                                   .matrix()
                                                   .asDiagonal())},
                 s.psi);
  acc += log_pdf(dist::SymDirichlet{k, h.delta}, s.weights);
  acc += -std::log(static_cast<double>(h.k_max));
  return acc;
}

double tempered_log_target(const Dataset& data, const MixtureState& s,
                           const Hyperparams& h, double zeta,
                           bool allow_prior_only) {
  if (zeta == 0.0 && allow_prior_only) return log_prior(s, h);
  if (!(zeta > 0.0) || zeta > 1.0)
    throw std::invalid_argument("tempered_log_target: zeta must be in (0,1]");
  return zeta * log_likelihood(data, s, h) + log_prior(s, h);
}

MixtureState sample_prior(const Hyperparams& h, RngStream& rng, int k_lo,
                          int k_hi) {
  if (k_lo < 1 || k_hi > h.k_max || k_lo > k_hi)
    throw std::invalid_argument("sample_prior: invalid k range");
  MixtureState s;
  s.psi = sample(dist::Wishart{2.0 * h.g,
                               Eigen::MatrixXd((0.5 * h.h_diag.array().inverse())
                                                   .matrix()
                                                   .asDiagonal())},
                 rng);
  const int k = k_lo + rng.uniform_int(k_hi - k_lo + 1);
  s.weights = sample(dist::SymDirichlet{k, h.delta}, rng);
  const SpdChol kappa_inv_chol(
      Eigen::MatrixXd(h.kappa_diag.array().inverse().sqrt().matrix().asDiagonal()));
  for (int j = 0; j < k; ++j) {
    s.means.push_back(sample(dist::MvNormal{h.xi, kappa_inv_chol}, rng));
    const Eigen::MatrixXd lam =
        sample(dist::InvWishart{2.0 * h.alpha, 2.0 * s.psi}, rng);
    s.chols.push_back(chol_factor(lam));
  }
  return s;
}

}  // namespace popmcmc::mix
