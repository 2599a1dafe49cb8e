#include "popmcmc/distributions.hpp"

#include <cmath>

#include "popmcmc/numerics.hpp"

namespace popmcmc::dist {

namespace {

constexpr double half_log_2pi = 0.91893853320467274178;

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// (e-1)*log(x) with the 0*log(0) = 0 convention when e == 1
double pow_log_term(double e, double x) {
  if (e == 1.0) return 0.0;
  return (e - 1.0) * std::log(x);
}

}  // namespace

void validate(const DistSpec& d) {
  std::visit(
      [](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Normal>) {
          require(b.sigma > 0.0, "Normal: sigma must be > 0");
        } else if constexpr (std::is_same_v<T, LogNormal>) {
          require(b.sigma > 0.0, "LogNormal: sigma must be > 0");
        } else if constexpr (std::is_same_v<T, Cauchy>) {
          require(b.scale > 0.0, "Cauchy: scale must be > 0");
        } else if constexpr (std::is_same_v<T, Beta>) {
          require(b.a > 0.0 && b.b > 0.0, "Beta: shapes must be > 0");
        } else if constexpr (std::is_same_v<T, InvGamma>) {
          require(b.a > 0.0 && b.b > 0.0, "InvGamma: parameters must be > 0");
        } else if constexpr (std::is_same_v<T, SymDirichlet>) {
          require(b.k >= 1 && b.delta > 0.0, "SymDirichlet: need k >= 1, delta > 0");
        } else if constexpr (std::is_same_v<T, MvNormal>) {
          require(b.mu.size() == b.cov_chol.dim(), "MvNormal: dimension mismatch");
        } else if constexpr (std::is_same_v<T, MvStudentT>) {
          require(b.mu.size() == b.scale_chol.dim(), "MvStudentT: dimension mismatch");
          require(b.dof > 0.0, "MvStudentT: dof must be > 0");
        } else if constexpr (std::is_same_v<T, Wishart>) {
          const int q = static_cast<int>(b.scale.rows());
          require(b.scale.rows() == b.scale.cols(), "Wishart: scale must be square");
          require(b.dof > q - 1, "Wishart: dof must exceed dim - 1");
        } else if constexpr (std::is_same_v<T, InvWishart>) {
          const int q = static_cast<int>(b.scale.rows());
          require(b.scale.rows() == b.scale.cols(), "InvWishart: scale must be square");
          require(b.dof > 2 * q, "InvWishart: dof must exceed 2 dim for a proper density");
        }
      },
      d);
}

double log_pdf(const Normal& d, double x) {
  require(d.sigma > 0.0, "Normal: sigma must be > 0");
  const double z = (x - d.mu) / d.sigma;
  return -half_log_2pi - std::log(d.sigma) - 0.5 * z * z;
}

double log_pdf(const LogNormal& d, double x) {
  require(d.sigma > 0.0, "LogNormal: sigma must be > 0");
  if (!(x > 0.0)) return neg_inf;
  const double z = (std::log(x) - d.mu) / d.sigma;
  return -half_log_2pi - std::log(d.sigma) - std::log(x) - 0.5 * z * z;
}

double log_pdf(const Cauchy& d, double x) {
  require(d.scale > 0.0, "Cauchy: scale must be > 0");
  const double z = (x - d.loc) / d.scale;
  return -std::log(M_PI * d.scale * (1.0 + z * z));
}

double log_pdf(const Beta& d, double x) {
  require(d.a > 0.0 && d.b > 0.0, "Beta: shapes must be > 0");
  if (x < 0.0 || x > 1.0) return neg_inf;
  return -log_beta(d.a, d.b) + pow_log_term(d.a, x) + pow_log_term(d.b, 1.0 - x);
}

double log_pdf(const InvGamma& d, double x) {
  require(d.a > 0.0 && d.b > 0.0, "InvGamma: parameters must be > 0");
  if (!(x > 0.0)) return neg_inf;
  return d.a * std::log(d.b) - std::lgamma(d.a) - (d.a + 1.0) * std::log(x) -
         d.b / x;
}

double log_pdf(const SymDirichlet& d, const Eigen::VectorXd& w) {
  require(d.k >= 1 && d.delta > 0.0, "SymDirichlet: need k >= 1, delta > 0");
  if (w.size() != d.k) throw std::invalid_argument("SymDirichlet: wrong length");
  if (std::abs(w.sum() - 1.0) > 1e-9) return neg_inf;
  double acc = std::lgamma(d.k * d.delta) - d.k * std::lgamma(d.delta);
  for (Eigen::Index j = 0; j < w.size(); ++j) {
    if (w(j) < 0.0) return neg_inf;
    if (d.delta != 1.0) {
      if (w(j) == 0.0) return neg_inf;
      acc += (d.delta - 1.0) * std::log(w(j));
    }
  }
  return acc;
}

double log_pdf(const MvNormal& d, const Eigen::VectorXd& x) {
  const int r = d.cov_chol.dim();
  if (x.size() != r || d.mu.size() != r)
    throw std::invalid_argument("MvNormal: dimension mismatch");
  const double m2 = mahalanobis_sq(x, d.mu, d.cov_chol);
  return -r * half_log_2pi - 0.5 * d.cov_chol.log_det() - 0.5 * m2;
}

double log_pdf(const MvStudentT& d, const Eigen::VectorXd& x) {
  const int r = d.scale_chol.dim();
  if (x.size() != r || d.mu.size() != r)
    throw std::invalid_argument("MvStudentT: dimension mismatch");
  require(d.dof > 0.0, "MvStudentT: dof must be > 0");
  const double s = d.dof;
  const double m2 = mahalanobis_sq(x, d.mu, d.scale_chol);
  return std::lgamma(0.5 * (s + r)) - std::lgamma(0.5 * s) -
         0.5 * r * std::log(s * M_PI) - 0.5 * d.scale_chol.log_det() -
         0.5 * (s + r) * std::log1p(m2 / s);
}

double log_pdf(const Wishart& d, const Eigen::MatrixXd& x) {
  const int q = static_cast<int>(d.scale.rows());
  if (x.rows() != q || x.cols() != q)
    throw std::invalid_argument("Wishart: dimension mismatch");
  require(d.dof > q - 1, "Wishart: dof must exceed dim - 1");
  SpdChol cx = SpdChol::identity(q), cv = SpdChol::identity(q);
  try {
    cx = chol_factor(0.5 * (x + x.transpose()));
    cv = chol_factor(d.scale);
  } catch (const NotPositiveDefinite&) {
    return neg_inf;
  }
  const double n = d.dof;
  const double tr = cv.inverse().cwiseProduct(x).sum();
  return 0.5 * (n - q - 1) * cx.log_det() - 0.5 * tr -
         0.5 * n * q * std::log(2.0) - 0.5 * n * cv.log_det() -
         log_mv_gamma(q, 0.5 * n);
}

double log_pdf(const InvWishart& d, const Eigen::MatrixXd& x) {
  const int q = static_cast<int>(d.scale.rows());
  if (x.rows() != q || x.cols() != q)
    throw std::invalid_argument("InvWishart: dimension mismatch");
  require(d.dof > 2 * q, "InvWishart: dof must exceed 2 dim");
  SpdChol cx = SpdChol::identity(q), cs = SpdChol::identity(q);
  try {
    cx = chol_factor(0.5 * (x + x.transpose()));
    cs = chol_factor(d.scale);
  } catch (const NotPositiveDefinite&) {
    return neg_inf;
  }
  const double m = d.dof;
  const double n = m - q - 1;  // dof of X^{-1} as a Wishart
  const double tr = d.scale.cwiseProduct(cx.inverse()).sum();
  return 0.5 * n * cs.log_det() - 0.5 * m * cx.log_det() - 0.5 * tr -
         0.5 * n * q * std::log(2.0) - log_mv_gamma(q, 0.5 * n);
}

double log_pdf(const DistSpec& d, const Point& x) {
  return std::visit(
      [&](const auto& b) -> double {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Normal> || std::is_same_v<T, LogNormal> ||
                      std::is_same_v<T, Cauchy> || std::is_same_v<T, Beta> ||
                      std::is_same_v<T, InvGamma>) {
          if (!std::holds_alternative<double>(x))
            throw std::invalid_argument("log_pdf: expected a scalar point");
          return log_pdf(b, std::get<double>(x));
        } else if constexpr (std::is_same_v<T, SymDirichlet> ||
                             std::is_same_v<T, MvNormal> ||
                             std::is_same_v<T, MvStudentT>) {
          if (!std::holds_alternative<Eigen::VectorXd>(x))
            throw std::invalid_argument("log_pdf: expected a vector point");
          return log_pdf(b, std::get<Eigen::VectorXd>(x));
        } else {
          if (!std::holds_alternative<Eigen::MatrixXd>(x))
            throw std::invalid_argument("log_pdf: expected a matrix point");
          return log_pdf(b, std::get<Eigen::MatrixXd>(x));
        }
      },
      d);
}

double sample(const Normal& d, RngStream& rng) {
  require(d.sigma > 0.0, "Normal: sigma must be > 0");
  return rng.normal(d.mu, d.sigma);
}

double sample(const LogNormal& d, RngStream& rng) {
  require(d.sigma > 0.0, "LogNormal: sigma must be > 0");
  return rng.log_normal(d.mu, d.sigma);
}

double sample(const Cauchy& d, RngStream& rng) {
  require(d.scale > 0.0, "Cauchy: scale must be > 0");
  return rng.cauchy(d.loc, d.scale);
}

double sample(const Beta& d, RngStream& rng) {
  require(d.a > 0.0 && d.b > 0.0, "Beta: shapes must be > 0");
  return rng.beta(d.a, d.b);
}

double sample(const InvGamma& d, RngStream& rng) {
  require(d.a > 0.0 && d.b > 0.0, "InvGamma: parameters must be > 0");
  return d.b / rng.gamma(d.a);
}

Eigen::VectorXd sample(const SymDirichlet& d, RngStream& rng) {
  require(d.k >= 1 && d.delta > 0.0, "SymDirichlet: need k >= 1, delta > 0");
  Eigen::VectorXd w(d.k);
  for (int j = 0; j < d.k; ++j) w(j) = rng.gamma(d.delta);
  return w / w.sum();
}

Eigen::VectorXd sample(const MvNormal& d, RngStream& rng) {
  require(d.mu.size() == d.cov_chol.dim(), "MvNormal: dimension mismatch");
  return d.mu + d.cov_chol.lower() * rng.normal_vec(d.cov_chol.dim());
}

Eigen::VectorXd sample(const MvStudentT& d, RngStream& rng) {
  require(d.mu.size() == d.scale_chol.dim(), "MvStudentT: dimension mismatch");
  require(d.dof > 0.0, "MvStudentT: dof must be > 0");
  const double g = rng.chi_squared(d.dof);
  return d.mu + std::sqrt(d.dof / g) * (d.scale_chol.lower() *
                                        rng.normal_vec(d.scale_chol.dim()));
}

Eigen::MatrixXd sample(const Wishart& d, RngStream& rng) {
  const int q = static_cast<int>(d.scale.rows());
  require(d.dof > q - 1, "Wishart: dof must exceed dim - 1");
  const SpdChol L = chol_factor(d.scale);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(q, q);
  for (int i = 0; i < q; ++i) {
    A(i, i) = std::sqrt(rng.chi_squared(d.dof - i));
    for (int j = 0; j < i; ++j) A(i, j) = rng.normal();
  }
  const Eigen::MatrixXd LA = L.lower() * A;
  return LA * LA.transpose();
}

Eigen::MatrixXd sample(const InvWishart& d, RngStream& rng) {
  const int q = static_cast<int>(d.scale.rows());
  require(d.dof > 2 * q, "InvWishart: dof must exceed 2 dim");
  const SpdChol cs = chol_factor(d.scale);
  const Eigen::MatrixXd w =
      sample(Wishart{d.dof - q - 1, cs.inverse()}, rng);
  const Eigen::MatrixXd inv = chol_factor(w).inverse();
  return 0.5 * (inv + inv.transpose());
}

Point sample(const DistSpec& d, RngStream& rng) {
  return std::visit(
      [&](const auto& b) -> Point { return sample(b, rng); }, d);
}

}  // namespace popmcmc::dist
