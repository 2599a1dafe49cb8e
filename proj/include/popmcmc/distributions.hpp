#ifndef POPMCMC_DISTRIBUTIONS_HPP
#define POPMCMC_DISTRIBUTIONS_HPP

#include <stdexcept>
#include <variant>

#include <Eigen/Dense>

#include "popmcmc/rng.hpp"
#include "popmcmc/spd_chol.hpp"

namespace popmcmc::dist {

// Scalar families -----------------------------------------------------------

struct Normal {
  double mu, sigma;
};
struct LogNormal {
  double mu, sigma;  // location/scale of log x
};
struct Cauchy {
  double loc, scale;
};
struct Beta {
  double a, b;
};
struct InvGamma {
  double a, b;  // density b^a/Gamma(a) x^{-a-1} e^{-b/x}
};

// Vector / matrix families ---------------------------------------------------

struct SymDirichlet {
  int k;
  double delta;
};
struct MvNormal {
  Eigen::VectorXd mu;
  SpdChol cov_chol;  // factor of the covariance
};
struct MvStudentT {
  Eigen::VectorXd mu;
  SpdChol scale_chol;  // factor of the scale matrix Lambda
  double dof;
};
// Wishart(n, V): E[X] = n V, defined for n > q - 1.
struct Wishart {
  double dof;
  Eigen::MatrixXd scale;
};
// Inverse Wishart in the convention used throughout this code base:
// X ~ InvWishart(m, S)  <=>  X^{-1} ~ Wishart(m - q - 1, S^{-1}),
// density  |S|^{(m-q-1)/2} |X|^{-m/2} exp(-tr(S X^{-1})/2) / normalizer,
// proper for m > 2q, with E[X] = S / (m - 2q - 2) when m > 2q + 2.
struct InvWishart {
  double dof;
  Eigen::MatrixXd scale;
};

using DistSpec = std::variant<Normal, LogNormal, Cauchy, Beta, InvGamma,
                              SymDirichlet, MvNormal, MvStudentT, Wishart,
                              InvWishart>;

// A point in the support of some DistSpec branch.
using Point = std::variant<double, Eigen::VectorXd, Eigen::MatrixXd>;

// Throws std::invalid_argument when the parameters are invalid.
void validate(const DistSpec& d);

// Natural-log density; points outside the support evaluate to -inf rather
// than throwing. Shape mismatches and invalid parameters throw.
double log_pdf(const DistSpec& d, const Point& x);

// Typed evaluations used on hot paths.
double log_pdf(const Normal& d, double x);
double log_pdf(const LogNormal& d, double x);
double log_pdf(const Cauchy& d, double x);
double log_pdf(const Beta& d, double x);
double log_pdf(const InvGamma& d, double x);
double log_pdf(const SymDirichlet& d, const Eigen::VectorXd& w);
double log_pdf(const MvNormal& d, const Eigen::VectorXd& x);
double log_pdf(const MvStudentT& d, const Eigen::VectorXd& x);
double log_pdf(const Wishart& d, const Eigen::MatrixXd& x);
double log_pdf(const InvWishart& d, const Eigen::MatrixXd& x);

Point sample(const DistSpec& d, RngStream& rng);

double sample(const Normal& d, RngStream& rng);
double sample(const LogNormal& d, RngStream& rng);
double sample(const Cauchy& d, RngStream& rng);
double sample(const Beta& d, RngStream& rng);
double sample(const InvGamma& d, RngStream& rng);
Eigen::VectorXd sample(const SymDirichlet& d, RngStream& rng);
Eigen::VectorXd sample(const MvNormal& d, RngStream& rng);
Eigen::VectorXd sample(const MvStudentT& d, RngStream& rng);
// Bartlett decomposition
Eigen::MatrixXd sample(const Wishart& d, RngStream& rng);
Eigen::MatrixXd sample(const InvWishart& d, RngStream& rng);

}  // namespace popmcmc::dist

#endif
