#ifndef POPMCMC_SPD_CHOL_HPP
#define POPMCMC_SPD_CHOL_HPP

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace popmcmc {

// Thrown by chol_factor on a non-positive-definite input. Move kernels catch
// this to reject proposals instead of aborting.
class NotPositiveDefinite : public std::runtime_error {
 public:
  explicit NotPositiveDefinite(const std::string& what)
      : std::runtime_error(what) {}
};

// Lower-triangular Cholesky factor Phi of an SPD matrix Lambda = Phi Phi'.
// The diagonal is strictly positive, so log|Lambda| = 2 sum log phi_ll.
class SpdChol {
 public:
  explicit SpdChol(Eigen::MatrixXd lower) : lower_(std::move(lower)) {
    if (lower_.rows() != lower_.cols() || lower_.rows() < 1)
      throw std::invalid_argument("SpdChol: factor must be square and non-empty");
    if (!lower_.allFinite())
      throw std::invalid_argument("SpdChol: factor must be finite");
    const Eigen::Index r = lower_.rows();
    for (Eigen::Index i = 0; i < r; ++i) {
      if (!(lower_(i, i) > 0.0))
        throw NotPositiveDefinite("SpdChol: diagonal must be strictly positive");
      for (Eigen::Index j = i + 1; j < r; ++j) lower_(i, j) = 0.0;
    }
  }

  static SpdChol identity(int r) {
    return SpdChol(Eigen::MatrixXd::Identity(r, r));
  }

  int dim() const { return static_cast<int>(lower_.rows()); }
  const Eigen::MatrixXd& lower() const { return lower_; }

  // Lambda = Phi Phi'
  Eigen::MatrixXd matrix() const { return lower_ * lower_.transpose(); }

  // Lambda^{-1} via two triangular solves
  Eigen::MatrixXd inverse() const {
    const Eigen::MatrixXd inv_l =
        lower_.triangularView<Eigen::Lower>().solve(
            Eigen::MatrixXd::Identity(dim(), dim()));
    return inv_l.transpose() * inv_l;
  }

  double log_det() const {
    return 2.0 * lower_.diagonal().array().log().sum();
  }

  // Phi^{-1} b
  Eigen::VectorXd solve_lower(const Eigen::VectorXd& b) const {
    return lower_.triangularView<Eigen::Lower>().solve(b);
  }

  // log |d Lambda / d Phi| = r log 2 + sum_l (r - l + 1) log phi_ll (l 1-based)
  double log_chol_jacobian() const {
    const int r = dim();
    double acc = r * std::log(2.0);
    for (int l = 0; l < r; ++l) acc += (r - l) * std::log(lower_(l, l));
    return acc;
  }

 private:
  Eigen::MatrixXd lower_;
};

// Cholesky factorization of a symmetric matrix; throws NotPositiveDefinite
// when A is not positive definite.
inline SpdChol chol_factor(const Eigen::MatrixXd& A) {
  if (A.rows() != A.cols())
    throw std::invalid_argument("chol_factor: matrix must be square");
  if (!A.allFinite())
    throw std::invalid_argument("chol_factor: matrix must be finite");
  const double scale = A.cwiseAbs().maxCoeff();
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + scale))
    throw std::invalid_argument("chol_factor: matrix must be symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefinite("chol_factor: matrix is not positive definite");
  Eigen::MatrixXd L = llt.matrixL();
  for (Eigen::Index i = 0; i < L.rows(); ++i)
    if (!(L(i, i) > 0.0) || !std::isfinite(L(i, i)))
      throw NotPositiveDefinite("chol_factor: matrix is not positive definite");
  if (((L * L.transpose()) - A).cwiseAbs().maxCoeff() > 1e-10 * (1.0 + scale))
    throw NotPositiveDefinite("chol_factor: factorization failed to reconstruct input");
  return SpdChol(std::move(L));
}

// (x - mu)' Lambda^{-1} (x - mu) through triangular solves with the factor of
// Lambda; exact zero when x == mu.
template <typename D1, typename D2>
double mahalanobis_sq(const Eigen::MatrixBase<D1>& x,
                      const Eigen::MatrixBase<D2>& mu, const SpdChol& chol) {
  if (x.size() != mu.size() || x.size() != chol.dim())
    throw std::invalid_argument("mahalanobis_sq: dimension mismatch");
  Eigen::VectorXd d = x - mu;
  if (!d.allFinite())
    throw std::invalid_argument("mahalanobis_sq: non-finite input");
  if (d.isZero(0.0)) return 0.0;
  return chol.lower().triangularView<Eigen::Lower>().solve(d).squaredNorm();
}

}  // namespace popmcmc

#endif
