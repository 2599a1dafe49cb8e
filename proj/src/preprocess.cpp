#include "popmcmc/preprocess.hpp"

#include <limits>
#include <stdexcept>

namespace popmcmc::mix {

namespace {

// squared distances from every point to one centroid
Eigen::VectorXd sq_dist_to(const Eigen::MatrixXd& pts, const Eigen::RowVectorXd& c) {
  return (pts.rowwise() - c).rowwise().squaredNorm();
}

}  // namespace

KmeansResult kmeans(const Eigen::MatrixXd& points, int l, RngStream& rng,
                    int max_iter, double tol) {
  const int n = static_cast<int>(points.rows());
  if (l < 1 || l > n) throw std::invalid_argument("kmeans: need 1 <= l <= n");

  KmeansResult res;
  res.centroids.resize(l, points.cols());

  // k-means++ seeding
  res.centroids.row(0) = points.row(rng.uniform_int(n));
  Eigen::VectorXd d2 = sq_dist_to(points, res.centroids.row(0));
  for (int c = 1; c < l; ++c) {
    int pick;
    if (d2.sum() > 0.0) {
      pick = rng.categorical(d2);
    } else {
      pick = rng.uniform_int(n);
    }
    res.centroids.row(c) = points.row(pick);
    d2 = d2.cwiseMin(sq_dist_to(points, res.centroids.row(c)));
  }

  res.assignment.assign(n, 0);
  double prev_inertia = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iter; ++it) {
    res.iterations = it + 1;
    // assign, ties to the lowest index
    Eigen::MatrixXd dist(n, l);
    for (int c = 0; c < l; ++c) dist.col(c) = sq_dist_to(points, res.centroids.row(c));
    double inertia = 0.0;
    for (int i = 0; i < n; ++i) {
      int best;
      inertia += dist.row(i).minCoeff(&best);
      res.assignment[i] = best;
    }

    // update
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(l, points.cols());
    Eigen::VectorXi counts = Eigen::VectorXi::Zero(l);
    for (int i = 0; i < n; ++i) {
      sums.row(res.assignment[i]) += points.row(i);
      counts(res.assignment[i]) += 1;
    }
    for (int c = 0; c < l; ++c) {
      if (counts(c) > 0) {
        res.centroids.row(c) = sums.row(c) / counts(c);
      } else {
        // re-seed from the point farthest from its assigned centroid
        int far = 0;
        double far_d = -1.0;
        for (int i = 0; i < n; ++i) {
          const double d = (points.row(i) - res.centroids.row(res.assignment[i]))
                               .squaredNorm();
          if (d > far_d) {
            far_d = d;
            far = i;
          }
        }
        res.centroids.row(c) = points.row(far);
        res.assignment[far] = c;
      }
    }

    res.inertia = inertia;
    if (prev_inertia < std::numeric_limits<double>::infinity()) {
      const double rel = std::abs(prev_inertia - inertia) / (1.0 + inertia);
      if (rel < tol) break;
    }
    prev_inertia = inertia;
  }
  return res;
}

PcaResult pca_project(const Eigen::MatrixXd& points, int q) {
  const int n = static_cast<int>(points.rows());
  const int r = static_cast<int>(points.cols());
  if (q < 1 || q > r) throw std::invalid_argument("pca_project: need 1 <= q <= r");

  PcaResult res;
  res.mean = points.colwise().mean();
  const Eigen::MatrixXd centered = points.rowwise() - res.mean.transpose();
  const Eigen::MatrixXd cov =
      centered.transpose() * centered / std::max(1, n - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("pca_project: eigendecomposition failed");

  // Eigen returns ascending order; reverse to descending.
  res.eigenvalues = es.eigenvalues().reverse();
  Eigen::MatrixXd vecs = es.eigenvectors().rowwise().reverse();

  res.components.resize(r, q);
  for (int c = 0; c < q; ++c) {
    Eigen::VectorXd v = vecs.col(c);
    for (int i = 0; i < r; ++i) {
      if (std::abs(v(i)) > 1e-12) {
        if (v(i) < 0.0) v = -v;
        break;
      }
    }
    res.components.col(c) = v;
  }
  res.projected = centered * res.components;
  return res;
}

Dataset preprocess(const Eigen::MatrixXd& raw, int l, int q, RngStream& rng) {
  if (l > raw.rows()) throw std::invalid_argument("preprocess: l exceeds point count");
  if (q > raw.cols()) throw std::invalid_argument("preprocess: q exceeds dimension");
  const KmeansResult km = kmeans(raw, l, rng);
  const PcaResult pca = pca_project(km.centroids, q);
  return Dataset(pca.projected);
}

}  // namespace popmcmc::mix
