#ifndef POPMCMC_PREPROCESS_HPP
#define POPMCMC_PREPROCESS_HPP

#include <Eigen/Dense>

#include "popmcmc/mixture_model.hpp"
#include "popmcmc/rng.hpp"

namespace popmcmc::mix {

struct KmeansResult {
  Eigen::MatrixXd centroids;  // l x r
  std::vector<int> assignment;
  double inertia = 0.0;
  int iterations = 0;
};

// Lloyd's algorithm with k-means++ seeding. Empty clusters are re-seeded from
// the point farthest from its assigned centroid. Stops on a relative inertia
// change below tol or after max_iter rounds.
KmeansResult kmeans(const Eigen::MatrixXd& points, int l, RngStream& rng,
                    int max_iter = 100, double tol = 1e-8);

struct PcaResult {
  Eigen::MatrixXd projected;    // rows x q scores
  Eigen::MatrixXd components;   // r x q loading vectors, by descending eigenvalue
  Eigen::VectorXd eigenvalues;  // all r eigenvalues, descending
  Eigen::VectorXd mean;
};

// Principal components of the row covariance; the sign of each component is
// fixed so its leading (first non-negligible) loading is non-negative.
PcaResult pca_project(const Eigen::MatrixXd& points, int q);

// K-means to l centroids followed by projection onto the top-q principal
// components of the centroid cloud.
Dataset preprocess(const Eigen::MatrixXd& raw, int l, int q, RngStream& rng);

}  // namespace popmcmc::mix

#endif
