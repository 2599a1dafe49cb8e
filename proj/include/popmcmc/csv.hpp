#ifndef POPMCMC_CSV_HPP
#define POPMCMC_CSV_HPP

#include <string>

#include <Eigen/Dense>

namespace popmcmc {

// Headerless comma-separated numeric matrix, one row per observation.
Eigen::MatrixXd read_csv_matrix(const std::string& path);
void write_csv_matrix(const std::string& path, const Eigen::MatrixXd& m);

}  // namespace popmcmc

#endif
