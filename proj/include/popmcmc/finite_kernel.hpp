#ifndef POPMCMC_FINITE_KERNEL_HPP
#define POPMCMC_FINITE_KERNEL_HPP

#include <vector>

#include <Eigen/Dense>

#include "popmcmc/rng.hpp"
#include "popmcmc/varsel.hpp"

namespace popmcmc::finite {

// Exact row-stochastic transition matrix over an enumerated state space.
struct FiniteKernel {
  Eigen::MatrixXd P;

  int states() const { return static_cast<int>(P.rows()); }
  void validate(double tol = 1e-12) const;
  FiniteKernel power(int n) const;
  // stationary distribution via the linear system (left eigenvector of 1)
  Eigen::VectorXd stationary() const;
};

// (n0, epsilon, nu) certificate for K^{n0} >= epsilon nu.
struct MinorizationPair {
  int n0 = 1;
  double epsilon = 0.0;
  Eigen::VectorXd nu;
};

// Single-flip Metropolis kernel on {0,1}^k_max: propose a uniform coordinate,
// flip it, accept by the tempered posterior ratio. One sweep = k_max
// applications of this kernel.
FiniteKernel build_flip_kernel(const VarselModel& model, double zeta);

// Simulate the flip kernel directly (sweep = k_max proposed flips); returns
// the empirical distribution over states after `sweeps` sweeps.
Eigen::VectorXd simulate_flip_chain(const VarselModel& model, double zeta,
                                    int sweeps, RngStream& rng);

// epsilon = sum_j min_i (K^n)_{ij}, nu_j = min_i (K^n)_{ij} / epsilon.
// The certificate K^n >= epsilon nu is re-verified before returning.
MinorizationPair minorization_pair(const FiniteKernel& k, int n);

struct PopulationConstant {
  double epsilon_star = 0.0;  // epsilon^2 phi
  double phi = 0.0;
  double rho1 = 0.0;  // sup pi1/pi2
};

// The two-chain minorization constant built from the hot chain's certificate:
// rho1 = max pi1/pi2, phi = sum nu(x) min{1, pi1(x)/(pi2(x) rho1)},
// constant = epsilon^2 phi.
PopulationConstant population_minorization_constant(const MinorizationPair& pair,
                                                    const Eigen::VectorXd& pi1,
                                                    const Eigen::VectorXd& pi2);

// Smallest M with n0-block geometric decay below delta:
// largest n with (1-eps)^{n/n0} still above delta is floor(n0 log delta /
// log(1-eps)), matching the reference computation.
long tv_bound_iterations(int n0, double epsilon, double delta);

// Exact product-space composite (K1 x K2)^s . Exchange . (K1 x K2)^s with the
// exchange acceptance evaluated per product state. Guarded at 1e6 entries.
FiniteKernel build_population_pair_kernel(const FiniteKernel& k1,
                                          const FiniteKernel& k2,
                                          const Eigen::VectorXd& pi1,
                                          const Eigen::VectorXd& pi2,
                                          int sweeps_each);

// beta(K) = max over row pairs of the total variation distance.
double dobrushin(const FiniteKernel& k);

// Largest eps with K(x,.) >= eps K(y,.) for all pairs; 0 when some row has a
// zero where another is positive.
double mixing_condition_eps(const FiniteKernel& k);

// ||p - q||_TV = half the L1 distance
double tv_distance(const Eigen::VectorXd& p, const Eigen::VectorXd& q);

struct Prop1Report {
  double alpha = 0.0;
  double eps_mixing = 0.0;
  double factor = 0.0;  // 2 (1-alpha)(1-eps)
  std::vector<double> tv;     // exact TV at n = 1..n_max
  std::vector<double> bound;  // factor^n * tv(0)
  int violations = 0;
  double worst_ratio = 0.0;  // max tv/bound observed
};

// Exact verification of the contraction bound for a two-chain product chain:
// K_M is the product-space mutation kernel, the exchange kernel is built from
// (pi1, pi2) internally (the single pair has weight 1).
Prop1Report prop1_verify(const FiniteKernel& k_m, const Eigen::VectorXd& pi1,
                         const Eigen::VectorXd& pi2, const Eigen::VectorXd& eta,
                         int n_max);

struct Theorem1Report {
  int violations = 0;
  double min_slack = 0.0;  // min over product states and targets of K - theta nu*
  int argmin_state = -1;
  int argmin_target = -1;
};

// nu* construction from the small-set proof: nu*(a1, a2) = K*(a1) nu(a2) with
// K*(a1) = phi^{-1} sum_x nu(x) min{1, pi1(x)/(pi2(x) rho1)} K1block(x, a1).
Eigen::VectorXd theorem1_nu_star(const FiniteKernel& k1_block,
                                 const MinorizationPair& pair,
                                 const Eigen::VectorXd& pi1,
                                 const Eigen::VectorXd& pi2);

// Checks K_pop(x, {a}) >= theta nu*({a}) for every product state and target.
Theorem1Report theorem1_verify(const FiniteKernel& k_pop, double theta,
                               const Eigen::VectorXd& nu_star,
                               double tol = 1e-12);

}  // namespace popmcmc::finite

#endif
