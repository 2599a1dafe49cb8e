// Acceptance suite: one self-contained check per release criterion, each
// printing a single PASS/FAIL line. The process exits with the number of
// failed criteria.

#include <cmath>
#include <cstdio>
#include <ctime>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "popmcmc/diagnostics.hpp"
#include "popmcmc/finite_kernel.hpp"
#include "popmcmc/ladder_tuning.hpp"
#include "popmcmc/mixture_model.hpp"
#include "popmcmc/numerics.hpp"
#include "popmcmc/population.hpp"
#include "popmcmc/rj_moves.hpp"
#include "popmcmc/rng.hpp"
#include "popmcmc/varsel.hpp"

using namespace popmcmc;

namespace {

double cpu_seconds() {
  return static_cast<double>(std::clock()) / CLOCKS_PER_SEC;
}

// ---------------------------------------------------------------- criterion 1

bool criterion_reference_counts(std::string& detail) {
  const long a = finite::tv_bound_iterations(20, 3.63e-3, 0.01);
  const long b = finite::tv_bound_iterations(1, 6.01e-4, 0.01);
  detail = "M(20, 3.63e-3) = " + std::to_string(a) +
           ", M(1, 6.01e-4) = " + std::to_string(b);
  return a == 25326 && b == 7660;
}

// ---------------------------------------------------------------- criterion 2

bool criterion_flip_chain_recovery(std::string& detail) {
  const finite::VarselModel model = finite::varsel_fixture_mild();
  const Eigen::VectorXd exact = finite::exact_posterior(model, 1.0);
  RngStream rng(2026, 4);
  const Eigen::VectorXd emp = finite::simulate_flip_chain(model, 1.0, 100000, rng);
  const double tv = finite::tv_distance(emp, exact);
  char buf[128];
  std::snprintf(buf, sizeof(buf), "TV(empirical, exact) = %.4f over 256 states", tv);
  detail = buf;
  return tv < 0.05;
}

// ---------------------------------------------------------------- criterion 3

bool criterion_convergence_ordering(std::string& detail) {
  const finite::VarselModel model = finite::varsel_fixture();
  const finite::FiniteKernel k1 = finite::build_flip_kernel(model, 1.0);
  const finite::FiniteKernel k2 = finite::build_flip_kernel(model, 0.01);
  const Eigen::VectorXd pi1 = finite::exact_posterior(model, 1.0);
  const Eigen::VectorXd pi2 = finite::exact_posterior(model, 0.01);

  const finite::MinorizationPair vanilla = finite::minorization_pair(k1, 1000);
  const long m_vanilla = finite::tv_bound_iterations(20, vanilla.epsilon, 0.01);

  const finite::FiniteKernel k2block = k2.power(10 * model.k_max());
  const finite::MinorizationPair hot = finite::minorization_pair(k2block, 1);
  const finite::PopulationConstant pc =
      finite::population_minorization_constant(hot, pi1, pi2);
  const long m_pop = finite::tv_bound_iterations(1, pc.epsilon_star, 0.01);

  char buf[192];
  std::snprintf(buf, sizeof(buf),
                "M_pop = %ld (eps^2 phi = %.3g) vs M_vanilla = %ld (eps = %.3g)",
                m_pop, pc.epsilon_star, m_vanilla, vanilla.epsilon);
  detail = buf;
  return m_pop < m_vanilla;
}

// ------------------------------------------------- toys shared by 4, 5 and 6

finite::FiniteKernel lazy_independence(const Eigen::VectorXd& pi, double beta) {
  const int s = static_cast<int>(pi.size());
  finite::FiniteKernel k{Eigen::MatrixXd::Zero(s, s)};
  for (int i = 0; i < s; ++i) {
    k.P.row(i) = (1.0 - beta) * pi.transpose();
    k.P(i, i) += beta;
  }
  return k;
}

// ---------------------------------------------------------------- criterion 4

bool criterion_theorem1(std::string& detail) {
  Eigen::VectorXd pi1(3), pi2(3);
  pi1 << 0.45, 0.35, 0.2;
  pi2 << 0.4, 0.34, 0.26;
  const finite::FiniteKernel k1 = lazy_independence(pi1, 0.1);
  const finite::FiniteKernel k2 = lazy_independence(pi2, 0.1);
  const int sweeps_each = 2;

  const finite::MinorizationPair pair = finite::minorization_pair(k2, sweeps_each);
  const finite::PopulationConstant pc =
      finite::population_minorization_constant(pair, pi1, pi2);
  const Eigen::VectorXd nu_star =
      finite::theorem1_nu_star(k1.power(sweeps_each), pair, pi1, pi2);
  const finite::FiniteKernel comp =
      finite::build_population_pair_kernel(k1, k2, pi1, pi2, sweeps_each);
  const finite::Theorem1Report rep =
      finite::theorem1_verify(comp, pc.epsilon_star, nu_star);

  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "violations = %d, min slack = %.3e at theta = eps^2 phi = %.4f",
                rep.violations, rep.min_slack, pc.epsilon_star);
  detail = buf;
  return rep.violations == 0;
}

// ---------------------------------------------------------------- criterion 5

bool criterion_prop1(std::string& detail) {
  Eigen::VectorXd pi1(3), pi2(3);
  pi1 << 0.45, 0.35, 0.2;
  pi2 << 0.4, 0.34, 0.26;
  const finite::FiniteKernel k1 = lazy_independence(pi1, 0.05);
  const finite::FiniteKernel k2 = lazy_independence(pi2, 0.05);
  Eigen::MatrixXd km(9, 9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) km.block(i * 3, j * 3, 3, 3) = k1.P(i, j) * k2.P;
  Eigen::VectorXd eta = Eigen::VectorXd::Zero(9);
  eta(8) = 1.0;

  const finite::Prop1Report rep =
      finite::prop1_verify(finite::FiniteKernel{km}, pi1, pi2, eta, 50);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "violations = %d over n <= 50, factor = %.3f, mixing eps = %.3f",
                rep.violations, rep.factor, rep.eps_mixing);
  detail = buf;
  return rep.violations == 0 && rep.eps_mixing > 0.0;
}

// ---------------------------------------------------------------- criterion 6

struct CrossToy {
  mix::Dataset data;
  mix::Hyperparams h;
  std::vector<mix::MixtureState> states;

  explicit CrossToy(bool distinct_only) : data(make_points()) {
    h = mix::default_hyperparams(data);
    h.k_max = 4;
    const Eigen::MatrixXd psi1 = Eigen::MatrixXd::Constant(1, 1, 1.0);
    const std::vector<std::pair<double, double>> atoms = {
        {-1.0, 0.8}, {0.5, 1.2}, {2.0, 1.0}};
    for (const auto& [mu, phi] : atoms) {
      mix::MixtureState s;
      s.weights = Eigen::VectorXd::Ones(1);
      s.means = {Eigen::VectorXd::Constant(1, mu)};
      s.chols = {SpdChol(Eigen::MatrixXd::Constant(1, 1, phi))};
      s.psi = psi1;
      states.push_back(s);
    }
    for (size_t i = 0; i < atoms.size(); ++i)
      for (size_t j = 0; j < atoms.size(); ++j) {
        if (distinct_only && i == j) continue;
        mix::MixtureState s;
        s.weights = Eigen::Vector2d(0.7, 0.3);
        s.means = {Eigen::VectorXd::Constant(1, atoms[i].first),
                   Eigen::VectorXd::Constant(1, atoms[j].first)};
        s.chols = {SpdChol(Eigen::MatrixXd::Constant(1, 1, atoms[i].second)),
                   SpdChol(Eigen::MatrixXd::Constant(1, 1, atoms[j].second))};
        s.psi = psi1;
        states.push_back(s);
      }
  }

  static Eigen::MatrixXd make_points() {
    RngStream rng(310, 0);
    Eigen::MatrixXd pts(6, 1);
    for (int i = 0; i < 6; ++i) pts(i, 0) = rng.normal();
    return pts;
  }

  static std::string key(const mix::MixtureState& s) {
    mix::MixtureState t = s;
    pop::detail::sort_by_weight_desc(t);
    std::string k;
    char buf[64];
    for (int j = 0; j < t.k(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.6f|%.6f|%.6f;", t.weights(j),
                    t.means[j](0), t.chols[j].lower()(0, 0));
      k += buf;
    }
    return k;
  }

  int index(const mix::MixtureState& s) const {
    const std::string k = key(s);
    for (size_t i = 0; i < states.size(); ++i)
      if (key(states[i]) == k) return static_cast<int>(i);
    return -1;
  }

  double log_target(const mix::MixtureState& s, double zeta) const {
    return zeta * mix::log_likelihood(data, s, h) + mix::log_prior(s, h);
  }
};

double max_invariance_error(const Eigen::VectorXd& pi, const Eigen::MatrixXd& t) {
  const Eigen::RowVectorXd left = pi.transpose() * t;
  return (left.transpose() - pi).cwiseAbs().maxCoeff();
}

double max_reversibility_error(const Eigen::VectorXd& pi,
                               const Eigen::MatrixXd& t) {
  double err = 0.0;
  for (int i = 0; i < t.rows(); ++i)
    for (int j = 0; j < t.cols(); ++j)
      err = std::max(err, std::abs(pi(i) * t(i, j) - pi(j) * t(j, i)));
  return err;
}

bool criterion_reversibility(std::string& detail) {
  double worst = 0.0;

  // basic exchange on a 2-chain, 4-state abstract toy
  {
    const Eigen::Vector2d zeta(1.0, 0.35);
    Eigen::Vector4d logb;
    logb << std::log(0.5), std::log(1.2), std::log(2.0), std::log(0.1);
    const int S = 16;
    Eigen::VectorXd pistar(S);
    for (int s = 0; s < S; ++s)
      pistar(s) = std::exp(zeta(0) * logb(s % 4) + zeta(1) * logb(s / 4));
    pistar /= pistar.sum();
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(S, S);
    for (int s = 0; s < S; ++s) {
      const int a = s % 4, b = s / 4;
      const double rho = std::min(
          1.0, std::exp(pop::exchange_log_rho1(zeta(0), zeta(1), logb(a), logb(b))));
      t(s, b + 4 * a) += rho;
      t(s, s) += 1.0 - rho;
    }
    worst = std::max(worst, max_reversibility_error(pistar, t));
    worst = std::max(worst, max_invariance_error(pistar, t));
  }

  // delayed-rejection exchange on a 3-chain, 3-state toy
  {
    const Eigen::Vector3d zeta(1.0, 0.5, 0.2);
    const Eigen::Vector3d logb(std::log(0.2), std::log(1.0), std::log(3.0));
    const int S = 27;
    auto unpack = [](int s) {
      return std::array<int, 3>{s % 3, (s / 3) % 3, s / 9};
    };
    auto pack = [](const std::array<int, 3>& x) {
      return x[0] + 3 * x[1] + 9 * x[2];
    };
    Eigen::VectorXd pistar(S);
    for (int s = 0; s < S; ++s) {
      const auto x = unpack(s);
      double lp = 0.0;
      for (int i = 0; i < 3; ++i) lp += zeta(i) * logb(x[i]);
      pistar(s) = std::exp(lp);
    }
    pistar /= pistar.sum();
    const std::array<std::pair<int, int>, 3> pairs = {{{0, 1}, {0, 2}, {1, 2}}};
    const std::array<std::pair<int, int>, 2> adjacent = {{{0, 1}, {1, 2}}};
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(S, S);
    for (int s = 0; s < S; ++s) {
      const auto x = unpack(s);
      for (const auto& [a, b] : pairs) {
        auto xs = x;
        std::swap(xs[a], xs[b]);
        const double lr1 =
            pop::exchange_log_rho1(zeta(a), zeta(b), logb(x[a]), logb(x[b]));
        const double rho1 = std::min(1.0, std::exp(lr1));
        t(s, pack(xs)) += (1.0 / 3.0) * rho1;
        if (rho1 >= 1.0) continue;
        for (const auto& [c, d] : adjacent) {
          auto x2 = x;
          std::swap(x2[c], x2[d]);
          const double lr1_pseudo =
              pop::exchange_log_rho1(zeta(a), zeta(b), logb(x2[a]), logb(x2[b]));
          const double lr_swap =
              pop::exchange_log_rho1(zeta(c), zeta(d), logb(x[c]), logb(x[d]));
          const double rho2 = std::exp(pop::dr_log_rho2(
              lr_swap, std::min(0.0, lr1_pseudo), std::min(lr1, -1e-300)));
          t(s, pack(x2)) += (1.0 / 3.0) * (1.0 - rho1) * 0.5 * rho2;
        }
      }
    }
    for (int s = 0; s < S; ++s) t(s, s) += 1.0 - t.row(s).sum();
    worst = std::max(worst, max_reversibility_error(pistar, t));
    worst = std::max(worst, max_invariance_error(pistar, t));
  }

  // variable-dimension crossover on the closed two-chain mixture family
  {
    CrossToy fam(false);
    const int S = static_cast<int>(fam.states.size());
    const double z1 = 1.0, z2 = 0.45;
    Eigen::VectorXd pivec(S * S);
    for (int a = 0; a < S; ++a)
      for (int b = 0; b < S; ++b)
        pivec(a * S + b) = std::exp(fam.log_target(fam.states[a], z1) +
                                    fam.log_target(fam.states[b], z2));
    pivec /= pivec.sum();
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(S * S, S * S);
    for (int a = 0; a < S; ++a)
      for (int b = 0; b < S; ++b) {
        const int from = a * S + b;
        mix::MixtureState sa = fam.states[a], sb = fam.states[b];
        pop::detail::sort_by_weight_desc(sa);
        pop::detail::sort_by_weight_desc(sb);
        if (sa.k() == sb.k()) {
          t(from, from) = 1.0;
          continue;
        }
        mix::MixtureState pa, pb;
        if (sa.k() > sb.k())
          pop::detail::var_dim_cross(sa, sb, pa, pb);
        else
          pop::detail::var_dim_cross(sb, sa, pb, pa);
        const int ia = fam.index(pa), ib = fam.index(pb);
        if (ia < 0 || ib < 0) {
          detail = "variable-dimension crossover left the closed family";
          return false;
        }
        const double la = fam.log_target(pa, z1) + fam.log_target(pb, z2) -
                          fam.log_target(sa, z1) - fam.log_target(sb, z2);
        const double rho = std::min(1.0, std::exp(la));
        t(from, ia * S + ib) += rho;
        t(from, from) += 1.0 - rho;
      }
    worst = std::max(worst, max_invariance_error(pivec, t));
  }

  // fixed-dimension crossover on the tie-free family
  {
    CrossToy fam(true);
    const int S = static_cast<int>(fam.states.size());
    const double z1 = 1.0, z2 = 0.45;
    Eigen::VectorXd pivec(S * S);
    for (int a = 0; a < S; ++a)
      for (int b = 0; b < S; ++b)
        pivec(a * S + b) = std::exp(fam.log_target(fam.states[a], z1) +
                                    fam.log_target(fam.states[b], z2));
    pivec /= pivec.sum();
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(S * S, S * S);
    for (int a = 0; a < S; ++a)
      for (int b = 0; b < S; ++b) {
        const int from = a * S + b;
        mix::MixtureState sa = fam.states[a], sb = fam.states[b];
        pop::detail::sort_by_first_mean(sa);
        pop::detail::sort_by_first_mean(sb);
        if (sa.k() != sb.k() || sa.k() < 2) {
          t(from, from) = 1.0;
          continue;
        }
        mix::MixtureState pa = sa, pb = sb;
        std::swap(pa.means[0], pb.means[0]);
        std::swap(pa.chols[0], pb.chols[0]);
        if (!pop::detail::ordered_by_first_mean(pa) ||
            !pop::detail::ordered_by_first_mean(pb)) {
          t(from, from) = 1.0;
          continue;
        }
        const int ia = fam.index(pa), ib = fam.index(pb);
        if (ia < 0 || ib < 0) {
          detail = "fixed-dimension crossover left the closed family";
          return false;
        }
        const double la = fam.log_target(pa, z1) + fam.log_target(pb, z2) -
                          fam.log_target(sa, z1) - fam.log_target(sb, z2);
        const double rho = std::min(1.0, std::exp(la));
        t(from, ia * S + ib) += rho;
        t(from, from) += 1.0 - rho;
      }
    worst = std::max(worst, max_invariance_error(pivec, t));
  }

  char buf[96];
  std::snprintf(buf, sizeof(buf), "worst invariance/reversibility error = %.2e",
                worst);
  detail = buf;
  return worst < 1e-10;
}

// ---------------------------------------------------------------- criterion 7

bool criterion_prior_recovery(std::string& detail) {
  RngStream init(1, 0);
  Eigen::MatrixXd pts(5, 2);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 2; ++j) pts(i, j) = init.normal();
  const mix::Dataset data(pts);
  mix::Hyperparams h = mix::default_hyperparams(data);
  h.k_max = 6;
  const rj::MoveScales scales = rj::MoveScales::defaults(data.ranges);
  const pop::PopCtx ctx{&data, &h, false};  // likelihood exponent zero

  const pop::Ladder ladder = pop::ladder_geometric(4, 1e-3, 2.0);
  RngStream irng(11, 0);
  pop::Population popn = pop::make_population(ladder, {}, 0.999, ctx, irng);
  pop::PopRngs rngs(12, popn.size());
  pop::PopSweepOptions opt;
  opt.snooker = pop::SnookerScales::defaults(data.ranges);

  const long sweeps = 200000, thin = 50;
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(h.k_max);
  for (long t = 0; t < sweeps; ++t) {
    pop::population_sweep(popn, ctx, scales, opt, rngs);
    if (t % thin == 0)
      for (const auto& c : popn.chains) counts(c.state.k() - 1) += 1;
  }
  const double n = counts.sum(), expect = n / h.k_max;
  double chi2 = 0.0;
  for (int k = 0; k < h.k_max; ++k)
    chi2 += (counts(k) - expect) * (counts(k) - expect) / expect;
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "pooled chi2(5) = %.2f vs 15.086 at the 1%% level", chi2);
  detail = buf;
  return chi2 < 15.086;
}

// ---------------------------------------------------------------- criterion 8

bool criterion_split_bijection(std::string& detail) {
  RngStream rng(77, 3);
  double worst = 0.0, worst_j = 0.0;
  for (int rep = 0; rep < 10000; ++rep) {
    const int r = 1 + rng.uniform_int(3);
    const double w = rng.uniform(0.05, 0.95);
    const Eigen::VectorXd mu = rng.normal_vec(r);
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(r, r);
    for (int a = 0; a < r; ++a) {
      l(a, a) = std::exp(rng.normal(0.0, 0.5));
      for (int b = 0; b < a; ++b) l(a, b) = rng.normal(0.0, 0.4);
    }
    const SpdChol phi(l);
    rj::SplitInnovations u;
    u.u1 = rng.uniform(0.05, 0.95);
    u.u_mean = rng.normal_vec(r) * 0.3;
    u.u_offdiag = Eigen::MatrixXd::Zero(r, r);
    for (int a = 1; a < r; ++a)
      for (int b = 0; b < a; ++b) u.u_offdiag(a, b) = rng.normal(0.0, 0.2);
    u.u_diag.resize(r);
    for (int a = 0; a < r; ++a) u.u_diag(a) = rng.log_normal(0.0, 0.3);

    const rj::SplitParts sp = rj::split_component(w, mu, phi, u);
    const rj::CombineParts cp = rj::combine_components(
        sp.w1, sp.mu1, sp.phi1, sp.w2, sp.mu2, sp.phi2);
    worst = std::max(worst, std::abs(cp.w_parent - w));
    worst = std::max(worst, (cp.mu_parent - mu).cwiseAbs().maxCoeff());
    worst = std::max(worst,
                     (cp.phi_parent.lower() - phi.lower()).cwiseAbs().maxCoeff());
    worst = std::max(worst, std::abs(cp.u.u1 - u.u1));
    worst = std::max(worst, (cp.u.u_diag - u.u_diag).cwiseAbs().maxCoeff());

    if (r == 1) {
      const double got = rj::log_split_jacobian(w, phi, u.u_diag);
      const double want = std::log(4.0 * w * phi.lower()(0, 0) / u.u_diag(0));
      worst_j = std::max(worst_j, std::abs(got - want));
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "max round-trip error = %.2e, max |J| error (r=1) = %.2e", worst,
                worst_j);
  detail = buf;
  return worst < 1e-12 && worst_j < 1e-12;
}

// ---------------------------------------------------------------- criterion 9

bool criterion_efficiency(std::string& detail);  // defined below

// --------------------------------------------------------------- criterion 10

bool criterion_ladder_tuner(std::string& detail) {
  constexpr int dim = 100;
  auto mutate = [](Eigen::VectorXd& x, double zeta, RngStream& rng) {
    x = rng.normal_vec(dim) / std::sqrt(zeta);
  };
  auto loglik = [](const Eigen::VectorXd& x) { return -0.5 * x.squaredNorm(); };

  pop::Ladder init;
  init.zetas = Eigen::Vector4d(1.0, 0.9, 0.8, 0.7);
  RngStream rng(32, 0);
  const pop::IbaTuneResult res = pop::ladder_tune_iba_generic(
      init, std::vector<Eigen::VectorXd>(4, Eigen::VectorXd::Zero(dim)), mutate,
      loglik, 3000, rng);
  if (!res.converged) {
    detail = "tuner failed to converge";
    return false;
  }
  std::vector<Eigen::VectorXd> xs(4, Eigen::VectorXd::Zero(dim));
  Eigen::Vector3d acc = Eigen::Vector3d::Zero();
  const int reps = 20000;
  for (int t = 0; t < reps; ++t) {
    for (int i = 0; i < 4; ++i) mutate(xs[i], res.ladder.zetas(i), rng);
    for (int i = 0; i + 1 < 4; ++i)
      acc(i) += std::min(1.0, std::exp(pop::exchange_log_rho1(
                                  res.ladder.zetas(i), res.ladder.zetas(i + 1),
                                  loglik(xs[i]), loglik(xs[i + 1]))));
  }
  acc /= reps;
  const double pooled = acc.mean();
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "tuned ladder realized exchange acceptance = %.3f (per gap: "
                "%.3f %.3f %.3f)",
                pooled, acc(0), acc(1), acc(2));
  detail = buf;
  return pooled > 0.35 && pooled < 0.65;
}

}  // namespace

// criterion 9 lives in a separate translation section of this file for ease
// of tuning; see below main.

int main() {
  struct Criterion {
    int id;
    const char* label;
    std::function<bool(std::string&)> fn;
  };
  const std::vector<Criterion> criteria = {
      {1, "reference iteration counts reproduce exactly", criterion_reference_counts},
      {2, "flip-kernel simulation recovers the enumerated posterior",
       criterion_flip_chain_recovery},
      {3, "population minorization beats the rescaled single chain",
       criterion_convergence_ordering},
      {4, "theorem-1 small-set certificate holds on the product toy",
       criterion_theorem1},
      {5, "proposition-1 contraction bound holds exactly", criterion_prop1},
      {6, "exchange and crossover kernels are target-invariant",
       criterion_reversibility},
      {7, "prior recovery: pooled dimension histogram is uniform",
       criterion_prior_recovery},
      {8, "split/combine round trip and scalar Jacobian", criterion_split_bijection},
      {9, "population sampler efficiency gain at desk scale", criterion_efficiency},
      {10, "tuned ladder accepts exchanges about half the time",
       criterion_ladder_tuner},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const double t0 = cpu_seconds();
    std::string detail;
    bool ok = false;
    try {
      ok = c.fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double dt = cpu_seconds() - t0;
    std::printf("[%s] criterion %2d: %s — %s (%.1f s)\n", ok ? "PASS" : "FAIL",
                c.id, c.label, detail.c_str(), dt);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures == 0)
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
  else
    std::printf("%d acceptance criteria FAILED\n", failures);
  return failures;
}

namespace {

// Desk-scale efficiency: a two-dimensional three-component target, one
// population run against two vanilla runs, effective sample size of the
// model-dimension series per unit of CPU.
Eigen::MatrixXd efficiency_data(int n, RngStream& rng) {
  Eigen::MatrixXd pts(n, 2);
  const double mx[3] = {0.0, 5.0, 10.0};
  const double my[3] = {0.0, 2.0, -2.0};
  for (int i = 0; i < n; ++i) {
    const int c = rng.uniform_int(3);
    pts(i, 0) = mx[c] + rng.normal();
    pts(i, 1) = my[c] + rng.normal();
  }
  return pts;
}

}  // namespace

namespace {

bool criterion_efficiency_impl(std::string& detail) {
  RngStream drng(2030, 0);
  const mix::Dataset data(efficiency_data(200, drng));
  mix::Hyperparams h = mix::default_hyperparams(data);
  h.k_max = 8;
  const rj::MoveScales scales = rj::MoveScales::defaults(data.ranges);

  const long vanilla_sweeps = 60000;
  const long pop_sweeps = 30000;

  auto vanilla_run = [&](std::uint64_t seed, double* cpu) {
    const mix::TargetCtx ctx{&data, &h, 1.0, true};
    RngStream rng(seed, 1);
    mix::MixtureState state = mix::sample_prior(h, rng, 1, h.k_max);
    std::vector<double> ks;
    ks.reserve(vanilla_sweeps);
    const double t0 = cpu_seconds();
    for (long t = 0; t < vanilla_sweeps; ++t) {
      state = rj::rj_sweep(state, ctx, scales, rng).state;
      ks.push_back(state.k());
    }
    *cpu = cpu_seconds() - t0;
    return ks;
  };

  auto population_run = [&](std::uint64_t seed, double* cpu) {
    const pop::PopCtx ctx{&data, &h, true};
    pop::Ladder ladder = pop::ladder_geometric(8, 2e-3, 1.9);
    RngStream trng(seed, 990);
    const pop::IbaTuneResult tuned =
        pop::ladder_tune_iba(ladder, ctx, scales, 150, trng, 25);
    ladder = tuned.ladder;
    RngStream irng(seed, 500);
    pop::Population popn = pop::make_population(ladder, {}, 0.999, ctx, irng);
    pop::PopRngs rngs(seed, popn.size());
    pop::PopSweepOptions opt;
    opt.snooker = pop::SnookerScales::defaults(data.ranges);
    opt.exchange_after_crossover = true;
    std::vector<double> ks;
    ks.reserve(pop_sweeps);
    const double t0 = cpu_seconds();
    for (long t = 0; t < pop_sweeps; ++t) {
      pop::population_sweep(popn, ctx, scales, opt, rngs);
      ks.push_back(popn.chains[0].state.k());
    }
    *cpu = cpu_seconds() - t0;
    return ks;
  };

  double cpu_v1 = 0.0, cpu_v2 = 0.0, cpu_p = 0.0;
  const std::vector<double> kv1 = vanilla_run(101, &cpu_v1);
  const std::vector<double> kv2 = vanilla_run(202, &cpu_v2);
  const std::vector<double> kp = population_run(303, &cpu_p);

  const diag::EssResult e1 = diag::ess(kv1, 10);
  const diag::EssResult e2 = diag::ess(kv2, 10);
  const diag::EssResult ep = diag::ess(kp, 10);

  const double eff = diag::efficiency_E(
      {ep.ess, static_cast<double>(pop_sweeps), cpu_p},
      {e1.ess, static_cast<double>(vanilla_sweeps), cpu_v1},
      {e2.ess, static_cast<double>(vanilla_sweeps), cpu_v2});

  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "E = %.2f (pop ess %.0f in %.0fs; vanilla ess %.0f/%.0f in "
                "%.0fs/%.0fs)",
                eff, ep.ess, cpu_p, e1.ess, e2.ess, cpu_v1, cpu_v2);
  detail = buf;
  return eff >= 1.2;
}

}  // namespace

namespace {
bool criterion_efficiency(std::string& detail) {
  return criterion_efficiency_impl(detail);
}
}  // namespace
