#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>

#include "popmcmc/finite_kernel.hpp"
#include "popmcmc/numerics.hpp"
#include "popmcmc/varsel.hpp"
#include "quadrature.hpp"

using namespace popmcmc;
using namespace popmcmc::finite;

namespace {

// lazy independence sampler: K(x, .) = (1 - beta) pi + beta delta_x;
// reversible with stationary pi and all-positive rows
FiniteKernel lazy_independence(const Eigen::VectorXd& pi, double beta) {
  const int s = static_cast<int>(pi.size());
  FiniteKernel k{Eigen::MatrixXd::Zero(s, s)};
  for (int i = 0; i < s; ++i) {
    k.P.row(i) = (1.0 - beta) * pi.transpose();
    k.P(i, i) += beta;
  }
  return k;
}

Eigen::VectorXd vec3(double a, double b, double c) {
  Eigen::Vector3d v(a, b, c);
  return v / v.sum();
}

}  // namespace

TEST_CASE("marginal likelihood") {
  SUBCASE("n = 1 null model against a two-dimensional quadrature oracle") {
    VarselModel m;
    m.X = Eigen::MatrixXd::Zero(1, 1);
    m.y = Eigen::VectorXd::Constant(1, 0.7);
    m.prior_scale = 1.0;
    m.a = 1.0;
    m.b = 1.0;
    const double got = marginal_log_likelihood(m, 0u);

    // integrate N(y; g0, s2) N(g0; 0, s2) IG(s2; 1, 1) over (g0, s2)
    const double y = 0.7;
    auto integrand = [&](double g0, double s2) {
      const double l1 = -0.5 * std::log(2 * M_PI * s2) -
                        0.5 * (y - g0) * (y - g0) / s2;
      const double l2 = -0.5 * std::log(2 * M_PI * s2) - 0.5 * g0 * g0 / s2;
      const double l3 = -2.0 * std::log(s2) - 1.0 / s2;  // IG(1,1)
      return std::exp(l1 + l2 + l3);
    };
    const double want = oracle::integrate_positive(
        [&](double s2) {
          return oracle::integrate_real_line(
              [&](double g0) { return integrand(g0, s2); }, 200);
        },
        200);
    CHECK(got == doctest::Approx(std::log(want)).epsilon(1e-6));
  }

  SUBCASE("row permutations of X leave the marginal unchanged for y = 0") {
    RngStream rng(17, 0);
    VarselModel m;
    m.X.resize(20, 5);
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 5; ++j) m.X(i, j) = rng.normal();
    m.y = Eigen::VectorXd::Zero(20);
    VarselModel p = m;
    const std::vector<int> perm = rng.permutation(20);
    for (int i = 0; i < 20; ++i) p.X.row(i) = m.X.row(perm[i]);
    for (std::uint32_t theta : {0u, 3u, 17u, 31u})
      CHECK(marginal_log_likelihood(m, theta) ==
            doctest::Approx(marginal_log_likelihood(p, theta)).epsilon(1e-12));
  }

  SUBCASE("enumeration of prior times marginal matches the posterior normalizer") {
    const VarselModel m = varsel_fixture_mild();
    const int S = 1 << m.k_max();
    Eigen::VectorXd raw(S);
    for (int s = 0; s < S; ++s)
      raw(s) = marginal_log_likelihood(m, s) + varsel_log_prior(s, m.k_max());
    const double shift = raw.maxCoeff();
    Eigen::VectorXd direct = (raw.array() - shift).exp();
    direct /= direct.sum();
    const Eigen::VectorXd post = exact_posterior(m, 1.0);
    CHECK((direct - post).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("variable-selection prior") {
  CHECK(varsel_log_prior(0u, 8) == doctest::Approx(-std::log(9.0)).epsilon(1e-14));
  CHECK(varsel_log_prior(0b10101010u, 8) ==
        doctest::Approx(-std::log(9.0) - std::log(70.0)).epsilon(1e-12));
  double total = 0.0;
  for (int s = 0; s < 256; ++s) total += std::exp(varsel_log_prior(s, 8));
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("flip kernel") {
  SUBCASE("flat likelihood leaves the prior invariant") {
    VarselModel m;
    m.X = Eigen::MatrixXd::Zero(10, 4);  // all-zero design: constant marginal
    m.y = Eigen::VectorXd::LinSpaced(10, -1.0, 1.0);
    const FiniteKernel k = build_flip_kernel(m, 0.7);
    k.validate();
    const Eigen::VectorXd pi = k.stationary();
    for (int s = 0; s < 16; ++s)
      CHECK(pi(s) == doctest::Approx(std::exp(varsel_log_prior(s, 4))).epsilon(1e-10));
    // reversibility with respect to the prior
    for (int a = 0; a < 16; ++a)
      for (int b = 0; b < 16; ++b)
        CHECK(pi(a) * k.P(a, b) == doctest::Approx(pi(b) * k.P(b, a)).epsilon(1e-12));
  }

  SUBCASE("rows sum to one on a random instance") {
    const VarselModel m = varsel_fixture_mild();
    const FiniteKernel k = build_flip_kernel(m, 1.0);
    CHECK_NOTHROW(k.validate(1e-12));
  }

  SUBCASE("stationary distribution equals the enumerated posterior") {
    const VarselModel m = varsel_fixture_mild();
    const FiniteKernel k = build_flip_kernel(m, 1.0);
    const Eigen::VectorXd pi = k.stationary();
    const Eigen::VectorXd post = exact_posterior(m, 1.0);
    CHECK((pi - post).cwiseAbs().maxCoeff() < 1e-10);
  }

  SUBCASE("prior limit of the tempered posterior") {
    const VarselModel m = varsel_fixture_mild();
    const Eigen::VectorXd p0 = exact_posterior(m, 0.0);
    for (int s = 0; s < 256; ++s)
      CHECK(p0(s) == doctest::Approx(std::exp(varsel_log_prior(s, 8))).epsilon(1e-12));
  }
}

TEST_CASE("bimodal fixture regenerates its certificate") {
  const VarselModel m = varsel_fixture();
  const Eigen::VectorXd post = exact_posterior(m, 1.0);
  const int S = static_cast<int>(post.size());
  const double null_mass = post(0), sat_mass = post(S - 1);
  CHECK(null_mass > 0.4);
  CHECK(null_mass < 0.7);
  CHECK(sat_mass > 0.2);
  CHECK(sat_mass < 0.5);
  // both are flip-graph modes: every one-bit neighbour carries less mass
  for (int j = 0; j < m.k_max(); ++j) {
    CHECK(post(0) > post(1 << j));
    CHECK(post(S - 1) > post((S - 1) ^ (1 << j)));
  }
}

TEST_CASE("minorization pairs") {
  SUBCASE("identical rows give epsilon 1 and nu the common row") {
    const Eigen::VectorXd pi = vec3(0.5, 0.3, 0.2);
    const FiniteKernel k = lazy_independence(pi, 0.0);
    const MinorizationPair p = minorization_pair(k, 1);
    CHECK(p.epsilon == doctest::Approx(1.0).epsilon(1e-14));
    CHECK((p.nu - pi).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("two-state column minimum arithmetic") {
    FiniteKernel k{(Eigen::MatrixXd(2, 2) << 0.9, 0.1, 0.2, 0.8).finished()};
    const MinorizationPair p = minorization_pair(k, 1);
    CHECK(p.epsilon == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(p.nu(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(p.nu(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  }
  SUBCASE("certificate re-verifies after powers") {
    const VarselModel m = varsel_fixture_mild();
    const FiniteKernel k = build_flip_kernel(m, 0.5);
    const MinorizationPair p = minorization_pair(k, 16);
    const Eigen::MatrixXd kp = k.power(16).P;
    for (int i = 0; i < kp.rows(); ++i)
      for (int j = 0; j < kp.cols(); ++j)
        CHECK(kp(i, j) >= p.epsilon * p.nu(j) - 1e-12);
  }
}

TEST_CASE("population minorization constant") {
  SUBCASE("equal targets give phi = 1") {
    MinorizationPair pair;
    pair.n0 = 1;
    pair.epsilon = 0.4;
    pair.nu = vec3(0.2, 0.5, 0.3);
    const Eigen::VectorXd pi = vec3(0.1, 0.6, 0.3);
    const PopulationConstant c = population_minorization_constant(pair, pi, pi);
    CHECK(c.rho1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(c.phi == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(c.epsilon_star == doctest::Approx(0.16).epsilon(1e-14));
  }
  SUBCASE("worked two-state example") {
    MinorizationPair pair;
    pair.n0 = 1;
    pair.epsilon = 0.3;
    pair.nu = Eigen::Vector2d(0.5, 0.5);
    const Eigen::VectorXd pi1 = Eigen::Vector2d(0.9, 0.1);
    const Eigen::VectorXd pi2 = Eigen::Vector2d(0.5, 0.5);
    const PopulationConstant c = population_minorization_constant(pair, pi1, pi2);
    CHECK(c.rho1 == doctest::Approx(1.8).epsilon(1e-14));
    CHECK(c.phi == doctest::Approx(0.5 + 0.5 * (0.2 / 1.8)).epsilon(1e-12));
    CHECK(c.epsilon_star <= pair.epsilon * pair.epsilon);
  }
  SUBCASE("constant never exceeds epsilon squared") {
    RngStream rng(23, 0);
    for (int rep = 0; rep < 100; ++rep) {
      MinorizationPair pair;
      pair.n0 = 1;
      pair.epsilon = rng.uniform(0.01, 0.99);
      pair.nu = vec3(rng.uniform(), rng.uniform(), rng.uniform());
      pair.nu /= pair.nu.sum();
      const Eigen::VectorXd pi1 = vec3(rng.uniform(), rng.uniform(), rng.uniform());
      const Eigen::VectorXd pi2 = vec3(rng.uniform(), rng.uniform(), rng.uniform());
      const PopulationConstant c = population_minorization_constant(pair, pi1, pi2);
      CHECK(c.epsilon_star <= pair.epsilon * pair.epsilon + 1e-15);
    }
  }
}

TEST_CASE("tv bound iteration counts") {
  CHECK(tv_bound_iterations(20, 3.63e-3, 0.01) == 25326);
  CHECK(tv_bound_iterations(1, 6.01e-4, 0.01) == 7660);
  CHECK(tv_bound_iterations(1, 0.99, 0.01) == 1);

  SUBCASE("monotone in epsilon and n0") {
    long prev = tv_bound_iterations(5, 0.9, 0.01);
    for (double eps : {0.7, 0.5, 0.2, 0.05, 0.01}) {
      const long cur = tv_bound_iterations(5, eps, 0.01);
      CHECK(cur >= prev);
      prev = cur;
    }
    for (int n0 = 1; n0 < 30; ++n0)
      CHECK(tv_bound_iterations(n0 + 1, 0.1, 0.01) >=
            tv_bound_iterations(n0, 0.1, 0.01));
  }
  SUBCASE("degenerate epsilon errors") {
    CHECK_THROWS_AS(tv_bound_iterations(1, 0.0, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(tv_bound_iterations(1, 1.0, 0.01), std::invalid_argument);
  }
}

TEST_CASE("dobrushin coefficient") {
  const Eigen::VectorXd pi = vec3(0.5, 0.3, 0.2);
  CHECK(dobrushin(lazy_independence(pi, 0.0)) == doctest::Approx(0.0));
  FiniteKernel id{Eigen::MatrixXd::Identity(3, 3)};
  CHECK(dobrushin(id) == doctest::Approx(1.0));
  FiniteKernel k{(Eigen::MatrixXd(2, 2) << 0.9, 0.1, 0.2, 0.8).finished()};
  CHECK(dobrushin(k) == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("mixing condition epsilon") {
  const Eigen::VectorXd pi = vec3(0.5, 0.3, 0.2);
  CHECK(mixing_condition_eps(lazy_independence(pi, 0.0)) == doctest::Approx(1.0));
  FiniteKernel z{(Eigen::MatrixXd(2, 2) << 1.0, 0.0, 0.5, 0.5).finished()};
  CHECK(mixing_condition_eps(z) == 0.0);

  SUBCASE("certificate holds for all triples") {
    const FiniteKernel k = lazy_independence(pi, 0.1);
    const double eps = mixing_condition_eps(k);
    CHECK(eps > 0.0);
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y)
        for (int zi = 0; zi < 3; ++zi)
          CHECK(k.P(x, zi) >= eps * k.P(y, zi) - 1e-15);
  }
}

TEST_CASE("product pair kernel") {
  const Eigen::VectorXd pi1 = vec3(0.6, 0.3, 0.1);
  const Eigen::VectorXd pi2 = vec3(0.4, 0.35, 0.25);
  const FiniteKernel k1 = lazy_independence(pi1, 0.2);
  const FiniteKernel k2 = lazy_independence(pi2, 0.15);

  SUBCASE("pure exchange with equal targets is the deterministic swap") {
    const FiniteKernel ex = build_population_pair_kernel(k1, k1, pi1, pi1, 0);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(ex.P(i * 3 + j, j * 3 + i) == doctest::Approx(1.0).epsilon(1e-14));
  }

  SUBCASE("pure exchange is reversible for the product target") {
    const FiniteKernel ex = build_population_pair_kernel(k1, k2, pi1, pi2, 0);
    Eigen::VectorXd pistar(9);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) pistar(i * 3 + j) = pi1(i) * pi2(j);
    for (int a = 0; a < 9; ++a)
      for (int b = 0; b < 9; ++b)
        CHECK(pistar(a) * ex.P(a, b) ==
              doctest::Approx(pistar(b) * ex.P(b, a)).epsilon(1e-12));
  }

  SUBCASE("stationarity of the full composite") {
    const FiniteKernel comp = build_population_pair_kernel(k1, k2, pi1, pi2, 10);
    Eigen::VectorXd pistar(9);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) pistar(i * 3 + j) = pi1(i) * pi2(j);
    const Eigen::RowVectorXd left = pistar.transpose() * comp.P;
    for (int s = 0; s < 9; ++s)
      CHECK(left(s) == doctest::Approx(pistar(s)).epsilon(1e-9));
    // eigen-solver route as an independent check
    const Eigen::VectorXd stat = comp.stationary();
    CHECK((stat - pistar).cwiseAbs().maxCoeff() < 1e-9);
  }

  SUBCASE("entry guard") {
    const Eigen::VectorXd big = Eigen::VectorXd::Constant(40, 1.0 / 40);
    const FiniteKernel kb = lazy_independence(big, 0.1);
    CHECK_THROWS_AS(build_population_pair_kernel(kb, kb, big, big, 1),
                    std::invalid_argument);
  }
}

TEST_CASE("proposition 1 verification") {
  const Eigen::VectorXd pi1 = vec3(0.45, 0.35, 0.2);
  const Eigen::VectorXd pi2 = vec3(0.4, 0.34, 0.26);
  const FiniteKernel k1 = lazy_independence(pi1, 0.05);
  const FiniteKernel k2 = lazy_independence(pi2, 0.05);

  // product mutation kernel on the pair space
  Eigen::MatrixXd km(9, 9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      km.block(i * 3, j * 3, 3, 3) = k1.P(i, j) * k2.P;
  const FiniteKernel k_m{km};

  Eigen::VectorXd eta = Eigen::VectorXd::Zero(9);
  eta(2 * 3 + 2) = 1.0;  // worst corner start

  const Prop1Report rep = prop1_verify(k_m, pi1, pi2, eta, 50);
  CHECK(rep.eps_mixing > 0.5);
  CHECK(rep.factor < 1.0);
  CHECK(rep.violations == 0);
  CHECK(rep.worst_ratio <= 1.0 + 1e-12);
  CHECK(static_cast<int>(rep.tv.size()) == 50);

  SUBCASE("equal targets have alpha zero") {
    const Prop1Report r2 = prop1_verify(k_m, pi1, pi1, eta, 10);
    CHECK(r2.alpha == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(r2.factor ==
          doctest::Approx(2.0 * (1.0 - r2.eps_mixing)).epsilon(1e-12));
  }

  SUBCASE("bound factor arithmetic") {
    // alpha = 0, eps = 0.9: per-step factor 2(1-0)(1-0.9) = 0.2
    CHECK(2.0 * (1.0 - 0.0) * (1.0 - 0.9) == doctest::Approx(0.2));
  }

  SUBCASE("mixing condition failure is reported") {
    FiniteKernel noisy{(Eigen::MatrixXd(4, 4) << 1, 0, 0, 0, 0, 1, 0, 0, 0, 0,
                        1, 0, 0, 0, 0, 1)
                           .finished()};
    const Eigen::VectorXd p = Eigen::Vector2d(0.5, 0.5);
    CHECK_THROWS_AS(prop1_verify(noisy, p, p, Eigen::VectorXd::Constant(4, 0.25), 5),
                    std::invalid_argument);
  }
}

TEST_CASE("theorem 1 certificate") {
  const Eigen::VectorXd pi1 = vec3(0.5, 0.3, 0.2);
  const Eigen::VectorXd pi2 = vec3(0.42, 0.33, 0.25);
  const FiniteKernel k1 = lazy_independence(pi1, 0.1);
  const FiniteKernel k2 = lazy_independence(pi2, 0.1);
  const int sweeps = 2;

  const FiniteKernel k1b = k1.power(sweeps);
  const MinorizationPair pair = minorization_pair(k2, sweeps);
  const PopulationConstant c = population_minorization_constant(pair, pi1, pi2);
  const Eigen::VectorXd nu_star = theorem1_nu_star(k1b, pair, pi1, pi2);
  CHECK(nu_star.sum() == doctest::Approx(1.0).epsilon(1e-12));

  const FiniteKernel comp =
      build_population_pair_kernel(k1, k2, pi1, pi2, sweeps);
  const Theorem1Report rep = theorem1_verify(comp, c.epsilon_star, nu_star);
  CHECK(rep.violations == 0);
  CHECK(rep.min_slack >= -1e-12);
  CHECK(rep.argmin_state >= 0);
  CHECK(rep.argmin_target >= 0);

  SUBCASE("theta = 0 is vacuous") {
    const Theorem1Report r0 =
        theorem1_verify(comp, 0.0, Eigen::VectorXd::Constant(9, 1.0 / 9));
    CHECK(r0.violations == 0);
    CHECK(r0.min_slack >= 0.0);
  }

  SUBCASE("worked two-state toy has no violations") {
    const Eigen::VectorXd q1 = Eigen::Vector2d(0.9, 0.1);
    const Eigen::VectorXd q2 = Eigen::Vector2d(0.5, 0.5);
    const FiniteKernel h1 = lazy_independence(q1, 0.2);
    const FiniteKernel h2 = lazy_independence(q2, 0.2);
    const MinorizationPair p2 = minorization_pair(h2, 1);
    const PopulationConstant cc = population_minorization_constant(p2, q1, q2);
    const Eigen::VectorXd ns = theorem1_nu_star(h1, p2, q1, q2);
    const FiniteKernel cp = build_population_pair_kernel(h1, h2, q1, q2, 1);
    const Theorem1Report r = theorem1_verify(cp, cc.epsilon_star, ns);
    CHECK(r.violations == 0);
  }
}

TEST_CASE("simulated flip chain approaches the enumerated posterior") {
  const VarselModel m = varsel_fixture_mild();
  const Eigen::VectorXd post = exact_posterior(m, 1.0);
  RngStream rng(2026, 4);
  const Eigen::VectorXd emp = simulate_flip_chain(m, 1.0, 100000, rng);
  CHECK(tv_distance(emp, post) < 0.05);
}
