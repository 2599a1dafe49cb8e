#include "popmcmc/runner.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "popmcmc/csv.hpp"
#include "popmcmc/diagnostics.hpp"
#include "popmcmc/finite_kernel.hpp"
#include "popmcmc/ladder_tuning.hpp"
#include "popmcmc/mixture_model.hpp"
#include "popmcmc/population.hpp"
#include "popmcmc/preprocess.hpp"
#include "popmcmc/rj_moves.hpp"
#include "popmcmc/simulated_tempering.hpp"
#include "popmcmc/trace.hpp"
#include "popmcmc/varsel.hpp"

namespace popmcmc::harness {

void require_finite_target(double log_target, const std::string& dump_path,
                           const std::vector<int>& chain_ks, long sweep) {
  if (std::isfinite(log_target)) return;
  std::ofstream dump(dump_path);
  dump << "non-finite log target at sweep " << sweep << "\nchain k values:";
  for (int k : chain_ks) dump << ' ' << k;
  dump << '\n';
  throw NanTarget("non-finite log target at sweep " + std::to_string(sweep));
}

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunIo {
  fs::path out;
  json summary;

  explicit RunIo(const RunConfig& cfg) : out(cfg.out_dir) {
    fs::create_directories(out);
    std::ofstream echo(out / "config_echo.cfg", std::ios::binary);
    echo << cfg.raw_text;
    summary["experiment"] = experiment_name(cfg.kind);
    summary["seed"] = cfg.seed;
    summary["sweeps"] = cfg.sweeps;
  }

  void finish(double cpu_seconds) const {
    std::ofstream s(out / "summary.json");
    s << summary.dump(2) << '\n';
    json t;
    t["cpu_seconds"] = cpu_seconds;
    std::ofstream tf(out / "timing.json");
    tf << t.dump(2) << '\n';
  }
};

json move_table(const std::array<diag::MoveCounter, move_kind_count>& counters) {
  json table = json::object();
  for (int k = 0; k < move_kind_count; ++k) {
    if (counters[k].proposed == 0) continue;  // absent, not zero
    json entry;
    entry["proposed"] = counters[k].proposed;
    entry["accepted"] = counters[k].accepted;
    entry["acceptance_rate"] = static_cast<double>(counters[k].accepted) /
                               static_cast<double>(counters[k].proposed);
    table[std::string(move_kind_name(static_cast<MoveKind>(k)))] = entry;
  }
  return table;
}

json ess_block(const diag::EssResult& r) {
  json j;
  j["ess"] = r.ess;
  j["samples"] = r.samples;
  j["lag"] = r.lag;
  j["denominator"] = r.denominator;
  j["degenerate"] = r.degenerate;
  j["clipped"] = r.clipped;
  return j;
}

mix::Dataset load_dataset(const RunConfig& cfg) {
  if (cfg.data_path.empty())
    throw std::invalid_argument("this experiment requires data = <csv path>");
  Eigen::MatrixXd raw = read_csv_matrix(cfg.data_path);
  const long l = cfg.get_int("preprocess", "l", 0);
  const long q = cfg.get_int("preprocess", "q", 0);
  if (l > 0 && q > 0) {
    RngStream rng(cfg.seed, 900);
    return mix::preprocess(raw, static_cast<int>(l), static_cast<int>(q), rng);
  }
  return mix::Dataset(std::move(raw));
}

mix::Hyperparams hyper_for(const RunConfig& cfg, const mix::Dataset& data) {
  mix::Hyperparams h = mix::default_hyperparams(data);
  h.k_max = static_cast<int>(cfg.get_int("hyper", "k_max", h.k_max));
  h.dof = cfg.get_num("hyper", "dof", h.dof);
  h.delta = cfg.get_num("hyper", "delta", h.delta);
  h.validate();
  return h;
}

rj::MoveScales scales_for(const RunConfig& cfg, const mix::Dataset& data) {
  rj::MoveScales s = rj::MoveScales::defaults(data.ranges);
  s.cauchy_offdiag = cfg.get_num("scales", "cauchy_offdiag", s.cauchy_offdiag);
  s.lognorm_diag_sigma =
      cfg.get_num("scales", "lognorm_diag_sigma", s.lognorm_diag_sigma);
  s.logit_weight_sigma =
      cfg.get_num("scales", "logit_weight_sigma", s.logit_weight_sigma);
  s.split_gamma = cfg.get_num("scales", "split_gamma", s.split_gamma);
  s.split_sigma_phi = cfg.get_num("scales", "split_sigma_phi", s.split_sigma_phi);
  s.split_sigma_diag =
      cfg.get_num("scales", "split_sigma_diag", s.split_sigma_diag);
  const double mean_scale = cfg.get_num("scales", "cauchy_mean_factor", 0.0);
  if (mean_scale > 0.0) s.cauchy_mean = data.ranges * mean_scale;
  const double mu_scale = cfg.get_num("scales", "split_sigma_mu_factor", 0.0);
  if (mu_scale > 0.0) s.split_sigma_mu = data.ranges * mu_scale;
  return s;
}

MoveKind trans_kind_for_chain(const std::vector<MoveOutcome>& outcomes,
                              int chain, bool* proposed, bool* accepted) {
  // prefer the chain's own trans-dimensional mutation, then a population
  // move attributed to it
  static constexpr MoveKind mutation[] = {MoveKind::Birth, MoveKind::Death,
                                          MoveKind::Split, MoveKind::Combine};
  static constexpr MoveKind popmoves[] = {
      MoveKind::SnookerBirth, MoveKind::SnookerDeath, MoveKind::CrossoverVarDim,
      MoveKind::CrossoverFixedDim};
  for (const auto& o : outcomes)
    for (MoveKind k : mutation)
      if (o.kind == k && o.chain == chain) {
        *proposed = o.proposed;
        *accepted = o.accepted;
        return o.kind;
      }
  for (const auto& o : outcomes)
    for (MoveKind k : popmoves)
      if (o.kind == k && o.chain == chain && o.proposed) {
        *proposed = o.proposed;
        *accepted = o.accepted;
        return o.kind;
      }
  *proposed = false;
  *accepted = false;
  return MoveKind::None;
}

// ---------------------------------------------------------------------------

int run_mixture_vanilla(const RunConfig& cfg, RunIo& io) {
  const mix::Dataset data = load_dataset(cfg);
  const mix::Hyperparams h = hyper_for(cfg, data);
  const rj::MoveScales scales = scales_for(cfg, data);
  const bool prior_only = cfg.get_int("", "likelihood_exponent_zero", 0) != 0;
  const double zeta = cfg.get_num("", "zeta", 1.0);
  const mix::TargetCtx ctx{&data, &h, zeta, !prior_only};

  RngStream rng(cfg.seed, 1);
  mix::MixtureState state = mix::sample_prior(h, rng, 1, h.k_max);
  TraceWriter trace((io.out / "trace.csv").string(),
                    cfg.get_int("", "trace_stride", 1));
  diag::MoveTally tally;
  std::vector<double> k_series;
  k_series.reserve(cfg.sweeps);

  for (long t = 1; t <= cfg.sweeps; ++t) {
    const rj::SweepResult r = rj::rj_sweep(state, ctx, scales, rng);
    state = r.state;
    tally.record_sweep(r.outcomes);
    const double lt = (prior_only ? 0.0 : zeta * r.loglik) + r.logprior;
    require_finite_target(lt, (io.out / "abort_dump.txt").string(), {state.k()}, t);
    k_series.push_back(state.k());
    bool prop = false, acc = false;
    const MoveKind kind = trans_kind_for_chain(r.outcomes, 0, &prop, &acc);
    trace.write({t, 0, state.k(), lt, kind, prop, acc});
  }

  const int lag = static_cast<int>(cfg.get_int("", "ess_lag", 10));
  io.summary["moves"] = move_table(tally.pooled);
  if (static_cast<long>(k_series.size()) > lag)
    io.summary["ess"]["k"] = ess_block(diag::ess(k_series, lag));
  const long thin = cfg.get_int("", "thin", 1);
  if (thin > 1) {
    std::vector<double> thinned;
    for (size_t i = 0; i < k_series.size(); i += thin)
      thinned.push_back(k_series[i]);
    if (static_cast<long>(thinned.size()) > lag)
      io.summary["ess"]["k_thinned"] = ess_block(diag::ess(thinned, lag));
  }
  io.summary["final"]["k"] = k_series.back();
  return 0;
}

int run_mixture_population(const RunConfig& cfg, RunIo& io) {
  const mix::Dataset data = load_dataset(cfg);
  const mix::Hyperparams h = hyper_for(cfg, data);
  const rj::MoveScales scales = scales_for(cfg, data);
  const bool prior_only = cfg.get_int("", "likelihood_exponent_zero", 0) != 0;
  const pop::PopCtx ctx{&data, &h, !prior_only};

  pop::Ladder ladder;
  const long n_ladder = cfg.get_int("ladder", "n", 20);
  const double varsigma = cfg.get_num("ladder", "varsigma", 1e-6);
  const double varphi = cfg.get_num("ladder", "varphi", 1.85);
  ladder = pop::ladder_geometric(static_cast<int>(n_ladder), varsigma, varphi);
  if (cfg.get_int("ladder", "tune", 0) != 0) {
    RngStream trng(cfg.seed, 990);
    const auto tuned = pop::ladder_tune_iba(
        ladder, ctx, scales, static_cast<int>(cfg.get_int("ladder", "pilot", 200)),
        trng, static_cast<int>(cfg.get_int("ladder", "tune_rounds", 40)));
    ladder = tuned.ladder;
    io.summary["ladder"]["tuned"] = true;
    io.summary["ladder"]["tune_converged"] = tuned.converged;
  }
  {
    std::vector<double> zs(ladder.zetas.data(),
                           ladder.zetas.data() + ladder.size());
    io.summary["ladder"]["zetas"] = zs;
  }

  // five constrained chains at 0.999 by default; bands = none disables them
  std::vector<rj::DimBand> bands;
  if (!cfg.has("constraints", "bands")) {
    for (const auto& [lo, hi] : std::initializer_list<std::pair<int, int>>{
             {2, 4}, {4, 6}, {5, 7}, {7, 9}, {9, 11}})
      if (hi <= hyper_for(cfg, data).k_max) bands.push_back({lo, hi});
  } else if (cfg.get("constraints", "bands", "") != "none") {
    for (const auto& [lo, hi] : cfg.get_bands("constraints", "bands"))
      bands.push_back({lo, hi});
  }
  const double czeta = cfg.get_num("constraints", "zeta", 0.999);

  RngStream init_rng(cfg.seed, 500);
  pop::Population popn = pop::make_population(ladder, bands, czeta, ctx, init_rng);
  pop::PopRngs rngs(cfg.seed, popn.size());
  pop::PopSweepOptions opt;
  opt.snooker = pop::SnookerScales::defaults(data.ranges);
  opt.exchange_after_crossover =
      cfg.get_int("population", "exchange_after_crossover", 0) != 0;

  TraceWriter trace((io.out / "trace.csv").string(),
                    cfg.get_int("", "trace_stride", 1));
  diag::MoveTally tally;
  std::vector<double> k_series;
  k_series.reserve(cfg.sweeps);

  for (long t = 1; t <= cfg.sweeps; ++t) {
    const auto outcomes = pop::population_sweep(popn, ctx, scales, opt, rngs);
    tally.record_sweep(outcomes);
    std::vector<int> ks;
    for (const auto& c : popn.chains) ks.push_back(c.state.k());
    for (int i = 0; i < popn.size(); ++i) {
      const double lt = popn.tempered(i);
      require_finite_target(lt, (io.out / "abort_dump.txt").string(), ks, t);
      bool prop = false, acc = false;
      const MoveKind kind = trans_kind_for_chain(outcomes, i, &prop, &acc);
      trace.write({t, i, ks[i], lt, kind, prop, acc});
    }
    k_series.push_back(popn.chains[0].state.k());
  }

  const int lag = static_cast<int>(cfg.get_int("", "ess_lag", 10));
  io.summary["moves"] = move_table(tally.pooled);
  io.summary["chains"] = popn.size();
  io.summary["exchange"]["sweeps_with_accepted_exchange_fraction"] =
      tally.exchange_sweep_fraction();
  if (static_cast<long>(k_series.size()) > lag)
    io.summary["ess"]["k_chain0"] = ess_block(diag::ess(k_series, lag));
  const long thin = cfg.get_int("", "thin", 1);
  if (thin > 1) {
    std::vector<double> thinned;
    for (size_t i = 0; i < k_series.size(); i += thin)
      thinned.push_back(k_series[i]);
    if (static_cast<long>(thinned.size()) > lag)
      io.summary["ess"]["k_chain0_thinned"] = ess_block(diag::ess(thinned, lag));
  }
  json finals = json::array();
  for (const auto& c : popn.chains) finals.push_back(c.state.k());
  io.summary["final"]["k_per_chain"] = finals;
  return 0;
}

int run_mixture_st(const RunConfig& cfg, RunIo& io) {
  const mix::Dataset data = load_dataset(cfg);
  const mix::Hyperparams h = hyper_for(cfg, data);
  const rj::MoveScales scales = scales_for(cfg, data);
  const bool prior_only = cfg.get_int("", "likelihood_exponent_zero", 0) != 0;
  const pop::PopCtx ctx{&data, &h, !prior_only};

  const pop::StConfig st = pop::StConfig::reciprocal(
      static_cast<int>(cfg.get_int("st", "levels", 25)),
      cfg.get_num("st", "step", 1e-4));

  RngStream rng(cfg.seed, 1);
  mix::MixtureState state = mix::sample_prior(h, rng, 1, h.k_max);
  int zidx = 0;
  TraceWriter trace((io.out / "trace.csv").string(),
                    cfg.get_int("", "trace_stride", 1));
  diag::MoveTally tally;
  std::vector<double> k_series;
  Eigen::VectorXd visits = Eigen::VectorXd::Zero(st.size());

  for (long t = 1; t <= cfg.sweeps; ++t) {
    const pop::StSweepResult r =
        pop::simulated_tempering_sweep(state, zidx, st, ctx, scales, rng);
    state = r.state;
    zidx = r.zeta_index;
    tally.record_sweep(r.outcomes);
    visits(zidx) += 1.0;
    k_series.push_back(state.k());
    const double lt =
        (prior_only ? 0.0 : st.zetas(zidx) * r.loglik) + r.logprior;
    require_finite_target(lt, (io.out / "abort_dump.txt").string(), {state.k()}, t);
    bool prop = false, acc = false;
    const MoveKind kind = trans_kind_for_chain(r.outcomes, 0, &prop, &acc);
    trace.write({t, 0, state.k(), lt, kind, prop, acc});
  }

  const int lag = static_cast<int>(cfg.get_int("", "ess_lag", 10));
  io.summary["moves"] = move_table(tally.pooled);
  if (static_cast<long>(k_series.size()) > lag)
    io.summary["ess"]["k"] = ess_block(diag::ess(k_series, lag));
  std::vector<double> vfrac(visits.data(), visits.data() + visits.size());
  for (auto& v : vfrac) v /= cfg.sweeps;
  io.summary["st"]["level_visit_fractions"] = vfrac;
  io.summary["st"]["fraction_at_target"] = vfrac[0];
  return 0;
}

finite::VarselModel varsel_for(const RunConfig& cfg) {
  const std::string which = cfg.get("varsel", "fixture", "bimodal");
  const std::string xpath = cfg.get("varsel", "x", "");
  const std::string ypath = cfg.get("varsel", "y", "");
  if (!xpath.empty() && !ypath.empty()) {
    finite::VarselModel m;
    m.X = read_csv_matrix(xpath);
    m.y = read_csv_matrix(ypath).col(0);
    m.prior_scale = cfg.get_num("varsel", "prior_scale", 100.0);
    m.a = cfg.get_num("varsel", "a", 0.01);
    m.b = cfg.get_num("varsel", "b", 0.01);
    m.validate();
    return m;
  }
  if (which == "mild") return finite::varsel_fixture_mild();
  return finite::varsel_fixture();
}

int run_varsel_run(const RunConfig& cfg, RunIo& io) {
  const finite::VarselModel model = varsel_for(cfg);
  const double zeta = cfg.get_num("varsel", "zeta", 1.0);
  RngStream rng(cfg.seed, 1);
  const Eigen::VectorXd emp =
      finite::simulate_flip_chain(model, zeta, static_cast<int>(cfg.sweeps), rng);
  const Eigen::VectorXd exact = finite::exact_posterior(model, zeta);

  Eigen::MatrixXd table(emp.size(), 3);
  for (int s = 0; s < emp.size(); ++s) {
    table(s, 0) = s;
    table(s, 1) = exact(s);
    table(s, 2) = emp(s);
  }
  write_csv_matrix((io.out / "posterior_states.csv").string(), table);

  io.summary["varsel"]["tv_empirical_vs_exact"] = finite::tv_distance(emp, exact);
  io.summary["varsel"]["null_mass"] = exact(0);
  io.summary["varsel"]["saturated_mass"] = exact(exact.size() - 1);
  io.summary["varsel"]["k_max"] = model.k_max();
  return 0;
}

int run_varsel_analyze(const RunConfig& cfg, RunIo& io) {
  const finite::VarselModel model = varsel_for(cfg);
  const double zeta_hot = cfg.get_num("varsel", "zeta_hot", 0.01);
  const int n0_base = static_cast<int>(cfg.get_int("varsel", "n0_base", 1000));
  const int step_apps = static_cast<int>(cfg.get_int("varsel", "step_applications", 50));
  const int block_sweeps = static_cast<int>(cfg.get_int("varsel", "block_sweeps", 10));
  if (n0_base % step_apps != 0)
    throw std::invalid_argument("varsel-analyze: step_applications must divide n0_base");

  const finite::FiniteKernel k1 = finite::build_flip_kernel(model, 1.0);
  const finite::FiniteKernel k2 = finite::build_flip_kernel(model, zeta_hot);
  const Eigen::VectorXd pi1 = finite::exact_posterior(model, 1.0);
  const Eigen::VectorXd pi2 = finite::exact_posterior(model, zeta_hot);

  const finite::MinorizationPair vanilla = finite::minorization_pair(k1, n0_base);
  const int n0_rescaled = n0_base / step_apps;
  const long m_vanilla =
      finite::tv_bound_iterations(n0_rescaled, vanilla.epsilon, 0.01);

  const finite::FiniteKernel k2block = k2.power(block_sweeps * model.k_max());
  const finite::MinorizationPair hot = finite::minorization_pair(k2block, 1);
  const finite::PopulationConstant pc =
      finite::population_minorization_constant(hot, pi1, pi2);
  const long m_pop = finite::tv_bound_iterations(1, pc.epsilon_star, 0.01);

  io.summary["varsel"]["null_mass"] = pi1(0);
  io.summary["varsel"]["saturated_mass"] = pi1(pi1.size() - 1);
  io.summary["vanilla"]["n0_base"] = n0_base;
  io.summary["vanilla"]["n0_rescaled"] = n0_rescaled;
  io.summary["vanilla"]["epsilon"] = vanilla.epsilon;
  io.summary["vanilla"]["m_001"] = m_vanilla;
  io.summary["vanilla"]["dobrushin_sweep"] =
      finite::dobrushin(k1.power(model.k_max()));
  io.summary["population"]["zeta_hot"] = zeta_hot;
  io.summary["population"]["block_sweeps"] = block_sweeps;
  io.summary["population"]["epsilon"] = hot.epsilon;
  io.summary["population"]["phi"] = pc.phi;
  io.summary["population"]["rho1"] = pc.rho1;
  io.summary["population"]["epsilon_star"] = pc.epsilon_star;
  io.summary["population"]["m_001"] = m_pop;
  io.summary["population_faster"] = m_pop < m_vanilla;

  // formula-level reproduction of the reference iteration counts
  json ref = json::array();
  ref.push_back({{"n0", 20}, {"epsilon", 3.63e-3},
                 {"m_001", finite::tv_bound_iterations(20, 3.63e-3, 0.01)}});
  ref.push_back({{"n0", 1}, {"epsilon", 6.01e-4},
                 {"m_001", finite::tv_bound_iterations(1, 6.01e-4, 0.01)}});
  io.summary["reference_pairs"] = ref;

  // decay curves for plotting
  const int horizon = static_cast<int>(cfg.get_int("varsel", "horizon", 200));
  Eigen::MatrixXd series(horizon, 3);
  for (int n = 1; n <= horizon; ++n) {
    series(n - 1, 0) = n;
    series(n - 1, 1) = std::pow(1.0 - vanilla.epsilon, n / n0_rescaled);
    series(n - 1, 2) = std::pow(1.0 - pc.epsilon_star, n);
  }
  write_csv_matrix((io.out / "tv_bounds.csv").string(), series);
  return 0;
}

// documented desk toys for the two certificates
void toy_kernels(finite::FiniteKernel& k1, finite::FiniteKernel& k2,
                 Eigen::VectorXd& pi1, Eigen::VectorXd& pi2, double beta) {
  pi1 = Eigen::Vector3d(0.45, 0.35, 0.2);
  pi2 = Eigen::Vector3d(0.4, 0.34, 0.26);
  const int s = 3;
  k1.P.resize(s, s);
  k2.P.resize(s, s);
  for (int i = 0; i < s; ++i) {
    k1.P.row(i) = (1.0 - beta) * pi1.transpose();
    k1.P(i, i) += beta;
    k2.P.row(i) = (1.0 - beta) * pi2.transpose();
    k2.P(i, i) += beta;
  }
}

int run_prop1(const RunConfig& cfg, RunIo& io) {
  finite::FiniteKernel k1, k2;
  Eigen::VectorXd pi1, pi2;
  toy_kernels(k1, k2, pi1, pi2, cfg.get_num("prop1", "beta", 0.05));

  Eigen::MatrixXd km(9, 9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) km.block(i * 3, j * 3, 3, 3) = k1.P(i, j) * k2.P;
  Eigen::VectorXd eta = Eigen::VectorXd::Zero(9);
  eta(8) = 1.0;

  const int n_max = static_cast<int>(cfg.get_int("prop1", "n_max", 50));
  const finite::Prop1Report rep =
      finite::prop1_verify(finite::FiniteKernel{km}, pi1, pi2, eta, n_max);

  io.summary["prop1"]["alpha"] = rep.alpha;
  io.summary["prop1"]["mixing_epsilon"] = rep.eps_mixing;
  io.summary["prop1"]["factor"] = rep.factor;
  io.summary["prop1"]["violations"] = rep.violations;
  io.summary["prop1"]["worst_ratio"] = rep.worst_ratio;

  Eigen::MatrixXd series(n_max, 3);
  for (int n = 0; n < n_max; ++n) {
    series(n, 0) = n + 1;
    series(n, 1) = rep.tv[n];
    series(n, 2) = rep.bound[n];
  }
  write_csv_matrix((io.out / "tv_decay.csv").string(), series);
  return rep.violations == 0 ? 0 : 3;
}

int run_theorem1(const RunConfig& cfg, RunIo& io) {
  finite::FiniteKernel k1, k2;
  Eigen::VectorXd pi1, pi2;
  toy_kernels(k1, k2, pi1, pi2, cfg.get_num("theorem1", "beta", 0.1));
  const int sweeps_each = static_cast<int>(cfg.get_int("theorem1", "sweeps_each", 2));

  const finite::FiniteKernel k1b = k1.power(sweeps_each);
  const finite::MinorizationPair pair = finite::minorization_pair(k2, sweeps_each);
  const finite::PopulationConstant pc =
      finite::population_minorization_constant(pair, pi1, pi2);
  const Eigen::VectorXd nu_star = finite::theorem1_nu_star(k1b, pair, pi1, pi2);
  const finite::FiniteKernel comp =
      finite::build_population_pair_kernel(k1, k2, pi1, pi2, sweeps_each);
  const finite::Theorem1Report rep =
      finite::theorem1_verify(comp, pc.epsilon_star, nu_star);

  io.summary["theorem1"]["theta"] = pc.epsilon_star;
  io.summary["theorem1"]["phi"] = pc.phi;
  io.summary["theorem1"]["rho1"] = pc.rho1;
  io.summary["theorem1"]["violations"] = rep.violations;
  io.summary["theorem1"]["min_slack"] = rep.min_slack;
  io.summary["theorem1"]["argmin_state"] = rep.argmin_state;
  io.summary["theorem1"]["argmin_target"] = rep.argmin_target;
  return rep.violations == 0 ? 0 : 3;
}

}  // namespace

int run(const RunConfig& cfg) {
  try {
    RunIo io(cfg);
    const std::clock_t start = std::clock();
    int status = 0;
    switch (cfg.kind) {
      case ExperimentKind::MixtureVanilla: status = run_mixture_vanilla(cfg, io); break;
      case ExperimentKind::MixturePopulation: status = run_mixture_population(cfg, io); break;
      case ExperimentKind::MixtureSt: status = run_mixture_st(cfg, io); break;
      case ExperimentKind::VarselRun: status = run_varsel_run(cfg, io); break;
      case ExperimentKind::VarselAnalyze: status = run_varsel_analyze(cfg, io); break;
      case ExperimentKind::Prop1Verify: status = run_prop1(cfg, io); break;
      case ExperimentKind::Theorem1Verify: status = run_theorem1(cfg, io); break;
    }
    const double cpu =
        static_cast<double>(std::clock() - start) / CLOCKS_PER_SEC;
    io.finish(cpu);
    return status;
  } catch (const NanTarget& e) {
    std::cerr << "aborted: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace popmcmc::harness
