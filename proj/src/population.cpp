#include "popmcmc/population.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "popmcmc/distributions.hpp"
#include "popmcmc/numerics.hpp"

namespace popmcmc::pop {

void Ladder::validate() const {
  if (zetas.size() < 1) throw std::invalid_argument("Ladder: needs at least one level");
  if (zetas(0) != 1.0) throw std::invalid_argument("Ladder: zeta_1 must be 1");
  for (int i = 0; i < zetas.size(); ++i) {
    if (!(zetas(i) > 0.0) || zetas(i) > 1.0)
      throw std::invalid_argument("Ladder: levels must lie in (0,1]");
    if (i > 0 && !(zetas(i) < zetas(i - 1)))
      throw std::invalid_argument("Ladder: levels must be strictly decreasing");
  }
}

Ladder ladder_geometric(int n, double varsigma, double varphi) {
  if (n < 1) throw std::invalid_argument("ladder_geometric: n must be >= 1");
  if (varsigma < 0.0 || varphi <= 0.0)
    throw std::invalid_argument("ladder_geometric: need varsigma >= 0, varphi > 0");
  Ladder l;
  l.zetas.resize(n);
  l.zetas(0) = 1.0;
  for (int i = 1; i < n; ++i) {
    l.zetas(i) = l.zetas(i - 1) - varsigma * std::pow(varphi, i);
    if (!(l.zetas(i) > 0.0))
      throw std::invalid_argument("ladder_geometric: ladder tail is not positive");
  }
  if (varsigma > 0.0) l.validate();
  return l;
}

void Population::refresh_cache(const PopCtx& ctx) {
  for (auto& c : chains) {
    c.loglik = ctx.loglik(c.state);
    c.logprior = mix::log_prior(c.state, *ctx.hp);
  }
}

std::vector<int> Population::unconstrained_indices() const {
  std::vector<int> idx;
  for (int i = 0; i < size(); ++i)
    if (!chains[i].constrained()) idx.push_back(i);
  return idx;
}

Population make_population(const Ladder& ladder,
                           const std::vector<rj::DimBand>& constrained_bands,
                           double constrained_zeta, const PopCtx& ctx,
                           RngStream& rng) {
  ladder.validate();
  if (!constrained_bands.empty() &&
      (!(constrained_zeta > 0.0) || constrained_zeta > 1.0))
    throw std::invalid_argument("make_population: constrained zeta must lie in (0,1]");
  Population pop;
  const mix::Hyperparams& h = *ctx.hp;
  for (int i = 0; i < ladder.size(); ++i) {
    ChainSlot c;
    c.zeta = ladder.zetas(i);
    c.state = mix::sample_prior(h, rng, 1, h.k_max);
    pop.chains.push_back(std::move(c));
  }
  for (const auto& band : constrained_bands) {
    ChainSlot c;
    c.zeta = constrained_zeta;
    c.band = band;
    const int lo = std::max(band.lo, 1), hi = std::min(band.hi, h.k_max);
    if (lo > hi) throw std::invalid_argument("make_population: empty constraint band");
    c.state = mix::sample_prior(h, rng, lo, hi);
    pop.chains.push_back(std::move(c));
  }
  pop.mutation_weights = Eigen::VectorXd::Constant(pop.size(), 1.0 / pop.size());
  pop.refresh_cache(ctx);
  return pop;
}

// --- exchange ------------------------------------------------------------------

double exchange_log_rho1(double zeta_i, double zeta_l, double ll_i, double ll_l) {
  return (zeta_i - zeta_l) * (ll_l - ll_i);
}

double dr_log_rho2(double log_swap_34, double log_rho1_pseudo,
                   double log_rho1_first) {
  if (!(log_rho1_first < 0.0))
    throw std::domain_error("dr_log_rho2: first-stage move must have been rejectable");
  if (log_rho1_pseudo >= 0.0) return neg_inf;  // pseudo move rejects w.p. 0
  return std::min(0.0, log_swap_34 + log1m_exp(log_rho1_pseudo) -
                           log1m_exp(log_rho1_first));
}

bool exchange_legal(const Population& pop, int i, int l) {
  return pop.chains[i].band.contains(pop.chains[l].state.k()) &&
         pop.chains[l].band.contains(pop.chains[i].state.k());
}

double exchange_log_accept(const Population& pop, int i, int l) {
  if (i == l) throw std::invalid_argument("exchange: chains must differ");
  if (!exchange_legal(pop, i, l)) return neg_inf;
  return exchange_log_rho1(pop.chains[i].zeta, pop.chains[l].zeta,
                           pop.chains[i].loglik, pop.chains[l].loglik);
}

namespace {

void swap_states(Population& pop, int i, int l) {
  std::swap(pop.chains[i].state, pop.chains[l].state);
  std::swap(pop.chains[i].loglik, pop.chains[l].loglik);
  std::swap(pop.chains[i].logprior, pop.chains[l].logprior);
}

}  // namespace

MoveOutcome exchange_basic(Population& pop, int i, int l, RngStream& rng) {
  const double la = exchange_log_accept(pop, i, l);
  const bool acc = std::log(rng.uniform()) < la;
  if (acc) swap_states(pop, i, l);
  return {MoveKind::ExchangeStage1, true, acc, la, i};
}

std::vector<MoveOutcome> exchange_delayed_rejection(Population& pop,
                                                    RngStream& rng) {
  std::vector<MoveOutcome> out;
  const std::vector<int> idx = pop.unconstrained_indices();
  const int m = static_cast<int>(idx.size());
  if (m < 2) return out;

  // stage 1: any unordered pair, uniformly
  const int npairs = m * (m - 1) / 2;
  int pick = rng.uniform_int(npairs);
  int a = 0, b = 1;
  for (int i = 0, c = 0; i < m && c <= pick; ++i)
    for (int j = i + 1; j < m; ++j, ++c)
      if (c == pick) {
        a = idx[i];
        b = idx[j];
      }
  const double log_rho1 = exchange_log_accept(pop, a, b);
  if (std::log(rng.uniform()) < log_rho1) {
    swap_states(pop, a, b);
    out.push_back({MoveKind::ExchangeStage1, true, true, log_rho1, a});
    return out;
  }
  out.push_back({MoveKind::ExchangeStage1, true, false, log_rho1, a});
  if (log_rho1 >= 0.0) return out;  // numerically certain acceptance: no stage 2

  // stage 2: an adjacent pair in ladder order among the unconstrained chains
  const int j2 = rng.uniform_int(m - 1);
  const int c = idx[j2], d = idx[j2 + 1];

  // pseudo move: from theta'' (the stage-2 proposal) re-swap the stage-1 pair
  // log rho1 of re-swapping (a,b) evaluated in theta'' (the stage-2 proposal)
  auto ll_in_swapped = [&](int chain) {
    if (chain == c) return pop.chains[d].loglik;
    if (chain == d) return pop.chains[c].loglik;
    return pop.chains[chain].loglik;
  };
  const double ll = exchange_log_rho1(pop.chains[a].zeta, pop.chains[b].zeta,
                                      ll_in_swapped(a), ll_in_swapped(b));
  const double log_swap_34 = exchange_log_accept(pop, c, d);
  const double log_rho2 = dr_log_rho2(log_swap_34, std::min(0.0, ll), log_rho1);
  const bool acc = std::log(rng.uniform()) < log_rho2;
  if (acc) swap_states(pop, c, d);
  out.push_back({MoveKind::ExchangeStage2, true, acc, log_rho2, c});
  return out;
}

MoveOutcome constrained_exchange(Population& pop, RngStream& rng) {
  std::vector<std::pair<int, int>> legal;
  for (int i = 0; i < pop.size(); ++i) {
    if (!pop.chains[i].constrained()) continue;
    for (int j = 0; j < pop.size(); ++j) {
      if (pop.chains[j].constrained()) continue;
      if (exchange_legal(pop, i, j)) legal.emplace_back(i, j);
    }
  }
  if (legal.empty()) return {MoveKind::ConstrainedExchange, false, false, 0.0, 0};
  const auto [i, j] = legal[rng.uniform_int(static_cast<int>(legal.size()))];
  const double la = exchange_log_accept(pop, i, j);
  const bool acc = std::log(rng.uniform()) < la;
  if (acc) swap_states(pop, i, j);
  return {MoveKind::ConstrainedExchange, true, acc, la, i};
}

// --- crossovers ------------------------------------------------------------------

namespace detail {

Eigen::VectorXd inverse_gap_weights(const Eigen::VectorXd& gaps) {
  Eigen::VectorXd w(gaps.size());
  bool any_zero = false;
  for (int i = 0; i < gaps.size(); ++i)
    if (gaps(i) <= 0.0) any_zero = true;
  for (int i = 0; i < gaps.size(); ++i)
    w(i) = any_zero ? (gaps(i) <= 0.0 ? 1.0 : 0.0) : 1.0 / gaps(i);
  return w;
}

namespace {

// Label-invariant total order so the canonical labelling does not depend on
// the incoming labels even when the leading key ties (ties are measure-zero
// in real runs but the relabelling must still be a deterministic map).
void apply_sorted(mix::MixtureState& s,
                  const std::function<bool(int, int)>& less) {
  const int k = s.k();
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  std::stable_sort(p.begin(), p.end(), less);
  mix::MixtureState t = s;
  for (int j = 0; j < k; ++j) {
    s.weights(j) = t.weights(p[j]);
    s.means[j] = t.means[p[j]];
    s.chols[j] = t.chols[p[j]];
  }
}

std::tuple<double, double, double> tie_key(const mix::MixtureState& s, int j) {
  return {s.weights(j), s.means[j](0), s.chols[j].lower()(0, 0)};
}

}  // namespace

void sort_by_weight_desc(mix::MixtureState& s) {
  apply_sorted(s, [&](int a, int b) {
    if (s.weights(a) != s.weights(b)) return s.weights(a) > s.weights(b);
    return tie_key(s, a) < tie_key(s, b);
  });
}

void sort_by_first_mean(mix::MixtureState& s) {
  apply_sorted(s, [&](int a, int b) {
    if (s.means[a](0) != s.means[b](0)) return s.means[a](0) < s.means[b](0);
    return tie_key(s, a) < tie_key(s, b);
  });
}

// identifiability requires strictly increasing first mean coordinates; a tie
// cannot be inverted deterministically, so it counts as a violation
bool ordered_by_first_mean(const mix::MixtureState& s) {
  for (int j = 0; j + 1 < s.k(); ++j)
    if (s.means[j](0) >= s.means[j + 1](0)) return false;
  return true;
}

void var_dim_cross(const mix::MixtureState& a, const mix::MixtureState& b,
                   mix::MixtureState& a_out, mix::MixtureState& b_out) {
  const int ka = a.k(), kb = b.k();
  if (ka <= kb) throw std::invalid_argument("var_dim_cross: first state must be larger");
  // weights swap wholesale; the high chain keeps its top-k_b components and
  // its lowest-weighted k_a - k_b components move across
  a_out.weights = b.weights;
  a_out.psi = a.psi;
  a_out.means.assign(a.means.begin(), a.means.begin() + kb);
  a_out.chols.assign(a.chols.begin(), a.chols.begin() + kb);

  b_out.weights = a.weights;
  b_out.psi = b.psi;
  b_out.means = b.means;
  b_out.chols = b.chols;
  for (int j = kb; j < ka; ++j) {
    b_out.means.push_back(a.means[j]);
    b_out.chols.push_back(a.chols[j]);
  }
}

void permute_labels(mix::MixtureState& s, RngStream& rng) {
  const int k = s.k();
  const std::vector<int> p = rng.permutation(k);
  mix::MixtureState t = s;
  for (int j = 0; j < k; ++j) {
    s.weights(j) = t.weights(p[j]);
    s.means[j] = t.means[p[j]];
    s.chols[j] = t.chols[p[j]];
  }
}

}  // namespace detail

namespace {

void permute_all(Population& pop, RngStream& rng) {
  for (auto& c : pop.chains) detail::permute_labels(c.state, rng);
}

double var_dim_selection_log_z(const std::vector<int>& dims) {
  double z = 0.0;
  for (size_t i = 0; i < dims.size(); ++i)
    for (size_t j = i + 1; j < dims.size(); ++j) {
      const int dk = dims[i] - dims[j];
      if (dk != 0) z += 1.0 / (static_cast<double>(dk) * dk);
    }
  return std::log(z);
}

}  // namespace

MoveOutcome crossover_variable_dim(Population& pop, const PopCtx& ctx,
                                   RngStream& rng) {
  for (auto& c : pop.chains) detail::sort_by_weight_desc(c.state);

  const std::vector<int> idx = pop.unconstrained_indices();
  std::vector<int> dims(idx.size());
  for (size_t i = 0; i < idx.size(); ++i) dims[i] = pop.chains[idx[i]].state.k();

  std::vector<std::pair<int, int>> pairs;  // positions in idx
  Eigen::VectorXd weights;
  {
    std::vector<double> w;
    for (size_t i = 0; i < idx.size(); ++i)
      for (size_t j = i + 1; j < idx.size(); ++j) {
        const int dk = dims[i] - dims[j];
        if (dk == 0) continue;
        pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
        w.push_back(1.0 / (static_cast<double>(dk) * dk));
      }
    weights = Eigen::Map<Eigen::VectorXd>(w.data(), w.size());
  }
  if (pairs.empty()) {  // v(theta) = 0: do nothing, then permute
    permute_all(pop, rng);
    return {MoveKind::CrossoverVarDim, false, false, 0.0, 0};
  }

  const int pick = rng.categorical(weights);
  auto [pi, pj] = pairs[pick];
  if (dims[pi] < dims[pj]) std::swap(pi, pj);
  const int hi_chain = idx[pi], lo_chain = idx[pj];

  const double log_sel_fwd = std::log(weights(pick)) -
                             var_dim_selection_log_z(dims);

  mix::MixtureState a_prop, b_prop;
  detail::var_dim_cross(pop.chains[hi_chain].state, pop.chains[lo_chain].state,
                        a_prop, b_prop);

  // reverse selection normalizer with the two dimensions swapped
  std::vector<int> dims_rev = dims;
  std::swap(dims_rev[pi], dims_rev[pj]);
  const double log_sel_rev = std::log(weights(pick)) -
                             var_dim_selection_log_z(dims_rev);

  const double ll_a = ctx.loglik(a_prop);
  const double ll_b = ctx.loglik(b_prop);
  const double lp_a = mix::log_prior(a_prop, *ctx.hp);
  const double lp_b = mix::log_prior(b_prop, *ctx.hp);
  ChainSlot& A = pop.chains[hi_chain];
  ChainSlot& B = pop.chains[lo_chain];
  const double la = A.zeta * ll_a + lp_a + B.zeta * ll_b + lp_b -
                    (A.zeta * A.loglik + A.logprior) -
                    (B.zeta * B.loglik + B.logprior) + log_sel_rev - log_sel_fwd;
  const bool acc = std::log(rng.uniform()) < la;
  if (acc) {
    A.state = std::move(a_prop);
    A.loglik = ll_a;
    A.logprior = lp_a;
    B.state = std::move(b_prop);
    B.loglik = ll_b;
    B.logprior = lp_b;
  }
  permute_all(pop, rng);
  return {MoveKind::CrossoverVarDim, true, acc, la, hi_chain};
}

MoveOutcome crossover_fixed_dim(Population& pop, const PopCtx& ctx,
                                RngStream& rng) {
  for (auto& c : pop.chains) detail::sort_by_first_mean(c.state);

  std::vector<std::pair<int, int>> pairs;
  std::vector<double> gaps;
  for (int i = 0; i < pop.size(); ++i)
    for (int j = i + 1; j < pop.size(); ++j) {
      if (pop.chains[i].state.k() != pop.chains[j].state.k()) continue;
      if (pop.chains[i].state.k() < 2) continue;
      pairs.emplace_back(i, j);
      gaps.push_back(std::abs(pop.chains[i].zeta - pop.chains[j].zeta));
    }
  if (pairs.empty()) {
    permute_all(pop, rng);
    return {MoveKind::CrossoverFixedDim, false, false, 0.0, 0};
  }

  const Eigen::VectorXd w = detail::inverse_gap_weights(
      Eigen::Map<Eigen::VectorXd>(gaps.data(), gaps.size()));
  const auto [i, j] = pairs[rng.categorical(w)];
  const int k = pop.chains[i].state.k();

  // crossover position, selected with probability proportional to 1/pos
  Eigen::VectorXd pos_w(k - 1);
  for (int p = 1; p < k; ++p) pos_w(p - 1) = 1.0 / p;
  const int pos = 1 + rng.categorical(pos_w);

  mix::MixtureState a_prop = pop.chains[i].state;
  mix::MixtureState b_prop = pop.chains[j].state;
  for (int c = 0; c < pos; ++c) {
    std::swap(a_prop.means[c], b_prop.means[c]);
    std::swap(a_prop.chols[c], b_prop.chols[c]);
  }

  MoveOutcome out{MoveKind::CrossoverFixedDim, true, false, neg_inf, i};
  // identifiability constraint: reject immediately unless both stay ordered;
  // the pair- and position-selection probabilities cancel otherwise
  if (detail::ordered_by_first_mean(a_prop) &&
      detail::ordered_by_first_mean(b_prop)) {
    const double ll_a = ctx.loglik(a_prop), ll_b = ctx.loglik(b_prop);
    const double lp_a = mix::log_prior(a_prop, *ctx.hp);
    const double lp_b = mix::log_prior(b_prop, *ctx.hp);
    ChainSlot& A = pop.chains[i];
    ChainSlot& B = pop.chains[j];
    const double la = A.zeta * ll_a + lp_a + B.zeta * ll_b + lp_b -
                      (A.zeta * A.loglik + A.logprior) -
                      (B.zeta * B.loglik + B.logprior);
    out.log_hastings = la;
    out.accepted = std::log(rng.uniform()) < la;
    if (out.accepted) {
      A.state = std::move(a_prop);
      A.loglik = ll_a;
      A.logprior = lp_a;
      B.state = std::move(b_prop);
      B.loglik = ll_b;
      B.logprior = lp_b;
    }
  } else {
    // still consume the decision draw so move accounting stays aligned
    out.accepted = std::log(rng.uniform()) < neg_inf;
  }
  permute_all(pop, rng);
  return out;
}

// --- snooker --------------------------------------------------------------------

namespace detail {

Eigen::VectorXd snooker_anchor_weights(const mix::MixtureState& anchor,
                                       const mix::MixtureState& current) {
  const int ka = anchor.k(), kc = current.k();
  Eigen::VectorXd w(ka);
  for (int j = 0; j < ka; ++j) {
    double acc = 0.0;
    for (int l = 0; l < kc; ++l) {
      acc += mahalanobis_sq(anchor.means[j], current.means[l], anchor.chols[j]) +
             mahalanobis_sq(current.means[l], anchor.means[j], current.chols[l]);
    }
    w(j) = acc / kc;
  }
  if (w.sum() <= 0.0) w.setOnes();
  return w;
}

double snooker_log_q(const mix::MixtureState& anchor,
                     const Eigen::VectorXd& hbar_w, const Eigen::VectorXd& mu,
                     const SpdChol& phi, const SnookerScales& sc) {
  const int ka = anchor.k();
  const int q = static_cast<int>(mu.size());
  const SpdChol prop_chol(Eigen::MatrixXd(sc.proposal_sigma.asDiagonal()));
  Eigen::VectorXd terms(ka);
  const double logz = std::log(hbar_w.sum());
  const Eigen::MatrixXd lam = phi.matrix();
  for (int j = 0; j < ka; ++j) {
    const double comp =
        log_pdf(dist::MvNormal{anchor.means[j], prop_chol}, mu) +
        log_pdf(dist::InvWishart{2.0 * q + 3.0, anchor.chols[j].matrix()}, lam);
    terms(j) = std::log(hbar_w(j)) - logz + comp;
  }
  return log_sum_exp(terms);
}

}  // namespace detail

namespace {

struct SnookerCounts {
  int mb = 0, md = 0;
  double b() const { return mb == 0 ? 0.0 : (md == 0 ? 1.0 : 0.5); }
  double d() const { return md == 0 ? 0.0 : (mb == 0 ? 1.0 : 0.5); }
};

SnookerCounts snooker_counts(const Population& pop, int k_max) {
  SnookerCounts c;
  for (int i = 0; i < pop.size(); ++i) {
    if (pop.chains[i].constrained()) continue;
    if (pop.chains[i].state.k() < k_max) ++c.mb;
    if (pop.chains[i].state.k() > 1) ++c.md;
  }
  return c;
}

int pick_anchor(const Population& pop, int current, RngStream& rng) {
  Eigen::VectorXd gaps(pop.size() - 1);
  std::vector<int> ids;
  int t = 0;
  for (int i = 0; i < pop.size(); ++i) {
    if (i == current) continue;
    gaps(t++) = std::abs(pop.chains[i].zeta - pop.chains[current].zeta);
    ids.push_back(i);
  }
  const Eigen::VectorXd w = detail::inverse_gap_weights(gaps);
  return ids[rng.categorical(w)];
}

}  // namespace

MoveOutcome snooker_birth_death(Population& pop, const PopCtx& ctx,
                                const SnookerScales& scales_in, RngStream& rng) {
  const mix::Hyperparams& h = *ctx.hp;
  const SnookerScales scales = scales_in.proposal_sigma.size() > 0
                                   ? scales_in
                                   : SnookerScales::defaults(ctx.data->ranges);
  const SnookerCounts counts = snooker_counts(pop, h.k_max);
  if (counts.mb == 0 && counts.md == 0)
    return {MoveKind::SnookerBirth, false, false, 0.0, 0};
  if (pop.size() < 2) return {MoveKind::SnookerBirth, false, false, 0.0, 0};

  const bool do_birth = rng.uniform() < counts.b();
  if (do_birth) {
    std::vector<int> eligible;
    for (int i = 0; i < pop.size(); ++i)
      if (!pop.chains[i].constrained() && pop.chains[i].state.k() < h.k_max)
        eligible.push_back(i);
    const int c = eligible[rng.uniform_int(static_cast<int>(eligible.size()))];
    const int a = pick_anchor(pop, c, rng);
    ChainSlot& chain = pop.chains[c];
    const mix::MixtureState& anchor = pop.chains[a].state;
    const int k = chain.state.k();

    const double w_new = rng.beta(1.0, static_cast<double>(k));
    const Eigen::VectorXd hbar = detail::snooker_anchor_weights(anchor, chain.state);
    const int comp = rng.categorical(hbar);
    const SpdChol prop_chol(Eigen::MatrixXd(scales.proposal_sigma.asDiagonal()));
    const Eigen::VectorXd mu_new =
        sample(dist::MvNormal{anchor.means[comp], prop_chol}, rng);
    const Eigen::MatrixXd lam_new = sample(
        dist::InvWishart{2.0 * chain.state.q() + 3.0, anchor.chols[comp].matrix()},
        rng);
    SpdChol phi_new = SpdChol::identity(chain.state.q());
    try {
      phi_new = chol_factor(lam_new);
    } catch (const NotPositiveDefinite&) {
      return {MoveKind::SnookerBirth, true, false, neg_inf, c};
    }

    mix::MixtureState prop = chain.state;
    prop.weights.conservativeResize(k + 1);
    prop.weights.head(k) = chain.state.weights * (1.0 - w_new);
    prop.weights(k) = w_new;
    prop.means.push_back(mu_new);
    prop.chols.push_back(phi_new);

    const double log_q = detail::snooker_log_q(anchor, hbar, mu_new, phi_new, scales);
    const double log_prior_new = mix::log_prior_mean(mu_new, h) +
                                 mix::log_prior_lambda(phi_new, chain.state.psi, h);

    SnookerCounts rev = counts;
    if (k + 1 == h.k_max) --rev.mb;
    if (k == 1) ++rev.md;  // the chain becomes death-eligible

    const double ll_new = ctx.loglik(prop);
    const double la = rj::log_birth_accept(
        chain.zeta * (ll_new - chain.loglik), k, w_new, h.delta, log_prior_new,
        log_q, std::log(counts.b()), std::log(rev.d()),
        std::log(static_cast<double>(counts.mb)),
        std::log(static_cast<double>(rev.md)));
    const bool acc = std::log(rng.uniform()) < la;
    if (acc) {
      chain.state = std::move(prop);
      chain.loglik = ll_new;
      chain.logprior = mix::log_prior(chain.state, h);
    }
    return {MoveKind::SnookerBirth, true, acc, la, c};
  }

  // death
  std::vector<int> eligible;
  for (int i = 0; i < pop.size(); ++i)
    if (!pop.chains[i].constrained() && pop.chains[i].state.k() > 1)
      eligible.push_back(i);
  const int c = eligible[rng.uniform_int(static_cast<int>(eligible.size()))];
  ChainSlot& chain = pop.chains[c];
  const int k = chain.state.k();
  const int die = rng.uniform_int(k);
  const int a = pick_anchor(pop, c, rng);  // redundant anchor for the reverse birth
  const mix::MixtureState& anchor = pop.chains[a].state;

  const double w_die = chain.state.weights(die);
  if (!(w_die < 1.0)) return {MoveKind::SnookerDeath, true, false, neg_inf, c};

  mix::MixtureState red = chain.state;
  red.weights.resize(k - 1);
  int jj = 0;
  for (int j = 0; j < k; ++j)
    if (j != die) red.weights(jj++) = chain.state.weights(j) / (1.0 - w_die);
  red.means.erase(red.means.begin() + die);
  red.chols.erase(red.chols.begin() + die);

  const Eigen::VectorXd hbar = detail::snooker_anchor_weights(anchor, red);
  const double log_q = detail::snooker_log_q(
      anchor, hbar, chain.state.means[die], chain.state.chols[die], scales);
  const double log_prior_die =
      mix::log_prior_mean(chain.state.means[die], h) +
      mix::log_prior_lambda(chain.state.chols[die], chain.state.psi, h);

  SnookerCounts rev = counts;  // counts in the reduced configuration
  if (k == h.k_max) ++rev.mb;
  if (k - 1 == 1) --rev.md;

  const double ll_red = ctx.loglik(red);
  const double la_birth = rj::log_birth_accept(
      chain.zeta * (chain.loglik - ll_red), k - 1, w_die, h.delta, log_prior_die,
      log_q, std::log(rev.b()), std::log(counts.d()),
      std::log(static_cast<double>(rev.mb)),
      std::log(static_cast<double>(counts.md)));
  const double la = -la_birth;
  const bool acc = std::log(rng.uniform()) < la;
  if (acc) {
    chain.state = std::move(red);
    chain.loglik = ll_red;
    chain.logprior = mix::log_prior(chain.state, h);
  }
  return {MoveKind::SnookerDeath, true, acc, la, c};
}

// --- driver ---------------------------------------------------------------------

std::vector<MoveOutcome> population_sweep(Population& pop, const PopCtx& ctx,
                                          const rj::MoveScales& scales,
                                          const PopSweepOptions& opt,
                                          PopRngs& rngs) {
  std::vector<MoveOutcome> out;

  // step 1: mutation of one chain drawn from tau
  const int i = rngs.control.categorical(pop.mutation_weights);
  ChainSlot& chain = pop.chains[i];
  const mix::TargetCtx cctx = ctx.chain_ctx(chain.zeta);
  rj::RjOptions ropt;
  ropt.band = chain.band;
  const rj::SweepResult r =
      rj::rj_sweep(chain.state, cctx, scales, rngs.chains[i], ropt);
  chain.state = r.state;
  chain.loglik = r.loglik;
  chain.logprior = r.logprior;
  for (auto o : r.outcomes) {
    o.chain = i;
    out.push_back(o);
  }

  if (pop.size() >= 2) {
    // step 2: coin between crossover (step 3) and snooker (step 4)
    if (rngs.control.uniform() < 0.5) {
      MoveOutcome mo;
      if (rngs.control.uniform() < 0.5)
        mo = crossover_variable_dim(pop, ctx, rngs.control);
      else
        mo = crossover_fixed_dim(pop, ctx, rngs.control);
      out.push_back(mo);
      if (opt.exchange_after_crossover)
        out.push_back(exchange_basic(pop, 0, 1, rngs.control));
    } else {
      out.push_back(snooker_birth_death(pop, ctx, opt.snooker, rngs.control));
    }

    // step 5: delayed-rejection exchange, then the constrained variant
    for (const auto& o : exchange_delayed_rejection(pop, rngs.control))
      out.push_back(o);
    bool any_constrained = false;
    for (const auto& c : pop.chains) any_constrained |= c.constrained();
    if (any_constrained) out.push_back(constrained_exchange(pop, rngs.control));
  }
  return out;
}

}  // namespace popmcmc::pop
