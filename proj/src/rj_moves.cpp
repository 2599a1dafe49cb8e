#include "popmcmc/rj_moves.hpp"

#include <cmath>
#include <stdexcept>

#include "popmcmc/distributions.hpp"
#include "popmcmc/numerics.hpp"

namespace popmcmc::rj {

namespace {

using mix::MixtureState;
using mix::TargetCtx;

double pow_log_term(double e, double x) {
  if (e == 1.0) return 0.0;
  return (e - 1.0) * std::log(x);
}

// Per-point component log densities (no weights); all totals are O(n k).
// Inactive when the context runs prior-only.
struct LikTable {
  bool active = false;
  Eigen::MatrixXd logf;  // n x k

  static LikTable build(const TargetCtx& ctx, const MixtureState& s) {
    LikTable t;
    t.active = ctx.use_likelihood;
    if (!t.active) return t;
    t.logf.resize(ctx.data->n(), s.k());
    for (int j = 0; j < s.k(); ++j)
      t.logf.col(j) =
          mix::component_log_density(*ctx.data, s.means[j], s.chols[j], ctx.hp->dof);
    return t;
  }

  Eigen::VectorXd column(const TargetCtx& ctx, const Eigen::VectorXd& mu,
                         const SpdChol& chol) const {
    return mix::component_log_density(*ctx.data, mu, chol, ctx.hp->dof);
  }

  // sum_i LSE_j(logw_j + cols_j(i)) over an explicit column set
  double total_over(const std::vector<std::pair<double, const double*>>& cols) const {
    const Eigen::Index n = logf.rows();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double m = neg_inf;
      for (const auto& [lw, p] : cols) m = std::max(m, lw + p[i]);
      double e = 0.0;
      for (const auto& [lw, p] : cols) e += std::exp(lw + p[i] - m);
      acc += m + std::log(e);
    }
    return acc;
  }

  std::vector<std::pair<double, const double*>> base_cols(
      const Eigen::VectorXd& w) const {
    std::vector<std::pair<double, const double*>> cols;
    cols.reserve(w.size());
    for (Eigen::Index j = 0; j < w.size(); ++j)
      cols.emplace_back(std::log(w(j)), logf.col(j).data());
    return cols;
  }

  double total(const Eigen::VectorXd& w) const {
    if (!active) return 0.0;
    return total_over(base_cols(w));
  }

  double total_replace(const Eigen::VectorXd& w, int j,
                       const Eigen::VectorXd& newcol) const {
    if (!active) return 0.0;
    auto cols = base_cols(w);
    cols[j].second = newcol.data();
    return total_over(cols);
  }

  // existing columns weighted by w_new[0..k-1], newcol by w_new[k]
  double total_append(const Eigen::VectorXd& w_new,
                      const Eigen::VectorXd& newcol) const {
    if (!active) return 0.0;
    std::vector<std::pair<double, const double*>> cols;
    cols.reserve(w_new.size());
    for (Eigen::Index j = 0; j + 1 < w_new.size(); ++j)
      cols.emplace_back(std::log(w_new(j)), logf.col(j).data());
    cols.emplace_back(std::log(w_new(w_new.size() - 1)), newcol.data());
    return total_over(cols);
  }

  // drop column j; w_red has k-1 entries aligned with the remaining columns
  double total_drop(const Eigen::VectorXd& w_red, int j) const {
    if (!active) return 0.0;
    std::vector<std::pair<double, const double*>> cols;
    cols.reserve(w_red.size());
    int jj = 0;
    for (int c = 0; c < logf.cols(); ++c) {
      if (c == j) continue;
      cols.emplace_back(std::log(w_red(jj++)), logf.col(c).data());
    }
    return total_over(cols);
  }

  // replace column jstar by col1, append col2; weights w_new sized k+1 with
  // the appended component last
  double total_split(const Eigen::VectorXd& w_new, int jstar,
                     const Eigen::VectorXd& col1,
                     const Eigen::VectorXd& col2) const {
    if (!active) return 0.0;
    std::vector<std::pair<double, const double*>> cols;
    cols.reserve(w_new.size());
    for (int c = 0; c < logf.cols(); ++c)
      cols.emplace_back(std::log(w_new(c)),
                        c == jstar ? col1.data() : logf.col(c).data());
    cols.emplace_back(std::log(w_new(w_new.size() - 1)), col2.data());
    return total_over(cols);
  }

  // replace column a by colm, drop column b; weights w_red sized k-1 aligned
  // with (columns != b, a replaced)
  double total_combine(const Eigen::VectorXd& w_red, int a, int b,
                       const Eigen::VectorXd& colm) const {
    if (!active) return 0.0;
    std::vector<std::pair<double, const double*>> cols;
    cols.reserve(w_red.size());
    int jj = 0;
    for (int c = 0; c < logf.cols(); ++c) {
      if (c == b) continue;
      cols.emplace_back(std::log(w_red(jj++)),
                        c == a ? colm.data() : logf.col(c).data());
    }
    return total_over(cols);
  }

  void replace(int j, const Eigen::VectorXd& col) {
    if (active) logf.col(j) = col;
  }
  void append(const Eigen::VectorXd& col) {
    if (!active) return;
    logf.conservativeResize(Eigen::NoChange, logf.cols() + 1);
    logf.col(logf.cols() - 1) = col;
  }
  void drop(int j) {
    if (!active) return;
    const Eigen::Index k = logf.cols();
    for (Eigen::Index c = j; c + 1 < k; ++c) logf.col(c) = logf.col(c + 1);
    logf.conservativeResize(Eigen::NoChange, k - 1);
  }
};

bool mh_accept(RngStream& rng, double log_alpha) {
  return std::log(rng.uniform()) < log_alpha;
}

double log_prior_phi(const SpdChol& phi, const Eigen::MatrixXd& psi,
                     const mix::Hyperparams& h) {
  return mix::log_prior_lambda(phi, psi, h) + phi.log_chol_jacobian();
}

// effective band limits for trans-moves
struct TransBounds {
  int lo, hi;
  bool can_up(int k) const { return k < hi; }
  bool can_down(int k) const { return k > lo; }
};

TransBounds trans_bounds(const DimBand& band, int k_max) {
  return {std::max(band.lo, 1), std::min(band.hi, k_max)};
}

double up_prob(const TransBounds& b, int k) {
  const bool u = b.can_up(k), d = b.can_down(k);
  if (!u && !d) return -1.0;  // no trans-move possible
  if (!u) return 0.0;
  if (!d) return 1.0;
  return 0.5;
}

}  // namespace

MoveScales MoveScales::defaults(const Eigen::VectorXd& ranges) {
  MoveScales s;
  s.cauchy_mean = ranges / 20.0;
  s.split_sigma_mu = ranges / 10.0;
  return s;
}

void MoveScales::validate(int q) const {
  if (cauchy_mean.size() != q || split_sigma_mu.size() != q)
    throw std::invalid_argument("MoveScales: per-dimension scales must have length q");
  if ((cauchy_mean.array() <= 0).any() || (split_sigma_mu.array() <= 0).any() ||
      cauchy_offdiag <= 0 || lognorm_diag_sigma <= 0 || logit_weight_sigma <= 0 ||
      split_gamma <= 0 || split_sigma_phi <= 0 || split_sigma_diag <= 0)
    throw std::invalid_argument("MoveScales: all scales must be strictly positive");
}

// --- exposed acceptance pieces ----------------------------------------------

double log_accept_mean_coord(const TargetCtx& ctx, const MixtureState& s, int j,
                             int d, double new_value) {
  MixtureState t = s;
  t.means[j](d) = new_value;
  return ctx.tempered(t) - ctx.tempered(s);
}

double log_accept_offdiag(const TargetCtx& ctx, const MixtureState& s, int j,
                          const Eigen::MatrixXd& new_lower) {
  MixtureState t = s;
  t.chols[j] = SpdChol(new_lower);
  return ctx.tempered(t) - ctx.tempered(s);
}

double log_accept_chol_diag(const TargetCtx& ctx, const MixtureState& s, int j,
                            int l, double new_value) {
  if (!(new_value > 0.0)) return neg_inf;
  MixtureState t = s;
  Eigen::MatrixXd lower = s.chols[j].lower();
  const double old_value = lower(l, l);
  lower(l, l) = new_value;
  t.chols[j] = SpdChol(lower);
  const int q = s.q();
  const double zeta_ll =
      ctx.use_likelihood ? ctx.zeta * (ctx.loglik(t) - ctx.loglik(s)) : 0.0;
  const double dprior = mix::log_prior_lambda(t.chols[j], s.psi, *ctx.hp) -
                        mix::log_prior_lambda(s.chols[j], s.psi, *ctx.hp);
  // Cholesky Jacobian exponent (q - l) plus the phi'/phi proposal asymmetry
  return zeta_ll + dprior + (q - l + 1) * (std::log(new_value) - std::log(old_value));
}

double log_accept_weights(const TargetCtx& ctx, const MixtureState& s,
                          const Eigen::VectorXd& new_weights) {
  MixtureState t = s;
  t.weights = new_weights;
  const double jac = new_weights.array().log().sum() - s.weights.array().log().sum();
  return ctx.tempered(t) - ctx.tempered(s) + jac;
}

double log_birth_accept(double tempered_lik_diff, int k, double w, double delta,
                        double log_prior_mu_lambda, double log_q_mu_lambda,
                        double log_b, double log_d_rev, double log_mb,
                        double log_md_rev) {
  if (!(w > 0.0) || !(w < 1.0)) return neg_inf;
  return tempered_lik_diff + log_prior_mu_lambda - log_q_mu_lambda -
         log_beta(k * delta, delta) + pow_log_term(delta, w) +
         k * pow_log_term(delta, 1.0 - w) + std::log(k + 1.0) +
         (k - 1) * std::log(1.0 - w) -
         log_pdf(dist::Beta{1.0, static_cast<double>(k)}, w) + log_d_rev +
         log_mb - std::log(k + 1.0) - log_b - log_md_rev;
}

// --- split / combine maps -----------------------------------------------------

SplitParts split_component(double w_parent, const Eigen::VectorXd& mu_parent,
                           const SpdChol& phi_parent, const SplitInnovations& u) {
  const int r = static_cast<int>(mu_parent.size());
  SplitParts p;
  p.w1 = u.u1 * w_parent;
  p.w2 = (1.0 - u.u1) * w_parent;
  p.mu1 = mu_parent + u.u_mean;
  p.mu2 = mu_parent - u.u_mean;
  Eigen::MatrixXd l1 = phi_parent.lower(), l2 = phi_parent.lower();
  for (int l = 1; l < r; ++l)
    for (int m = 0; m < l; ++m) {
      l1(l, m) += u.u_offdiag(l, m);
      l2(l, m) -= u.u_offdiag(l, m);
    }
  for (int l = 0; l < r; ++l) {
    l1(l, l) = phi_parent.lower()(l, l) / u.u_diag(l);
    l2(l, l) = phi_parent.lower()(l, l) * u.u_diag(l);
  }
  p.phi1 = SpdChol(std::move(l1));
  p.phi2 = SpdChol(std::move(l2));
  return p;
}

CombineParts combine_components(double w1, const Eigen::VectorXd& mu1,
                                const SpdChol& phi1, double w2,
                                const Eigen::VectorXd& mu2, const SpdChol& phi2) {
  const int r = static_cast<int>(mu1.size());
  CombineParts c;
  c.w_parent = w1 + w2;
  c.mu_parent = 0.5 * (mu1 + mu2);
  Eigen::MatrixXd lp = 0.5 * (phi1.lower() + phi2.lower());
  c.u.u1 = w1 / c.w_parent;
  c.u.u_mean = 0.5 * (mu1 - mu2);
  c.u.u_offdiag = 0.5 * (phi1.lower() - phi2.lower());
  c.u.u_offdiag.diagonal().setZero();
  c.u.u_diag.resize(r);
  for (int l = 0; l < r; ++l) {
    lp(l, l) = std::sqrt(phi1.lower()(l, l) * phi2.lower()(l, l));
    c.u.u_diag(l) = std::sqrt(phi2.lower()(l, l) / phi1.lower()(l, l));
  }
  c.phi_parent = SpdChol(std::move(lp));
  return c;
}

double log_split_jacobian(double w_parent, const SpdChol& phi_parent,
                          const Eigen::VectorXd& u_diag) {
  const int r = phi_parent.dim();
  double acc = 0.5 * r * (r + 3) * std::log(2.0) + std::log(w_parent);
  for (int l = 0; l < r; ++l)
    acc += std::log(phi_parent.lower()(l, l)) - std::log(u_diag(l));
  return acc;
}

Eigen::MatrixXd combine_pair_log_probs(const MixtureState& s) {
  const int k = s.k();
  Eigen::MatrixXd lw = Eigen::MatrixXd::Constant(k, k, neg_inf);
  bool any_zero = false;
  Eigen::MatrixXd dist(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      const double d = mahalanobis_sq(s.means[a], s.means[b], s.chols[a]) +
                       mahalanobis_sq(s.means[b], s.means[a], s.chols[b]);
      dist(a, b) = d;
      if (d <= 0.0) any_zero = true;
    }
  // 1/d weights; coincident pairs take the limit (uniform over them)
  double total = 0.0;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      double w;
      if (any_zero)
        w = dist(a, b) <= 0.0 ? 1.0 : 0.0;
      else
        w = 1.0 / dist(a, b);
      lw(a, b) = w;
      total += w;
    }
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      lw(a, b) = lw(a, b) > 0.0 ? std::log(lw(a, b) / total) : neg_inf;
  return lw;
}

// --- fixed-dimension block ----------------------------------------------------

SweepResult mh_fixed_updates(const MixtureState& s, const TargetCtx& ctx,
                             const MoveScales& scales, RngStream& rng) {
  const mix::Hyperparams& h = *ctx.hp;
  const int q = s.q();
  scales.validate(q);
  SweepResult res;
  res.state = s;
  MixtureState& st = res.state;
  const int k = st.k();

  LikTable table = LikTable::build(ctx, st);
  double cur_ll = table.total(st.weights);

  // per-coordinate additive Cauchy walk on each mean
  for (int j = 0; j < k; ++j) {
    for (int d = 0; d < q; ++d) {
      Eigen::VectorXd mu = st.means[j];
      mu(d) += scales.cauchy_mean(d) * rng.cauchy(0.0, 1.0);
      double prop_ll = cur_ll, dll = 0.0;
      Eigen::VectorXd newcol;
      if (table.active) {
        newcol = table.column(ctx, mu, st.chols[j]);
        prop_ll = table.total_replace(st.weights, j, newcol);
        dll = prop_ll - cur_ll;
      }
      const double la = ctx.zeta * dll + mix::log_prior_mean(mu, h) -
                        mix::log_prior_mean(st.means[j], h);
      const bool acc = mh_accept(rng, la);
      if (acc) {
        st.means[j] = mu;
        if (table.active) table.replace(j, newcol);
        cur_ll = prop_ll;
      }
      res.outcomes.push_back({MoveKind::MeanWalk, true, acc, la, 0});
    }
  }

  // additive Cauchy walk on the strict lower triangle of each factor
  if (q >= 2) {
    for (int j = 0; j < k; ++j) {
      Eigen::MatrixXd lower = st.chols[j].lower();
      for (int l = 1; l < q; ++l)
        for (int m = 0; m < l; ++m)
          lower(l, m) += scales.cauchy_offdiag * rng.cauchy(0.0, 1.0);
      SpdChol phi(lower);
      double prop_ll = cur_ll, dll = 0.0;
      Eigen::VectorXd newcol;
      if (table.active) {
        newcol = table.column(ctx, st.means[j], phi);
        prop_ll = table.total_replace(st.weights, j, newcol);
        dll = prop_ll - cur_ll;
      }
      // diagonals unchanged, so the Cholesky Jacobian cancels
      const double la = ctx.zeta * dll +
                        mix::log_prior_lambda(phi, st.psi, h) -
                        mix::log_prior_lambda(st.chols[j], st.psi, h);
      const bool acc = mh_accept(rng, la);
      if (acc) {
        st.chols[j] = phi;
        if (table.active) table.replace(j, newcol);
        cur_ll = prop_ll;
      }
      res.outcomes.push_back({MoveKind::CholOffdiagWalk, true, acc, la, 0});
    }
  }

  // per-entry multiplicative log-normal walk on the factor diagonals
  for (int j = 0; j < k; ++j) {
    for (int l = 0; l < q; ++l) {
      const double mult = rng.log_normal(0.0, scales.lognorm_diag_sigma);
      Eigen::MatrixXd lower = st.chols[j].lower();
      const double old_value = lower(l, l);
      lower(l, l) = old_value * mult;
      SpdChol phi(lower);
      double prop_ll = cur_ll, dll = 0.0;
      Eigen::VectorXd newcol;
      if (table.active) {
        newcol = table.column(ctx, st.means[j], phi);
        prop_ll = table.total_replace(st.weights, j, newcol);
        dll = prop_ll - cur_ll;
      }
      const double la = ctx.zeta * dll +
                        mix::log_prior_lambda(phi, st.psi, h) -
                        mix::log_prior_lambda(st.chols[j], st.psi, h) +
                        (q - l + 1) * std::log(mult);
      const bool acc = mh_accept(rng, la);
      if (acc) {
        st.chols[j] = phi;
        if (table.active) table.replace(j, newcol);
        cur_ll = prop_ll;
      }
      res.outcomes.push_back({MoveKind::CholDiagWalk, true, acc, la, 0});
    }
  }

  // additive normal walk on the logit-transformed weights (reference = last)
  if (k >= 2) {
    Eigen::VectorXd t(k - 1);
    const double log_wk = std::log(st.weights(k - 1));
    for (int j = 0; j < k - 1; ++j)
      t(j) = std::clamp(std::log(st.weights(j)) - log_wk, -700.0, 700.0);
    for (int j = 0; j < k - 1; ++j)
      t(j) += scales.logit_weight_sigma * rng.normal();
    const double m = std::max(0.0, t.maxCoeff());
    double denom = std::exp(-m);
    for (int j = 0; j < k - 1; ++j) denom += std::exp(t(j) - m);
    const double log_denom = m + std::log(denom);
    Eigen::VectorXd w(k);
    for (int j = 0; j < k - 1; ++j) w(j) = std::exp(t(j) - log_denom);
    w(k - 1) = std::exp(-log_denom);
    w /= w.sum();

    const double prop_ll = table.total(w);
    const double la =
        ctx.zeta * (table.active ? prop_ll - cur_ll : 0.0) +
        log_pdf(dist::SymDirichlet{k, h.delta}, w) -
        log_pdf(dist::SymDirichlet{k, h.delta}, st.weights) +
        w.array().log().sum() - st.weights.array().log().sum();
    const bool acc = mh_accept(rng, la);
    if (acc) {
      st.weights = w;
      cur_ll = prop_ll;
    }
    res.outcomes.push_back({MoveKind::WeightWalk, true, acc, la, 0});
  }

  res.loglik = cur_ll;
  res.logprior = ctx.logprior(st);
  return res;
}

MixtureState gibbs_psi(const MixtureState& s, const mix::Hyperparams& h,
                       RngStream& rng) {
  Eigen::MatrixXd s_inv = Eigen::MatrixXd((2.0 * h.h_diag).asDiagonal());
  for (const auto& c : s.chols) s_inv += 2.0 * c.inverse();
  const Eigen::MatrixXd scale = chol_factor(0.5 * (s_inv + s_inv.transpose())).inverse();
  MixtureState t = s;
  t.psi = sample(dist::Wishart{2.0 * (h.g + s.k() * h.alpha_prime),
                               0.5 * (scale + scale.transpose())},
                 rng);
  return t;
}

// --- birth / death -------------------------------------------------------------

SweepResult birth_death(const MixtureState& s, const TargetCtx& ctx,
                        RngStream& rng, const DimBand& band) {
  const mix::Hyperparams& h = *ctx.hp;
  SweepResult res;
  res.state = s;
  MixtureState& st = res.state;
  const int k = st.k();
  const TransBounds tb = trans_bounds(band, h.k_max);
  const double pb = up_prob(tb, k);

  LikTable table = LikTable::build(ctx, st);
  const double cur_ll = table.total(st.weights);
  res.loglik = cur_ll;
  res.logprior = ctx.logprior(st);
  if (pb < 0.0) return res;  // singleton band: nothing to propose

  const bool do_birth = rng.uniform() < pb;
  if (do_birth) {
    const double w_new = rng.beta(1.0, static_cast<double>(k));
    const SpdChol kappa_inv_chol(Eigen::MatrixXd(
        h.kappa_diag.array().inverse().sqrt().matrix().asDiagonal()));
    const Eigen::VectorXd mu_new =
        sample(dist::MvNormal{h.xi, kappa_inv_chol}, rng);
    const SpdChol phi_new = chol_factor(
        sample(dist::InvWishart{2.0 * h.alpha, 2.0 * st.psi}, rng));
    const double log_pq =
        mix::log_prior_mean(mu_new, h) + mix::log_prior_lambda(phi_new, st.psi, h);

    Eigen::VectorXd w(k + 1);
    w.head(k) = st.weights * (1.0 - w_new);
    w(k) = w_new;
    Eigen::VectorXd newcol;
    double prop_ll = 0.0;
    if (table.active) {
      newcol = table.column(ctx, mu_new, phi_new);
      prop_ll = table.total_append(w, newcol);
    }
    const double d_rev = tb.can_up(k + 1) ? 0.5 : 1.0;
    const double la = log_birth_accept(
        ctx.use_likelihood ? ctx.zeta * (prop_ll - cur_ll) : 0.0, k, w_new,
        h.delta, log_pq, log_pq, std::log(pb), std::log(d_rev));
    const bool acc = mh_accept(rng, la);
    if (acc) {
      st.weights = w;
      st.means.push_back(mu_new);
      st.chols.push_back(phi_new);
      res.loglik = prop_ll;
      res.logprior = ctx.logprior(st);
    }
    res.outcomes.push_back({MoveKind::Birth, true, acc, la, 0});
  } else {
    const int die = rng.uniform_int(k);
    const double w_die = st.weights(die);
    double la = neg_inf;
    bool acc = false;
    if (w_die < 1.0) {
      Eigen::VectorXd w_red(k - 1);
      int jj = 0;
      for (int j = 0; j < k; ++j)
        if (j != die) w_red(jj++) = st.weights(j) / (1.0 - w_die);
      const double red_ll = table.total_drop(w_red, die);
      const double b_red = tb.can_down(k - 1) ? 0.5 : 1.0;
      const double d_cur = tb.can_up(k) ? 0.5 : 1.0;
      // prior and proposal densities of the dying component cancel exactly
      const double la_birth = log_birth_accept(
          ctx.use_likelihood ? ctx.zeta * (cur_ll - red_ll) : 0.0, k - 1, w_die,
          h.delta, 0.0, 0.0, std::log(b_red), std::log(d_cur));
      la = -la_birth;
      acc = mh_accept(rng, la);
      if (acc) {
        st.weights = w_red;
        st.means.erase(st.means.begin() + die);
        st.chols.erase(st.chols.begin() + die);
        res.loglik = red_ll;
        res.logprior = ctx.logprior(st);
      }
    } else {
      acc = mh_accept(rng, la);  // consume the decision draw, certain reject
    }
    res.outcomes.push_back({MoveKind::Death, true, acc, la, 0});
  }
  return res;
}

// --- split / combine -------------------------------------------------------------

SweepResult split_combine(const MixtureState& s, const TargetCtx& ctx,
                          const MoveScales& scales, RngStream& rng,
                          const DimBand& band) {
  const mix::Hyperparams& h = *ctx.hp;
  const int q = s.q();
  scales.validate(q);
  SweepResult res;
  res.state = s;
  MixtureState& st = res.state;
  const int k = st.k();
  const TransBounds tb = trans_bounds(band, h.k_max);
  const double ps = up_prob(tb, k);

  LikTable table = LikTable::build(ctx, st);
  const double cur_ll = table.total(st.weights);
  res.loglik = cur_ll;
  res.logprior = ctx.logprior(st);
  if (ps < 0.0) return res;

  const bool do_split = rng.uniform() < ps;
  if (do_split) {
    const int jstar = rng.uniform_int(k);
    SplitInnovations u;
    u.u1 = rng.beta(scales.split_gamma, scales.split_gamma);
    u.u_mean.resize(q);
    for (int d = 0; d < q; ++d) u.u_mean(d) = rng.normal(0.0, scales.split_sigma_mu(d));
    u.u_offdiag = Eigen::MatrixXd::Zero(q, q);
    for (int l = 1; l < q; ++l)
      for (int m = 0; m < l; ++m)
        u.u_offdiag(l, m) = rng.normal(0.0, scales.split_sigma_phi);
    u.u_diag.resize(q);
    for (int l = 0; l < q; ++l)
      u.u_diag(l) = rng.log_normal(0.0, scales.split_sigma_diag);

    const SplitParts parts =
        split_component(st.weights(jstar), st.means[jstar], st.chols[jstar], u);

    MixtureState prop = st;
    prop.weights.resize(k + 1);
    prop.weights.head(k) = st.weights;
    prop.weights(jstar) = parts.w1;
    prop.weights(k) = parts.w2;
    prop.means[jstar] = parts.mu1;
    prop.chols[jstar] = parts.phi1;
    prop.means.push_back(parts.mu2);
    prop.chols.push_back(parts.phi2);

    double prop_ll = 0.0;
    Eigen::VectorXd col1, col2;
    if (table.active) {
      col1 = table.column(ctx, parts.mu1, parts.phi1);
      col2 = table.column(ctx, parts.mu2, parts.phi2);
      prop_ll = table.total_split(prop.weights, jstar, col1, col2);
    }

    const double log_pair = combine_pair_log_probs(prop)(jstar, k);
    const double c_rev = tb.can_up(k + 1) ? 0.5 : 1.0;
    const double wstar = st.weights(jstar);

    double log_q = log_pdf(dist::Beta{scales.split_gamma, scales.split_gamma}, u.u1);
    for (int d = 0; d < q; ++d)
      log_q += log_pdf(dist::Normal{0.0, scales.split_sigma_mu(d)}, u.u_mean(d));
    for (int l = 1; l < q; ++l)
      for (int m = 0; m < l; ++m)
        log_q += log_pdf(dist::Normal{0.0, scales.split_sigma_phi}, u.u_offdiag(l, m));
    for (int l = 0; l < q; ++l)
      log_q += log_pdf(dist::LogNormal{0.0, scales.split_sigma_diag}, u.u_diag(l));

    const double la =
        (ctx.use_likelihood ? ctx.zeta * (prop_ll - cur_ll) : 0.0) +
        mix::log_prior_mean(parts.mu1, h) + mix::log_prior_mean(parts.mu2, h) -
        mix::log_prior_mean(st.means[jstar], h) +
        log_prior_phi(parts.phi1, st.psi, h) + log_prior_phi(parts.phi2, st.psi, h) -
        log_prior_phi(st.chols[jstar], st.psi, h) -
        log_beta(k * h.delta, h.delta) + pow_log_term(h.delta, wstar) +
        pow_log_term(h.delta, u.u1) + pow_log_term(h.delta, 1.0 - u.u1) +
        std::log(k + 1.0) + std::log(static_cast<double>(k)) + std::log(c_rev) +
        log_pair - std::log(ps) +
        log_split_jacobian(wstar, st.chols[jstar], u.u_diag) - std::log(2.0) -
        log_q;
    const bool acc = mh_accept(rng, la);
    if (acc) {
      st = prop;
      res.loglik = prop_ll;
      res.logprior = ctx.logprior(st);
    }
    res.outcomes.push_back({MoveKind::Split, true, acc, la, 0});
  } else {
    const Eigen::MatrixXd pair_lp = combine_pair_log_probs(st);
    Eigen::VectorXd flat(k * (k - 1) / 2);
    std::vector<std::pair<int, int>> pairs;
    int idx = 0;
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b) {
        flat(idx++) = std::exp(pair_lp(a, b));
        pairs.emplace_back(a, b);
      }
    const int pick = rng.categorical(flat);
    const auto [a, b] = pairs[pick];

    const CombineParts cp =
        combine_components(st.weights(a), st.means[a], st.chols[a],
                           st.weights(b), st.means[b], st.chols[b]);

    Eigen::VectorXd w_red(k - 1);
    int jj = 0;
    for (int j = 0; j < k; ++j) {
      if (j == b) continue;
      w_red(jj++) = j == a ? cp.w_parent : st.weights(j);
    }
    double red_ll = 0.0;
    Eigen::VectorXd colm;
    if (table.active) {
      colm = table.column(ctx, cp.mu_parent, cp.phi_parent);
      red_ll = table.total_combine(w_red, a, b, colm);
    }

    const double s_red = tb.can_down(k - 1) ? 0.5 : 1.0;
    const double c_cur = tb.can_up(k) ? 0.5 : 1.0;
    const int km = k - 1;  // component count of the merged state

    double log_q = log_pdf(dist::Beta{scales.split_gamma, scales.split_gamma}, cp.u.u1);
    for (int d = 0; d < q; ++d)
      log_q += log_pdf(dist::Normal{0.0, scales.split_sigma_mu(d)}, cp.u.u_mean(d));
    for (int l = 1; l < q; ++l)
      for (int m = 0; m < l; ++m)
        log_q += log_pdf(dist::Normal{0.0, scales.split_sigma_phi}, cp.u.u_offdiag(l, m));
    for (int l = 0; l < q; ++l)
      log_q += log_pdf(dist::LogNormal{0.0, scales.split_sigma_diag}, cp.u.u_diag(l));

    const double la_split =
        (ctx.use_likelihood ? ctx.zeta * (cur_ll - red_ll) : 0.0) +
        mix::log_prior_mean(st.means[a], h) + mix::log_prior_mean(st.means[b], h) -
        mix::log_prior_mean(cp.mu_parent, h) +
        log_prior_phi(st.chols[a], st.psi, h) + log_prior_phi(st.chols[b], st.psi, h) -
        log_prior_phi(cp.phi_parent, st.psi, h) -
        log_beta(km * h.delta, h.delta) + pow_log_term(h.delta, cp.w_parent) +
        pow_log_term(h.delta, cp.u.u1) + pow_log_term(h.delta, 1.0 - cp.u.u1) +
        std::log(km + 1.0) + std::log(static_cast<double>(km)) + std::log(c_cur) +
        pair_lp(a, b) - std::log(s_red) +
        log_split_jacobian(cp.w_parent, cp.phi_parent, cp.u.u_diag) -
        std::log(2.0) - log_q;
    const double la = -la_split;
    const bool acc = mh_accept(rng, la);
    if (acc) {
      st.weights = w_red;
      st.means[a] = cp.mu_parent;
      st.chols[a] = cp.phi_parent;
      st.means.erase(st.means.begin() + b);
      st.chols.erase(st.chols.begin() + b);
      res.loglik = red_ll;
      res.logprior = ctx.logprior(st);
    }
    res.outcomes.push_back({MoveKind::Combine, true, acc, la, 0});
  }
  return res;
}

SweepResult rj_sweep(const MixtureState& s, const TargetCtx& ctx,
                     const MoveScales& scales, RngStream& rng,
                     const RjOptions& opt) {
  SweepResult res = mh_fixed_updates(s, ctx, scales, rng);
  res.state = gibbs_psi(res.state, *ctx.hp, rng);
  res.logprior = ctx.logprior(res.state);
  res.outcomes.push_back({MoveKind::PsiGibbs, true, true, 0.0, 0});

  if (opt.trans_moves) {
    SweepResult trans;
    if (rng.uniform() < 0.5)
      trans = birth_death(res.state, ctx, rng, opt.band);
    else
      trans = split_combine(res.state, ctx, scales, rng, opt.band);
    res.state = std::move(trans.state);
    res.loglik = trans.loglik;
    res.logprior = trans.logprior;
    for (auto& o : trans.outcomes) res.outcomes.push_back(o);
  }
  return res;
}

}  // namespace popmcmc::rj
