#include "catknock/model.hpp"

#include <cmath>
#include <limits>

#include "atom_likelihood.hpp"
#include "catknock/errors.hpp"
#include "catknock/special_functions.hpp"

namespace catknock {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double beta_log_marginal(const BetaPrior& prior, const SuffStats& st) {
  if (st.counts.size() != 2)
    throw parameter_error("beta prior given non-binary counts");
  return sf::log_beta(prior.a + static_cast<double>(st.counts[1]),
                      prior.b + static_cast<double>(st.counts[0])) -
         sf::log_beta(prior.a, prior.b);
}

double dirichlet_log_marginal(const DirichletPrior& prior, const SuffStats& st) {
  if (st.counts.size() != prior.alpha.size())
    throw parameter_error("dirichlet prior dimension does not match counts");
  double A = 0, lnum = 0, lden = 0;
  for (std::size_t j = 0; j < prior.alpha.size(); ++j) {
    A += prior.alpha[j];
    lnum += sf::log_gamma(prior.alpha[j] + static_cast<double>(st.counts[j]));
    lden += sf::log_gamma(prior.alpha[j]);
  }
  return sf::log_gamma(A) - lden + lnum -
         sf::log_gamma(A + static_cast<double>(st.p()));
}

double conjugate_graph_log_marginal(const GraphPrior& prior, const SuffStats& st) {
  if (!st.has_split)
    throw parameter_error("graph prior requires split sufficient statistics");
  // with V = 1 - U the likelihood is u^(s1+t0) (1-u)^(s0+t1)
  return sf::log_beta(prior.base_a + static_cast<double>(st.s[1] + st.t[0]),
                      prior.base_b + static_cast<double>(st.s[0] + st.t[1])) -
         sf::log_beta(prior.base_a, prior.base_b);
}

template <class LoglikFn>
double atom_log_sum(const std::vector<double>& weights, std::size_t n,
                    LoglikFn&& ll) {
  double mx = kNegInf;
  std::vector<double> lw(n);
  for (std::size_t i = 0; i < n; ++i) {
    lw[i] = (weights[i] > 0 ? std::log(weights[i]) : kNegInf) + ll(i);
    if (lw[i] > mx) mx = lw[i];
  }
  if (!std::isfinite(mx)) return kNegInf;
  double s = 0;
  for (double v : lw) s += std::exp(v - mx);
  return mx + std::log(s);
}

void check_split_matches(const SuffStats& st, const Prior& prior) {
  if (!is_two_group(prior)) return;
  if (!st.has_split)
    throw parameter_error("two-group prior requires split sufficient statistics");
  if (st.split_k != split_index(prior))
    throw parameter_error("split index of stats does not match prior");
}

double eval_log_marginal(const SuffStats& stats, const Prior& prior) {
  if (const auto* b = std::get_if<BetaPrior>(&prior))
    return beta_log_marginal(*b, stats);
  if (const auto* d = std::get_if<DirichletPrior>(&prior))
    return dirichlet_log_marginal(*d, stats);
  if (const auto* g = std::get_if<DiscreteGridPrior>(&prior))
    return atom_log_sum(g->weights, g->points.size(), [&](std::size_t i) {
      return detail::grid_atom_loglik(*g, stats, i);
    });
  if (const auto* g = std::get_if<GraphPrior>(&prior)) {
    if (g->conjugate) return conjugate_graph_log_marginal(*g, stats);
    return atom_log_sum(g->grid_w, g->grid_u.size(), [&](std::size_t i) {
      return detail::graph_atom_loglik(*g, stats, i);
    });
  }
  throw parameter_error(
      "log_marginal_prob: mixed graph priors use mixed_log_density");
}

}  // namespace

double log_marginal_prob(const SuffStats& stats, const Prior& prior) {
  stats.validate();
  check_split_matches(stats, prior);
  return eval_log_marginal(stats, prior);
}

double marginal_prob(const SuffStats& stats, const Prior& prior) {
  return std::exp(log_marginal_prob(stats, prior));
}

double log_joint_prob(const SuffStats& stats_x, const SuffStats& stats_k,
                      const Prior& prior) {
  stats_x.validate();
  stats_k.validate();
  check_split_matches(stats_x, prior);
  check_split_matches(stats_k, prior);
  if (stats_x.p() != stats_k.p())
    throw parameter_error("log_joint_prob: vectors have different lengths");
  // the joint law depends on (x, xk) only through the summed counts; the
  // sum is evaluated directly since its split index is 2k by construction
  return eval_log_marginal(stats_x + stats_k, prior);
}

double joint_prob(const SuffStats& stats_x, const SuffStats& stats_k,
                  const Prior& prior) {
  return std::exp(log_joint_prob(stats_x, stats_k, prior));
}

double log_conditional_knockoff_pmf(const SuffStats& stats_x,
                                    const SuffStats& stats_k,
                                    const Prior& prior) {
  double lmarg = log_marginal_prob(stats_x, prior);
  if (!std::isfinite(lmarg))
    throw conditioning_error(
        "conditional_knockoff_pmf: conditioning event has zero probability");
  return log_joint_prob(stats_x, stats_k, prior) - lmarg;
}

double conditional_knockoff_pmf(const SuffStats& stats_x,
                                const SuffStats& stats_k, const Prior& prior) {
  return std::exp(log_conditional_knockoff_pmf(stats_x, stats_k, prior));
}

double mixed_log_density(const MixedVector& x, const MixedGraphPrior& prior) {
  int k = prior.split_k;
  if (static_cast<int>(x.binary.size()) != k)
    throw parameter_error("mixed_log_density: binary prefix length must equal k");
  long long s1 = 0;
  for (int c : x.binary) {
    if (c != 0 && c != 1)
      throw parameter_error("mixed_log_density: prefix codes must be binary");
    s1 += c;
  }
  long long s0 = k - s1;
  double mx = kNegInf;
  std::vector<double> lw(prior.grid_u.size());
  for (std::size_t i = 0; i < prior.grid_u.size(); ++i) {
    double u = prior.grid_u[i];
    double ll = sf::xlogy(s1, u) + sf::xlogy(s0, 1 - u);
    double mean = prior.mean_link(u), var = prior.var_link(u);
    for (double xv : x.cont) ll += sf::normal_log_pdf(xv, mean, var);
    lw[i] = (prior.grid_w[i] > 0 ? std::log(prior.grid_w[i]) : kNegInf) + ll;
    if (lw[i] > mx) mx = lw[i];
  }
  if (!std::isfinite(mx)) return kNegInf;
  double s = 0;
  for (double v : lw) s += std::exp(v - mx);
  return mx + std::log(s);
}

double mixed_density(const MixedVector& x, const MixedGraphPrior& prior) {
  return std::exp(mixed_log_density(x, prior));
}

}  // namespace catknock
