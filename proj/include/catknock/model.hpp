#pragma once

#include "catknock/prior.hpp"
#include "catknock/suff_stats.hpp"

namespace catknock {

// Exact exchangeable-model probabilities.  Everything is evaluated in log
// space (log-gamma closed forms for beta/Dirichlet/conjugate-graph priors,
// log-sum-exp over atoms for the discrete families), so designs with
// hundreds of columns do not underflow.

// log P(X = x) for any x with the given sufficient statistics.
double log_marginal_prob(const SuffStats& stats, const Prior& prior);
double marginal_prob(const SuffStats& stats, const Prior& prior);

// log P(X = x, Xk = xk): the knockoff joint law, which depends on the pair
// only through the summed counts.
double log_joint_prob(const SuffStats& stats_x, const SuffStats& stats_k,
                      const Prior& prior);
double joint_prob(const SuffStats& stats_x, const SuffStats& stats_k,
                  const Prior& prior);

// log P(Xk = xk | X = x) = log joint - log marginal; throws
// conditioning_error when P(X = x) = 0.
double log_conditional_knockoff_pmf(const SuffStats& stats_x,
                                    const SuffStats& stats_k, const Prior& prior);
double conditional_knockoff_pmf(const SuffStats& stats_x,
                                const SuffStats& stats_k, const Prior& prior);

// Density of a binary-prefix / normal-tail vector under a mixed graph prior:
// a grid sum of u^{s1} (1-u)^{s0} times the normal densities of the tail.
double mixed_log_density(const MixedVector& x, const MixedGraphPrior& prior);
double mixed_density(const MixedVector& x, const MixedGraphPrior& prior);

}  // namespace catknock
