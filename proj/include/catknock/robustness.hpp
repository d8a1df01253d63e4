#pragma once

#include <functional>

#include "catknock/prior.hpp"
#include "catknock/suff_stats.hpp"

namespace catknock {

// Exact total-variation distances between exchangeable laws on F^n at small
// n, via count-class enumeration (multinomial multiplicities in log space),
// plus the prior-robustness bounds they are tested against.

// Visit every count vector (n_0, ..., n_m) with sum n; logmult is the log
// multinomial multiplicity of the class.
void for_each_count_class(
    int n, int m,
    const std::function<void(const std::vector<long long>&, double logmult)>& fn);

long long count_class_count(int n, int m);  // C(n + m, m)

// Exact TV between the laws of an n-vector of categorical indicators under
// two priors: (1/2) sum over count classes of multiplicity * |P1 - P2|.
// cap = 0 uses the default enumeration cap (n <= 20 for m = 1, class count
// <= 100000 otherwise).
double tv_exchangeable_laws(const Prior& p1, const Prior& p2, int n, int m,
                            long long cap = 0);

// Exact TV between the knockoff conditionals L(Xk | X = x) under two priors:
// the conditionals are exchangeable laws with the posterior priors, so this
// reduces to tv_exchangeable_laws of the posteriors.
double tv_knockoff_conditionals(const CategoricalVector& x, const Prior& p1,
                                const Prior& p2, long long cap = 0);

// Computable upper bounds on tv_knockoff_conditionals in terms of the prior
// distance and the marginal probabilities of the conditioning point.
struct ConditionalTvBounds {
  // (TV(pi1,pi2) + |P1(x) - P2(x)|) / max(P1(x), P2(x))
  double bound_a = 0;
  // 2 TV(pi1,pi2) / max(P1(x), P2(x)); always >= bound_a
  double bound_b = 0;
  double tv_priors = 0;
  double marginal1 = 0, marginal2 = 0;
};

ConditionalTvBounds conditional_tv_bounds(const CategoricalVector& x,
                                          const Prior& p1, const Prior& p2);

}  // namespace catknock
