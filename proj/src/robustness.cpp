#include "catknock/robustness.hpp"

#include <algorithm>
#include <cmath>

#include "catknock/errors.hpp"
#include "catknock/model.hpp"
#include "catknock/special_functions.hpp"

namespace catknock {

namespace {

constexpr long long kDefaultBinaryCap = 20;
constexpr long long kDefaultClassCap = 100000;

void check_enumerable(const Prior& prior) {
  if (is_two_group(prior))
    throw parameter_error(
        "tv_exchangeable_laws: defined for exchangeable (not two-group) priors");
}

}  // namespace

void for_each_count_class(
    int n, int m,
    const std::function<void(const std::vector<long long>&, double logmult)>& fn) {
  if (n < 0 || m < 1) throw parameter_error("for_each_count_class: need n >= 0, m >= 1");
  std::vector<long long> counts(static_cast<std::size_t>(m) + 1, 0);
  // recurse over n_0..n_{m-1}; n_m takes the remainder
  std::function<void(int, long long)> rec = [&](int j, long long remaining) {
    if (j == m) {
      counts[static_cast<std::size_t>(m)] = remaining;
      fn(counts, sf::log_multinomial(n, counts));
      return;
    }
    for (long long c = 0; c <= remaining; ++c) {
      counts[static_cast<std::size_t>(j)] = c;
      rec(j + 1, remaining - c);
    }
  };
  rec(0, n);
}

long long count_class_count(int n, int m) {
  long long r = 1;
  for (int i = 1; i <= m; ++i) r = r * (n + i) / i;
  return r;
}

double tv_exchangeable_laws(const Prior& p1, const Prior& p2, int n, int m,
                            long long cap) {
  check_enumerable(p1);
  check_enumerable(p2);
  if (category_bound(p1) != m || category_bound(p2) != m)
    throw parameter_error("tv_exchangeable_laws: priors do not match category bound m");
  if (cap <= 0) cap = (m == 1) ? kDefaultBinaryCap : kDefaultClassCap;
  long long work = (m == 1) ? n : count_class_count(n, m);
  if (work > cap)
    throw resource_error("tv_exchangeable_laws: enumeration over cap; raise the cap explicitly");
  double total = 0;
  for_each_count_class(n, m, [&](const std::vector<long long>& counts, double logmult) {
    SuffStats st;
    st.counts = counts;
    double q1 = std::exp(logmult + log_marginal_prob(st, p1));
    double q2 = std::exp(logmult + log_marginal_prob(st, p2));
    total += std::fabs(q1 - q2);
  });
  return 0.5 * total;
}

double tv_knockoff_conditionals(const CategoricalVector& x, const Prior& p1,
                                const Prior& p2, long long cap) {
  // L(Xk | X = x) is exchangeable with the posterior prior
  Prior post1 = posterior(p1, suff_stats(x));
  Prior post2 = posterior(p2, suff_stats(x));
  return tv_exchangeable_laws(post1, post2, static_cast<int>(x.codes.size()),
                              x.m, cap);
}

ConditionalTvBounds conditional_tv_bounds(const CategoricalVector& x,
                                          const Prior& p1, const Prior& p2) {
  ConditionalTvBounds out;
  out.tv_priors = tv_distance_priors(p1, p2).value;
  SuffStats st = suff_stats(x);
  out.marginal1 = marginal_prob(st, p1);
  out.marginal2 = marginal_prob(st, p2);
  double mx = std::max(out.marginal1, out.marginal2);
  if (!(mx > 0))
    throw conditioning_error("conditional_tv_bounds: both marginals are zero at x");
  out.bound_a = (out.tv_priors + std::fabs(out.marginal1 - out.marginal2)) / mx;
  out.bound_b = 2 * out.tv_priors / mx;
  return out;
}

}  // namespace catknock
