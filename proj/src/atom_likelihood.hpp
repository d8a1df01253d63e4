#pragma once

// Internal: log-likelihoods of sufficient statistics given a latent atom,
// shared by the posterior update and the probability evaluations.

#include <span>

#include "catknock/errors.hpp"
#include "catknock/prior.hpp"
#include "catknock/special_functions.hpp"
#include "catknock/suff_stats.hpp"

namespace catknock::detail {

inline double binary_loglik(const SuffStats& st, double u) {
  if (st.counts.size() != 2)
    throw parameter_error("binary prior given non-binary counts");
  return sf::xlogy(st.counts[1], u) + sf::xlogy(st.counts[0], 1 - u);
}

inline double two_group_loglik(const SuffStats& st, double u, double v) {
  if (st.counts.size() != 2)
    throw parameter_error("two-group prior given non-binary counts");
  if (!st.has_split)
    throw parameter_error("two-group prior requires split sufficient statistics");
  return sf::xlogy(st.s[1], u) + sf::xlogy(st.s[0], 1 - u) +
         sf::xlogy(st.t[1], v) + sf::xlogy(st.t[0], 1 - v);
}

inline double simplex_loglik(const SuffStats& st, std::span<const double> point) {
  if (st.counts.size() != point.size() + 1)
    throw parameter_error("simplex atom dimension does not match counts");
  double rest = 0;
  for (double uj : point) rest += uj;
  double ll = sf::xlogy(st.counts[0], 1 - rest > 0 ? 1 - rest : 0);
  for (std::size_t j = 0; j < point.size(); ++j)
    ll += sf::xlogy(st.counts[j + 1], point[j]);
  return ll;
}

// Split-index agreement between stats and prior is enforced at the public
// entry points (a summed pair of stats legitimately carries split 2k).

inline double grid_atom_loglik(const DiscreteGridPrior& g, const SuffStats& st,
                               std::size_t i) {
  switch (g.kind) {
    case GridKind::binary:
      return binary_loglik(st, g.points[i][0]);
    case GridKind::two_group:
      return two_group_loglik(st, g.points[i][0], g.points[i][1]);
    case GridKind::simplex:
      return simplex_loglik(st, g.points[i]);
  }
  throw parameter_error("unknown grid kind");
}

inline double graph_atom_loglik(const GraphPrior& g, const SuffStats& st,
                                std::size_t i) {
  double u = g.grid_u[i];
  return two_group_loglik(st, u, g.link(u));
}

}  // namespace catknock::detail
