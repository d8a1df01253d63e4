#pragma once

#include "catknock/prior.hpp"
#include "catknock/rng.hpp"
#include "catknock/suff_stats.hpp"

namespace catknock {

// Exact two-stage samplers: draw the latent success probability (atom /
// beta / Dirichlet / graph-grid), then conditionally i.i.d. category draws.
// Knockoffs draw the latent from the posterior given the observed counts,
// which reproduces the conditional knockoff law exactly.
//
// All functions take the RNG by value: a call is a pure function of
// (arguments, rng).  Row-level work is keyed by spawned per-row streams, so
// results do not depend on execution order.

CategoricalMatrix sample_x(std::size_t n, std::size_t p, const Prior& prior,
                           SeededRng rng);

CategoricalVector sample_knockoff(const CategoricalVector& x, const Prior& prior,
                                  SeededRng rng);

MixedVector sample_mixed_knockoff(const MixedVector& x,
                                  const MixedGraphPrior& prior, SeededRng rng);

// Row j is sample_knockoff(X row j) under the spawned stream j.
CategoricalMatrix knockoff_matrix(const CategoricalMatrix& X, const Prior& prior,
                                  SeededRng rng);

}  // namespace catknock
