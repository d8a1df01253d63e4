#pragma once

#include <string>
#include <variant>
#include <vector>

#include "catknock/suff_stats.hpp"

namespace catknock {

// Named link function u -> f(u).  Probability links map [0,1] into [0,1];
// variance links (the second component of a mixed graph prior) map into
// (0, inf) with a small floor instead of a unit clip.
struct LinkSpec {
  enum class Family { one_minus_u, power, affine, table };
  enum class Range { unit, positive };

  Family family = Family::one_minus_u;
  Range range = Range::unit;
  double exponent = 1.0;        // power
  double c0 = 0.0, c1 = 0.0;    // affine: c0 + c1 * u
  std::vector<double> xs, ys;   // table nodes, xs strictly increasing in [0,1]

  double operator()(double u) const;

  static LinkSpec one_minus_u();
  static LinkSpec power(double exponent);
  static LinkSpec affine(double c0, double c1);
  static LinkSpec table(std::vector<double> xs, std::vector<double> ys);
};

enum class GridKind { binary, two_group, simplex };

// Finitely supported de Finetti measure.  Support points are scalars in
// [0,1] (binary), pairs (u, v) in [0,1]^2 (two-group with split k), or
// m-vectors in the simplex (categorical; point = probabilities of
// categories 1..m, category 0 takes the remainder).
struct DiscreteGridPrior {
  GridKind kind = GridKind::binary;
  std::vector<std::vector<double>> points;
  std::vector<double> weights;
  int split_k = 0;
  int m = 1;
};

struct BetaPrior {
  double a = 1, b = 1;
};

struct DirichletPrior {
  std::vector<double> alpha;  // alpha_0..alpha_m, all positive
};

// Two-group law of (U, V) supported on the graph of a link: U ~ base,
// V = link(U).  A uniform base with the 1-u link stays in exact beta form
// (conjugate = true, Beta(base_a, base_b)); every other base is carried as
// a midpoint-rule grid so all downstream operations are finite sums.
struct GraphPrior {
  bool conjugate = false;
  double base_a = 1, base_b = 1;
  std::vector<double> grid_u, grid_w;
  LinkSpec link;
  int split_k = 1;
};

// Binary prefix with conditionally normal tail: U ~ base (grid), the tail
// entries are N(mean_link(U), var_link(U)).
struct MixedGraphPrior {
  std::vector<double> grid_u, grid_w;
  LinkSpec mean_link;
  LinkSpec var_link;  // positive range
  int split_k = 1;
};

using Prior = std::variant<DiscreteGridPrior, BetaPrior, DirichletPrior,
                           GraphPrior, MixedGraphPrior>;

// --- constructors ---------------------------------------------------------

// Atoms on I = {0, 1/p, ..., 1} with Bin(p, alpha) weights.
Prior binomial_grid_prior(int p, double alpha);

// Equal weights on I, or on J = {1/p, ..., (p-1)/p} when drop_endpoints.
Prior uniform_grid_prior(int p, bool drop_endpoints = false);

// Atoms on {(r/k, s/(p-k))} with kU ~ Bin(k, alpha) and
// (p-k)V | U ~ Bin(p-k, link(U)).
Prior two_group_binomial_prior(int k, int p, double alpha, const LinkSpec& link);

Prior delta_prior(double u);
Prior grid_prior(std::vector<double> points, std::vector<double> weights);
Prior two_group_grid_prior(std::vector<std::vector<double>> points,
                           std::vector<double> weights, int split_k);
Prior simplex_grid_prior(std::vector<std::vector<double>> points,
                         std::vector<double> weights);

inline constexpr int kDefaultGraphGridSize = 2048;

Prior graph_prior_uniform(const LinkSpec& link, int split_k,
                          int grid_size = kDefaultGraphGridSize);
Prior graph_prior(std::vector<double> grid_u, std::vector<double> grid_w,
                  const LinkSpec& link, int split_k);
MixedGraphPrior mixed_graph_prior_uniform(const LinkSpec& mean_link,
                                          const LinkSpec& var_link, int split_k,
                                          int grid_size = kDefaultGraphGridSize);
MixedGraphPrior mixed_graph_prior(std::vector<double> grid_u,
                                  std::vector<double> grid_w,
                                  const LinkSpec& mean_link,
                                  const LinkSpec& var_link, int split_k);

// --- queries ---------------------------------------------------------------

void validate(const Prior& prior);

// Category bound m of the covariates the prior models (1 for all binary
// and two-group families).
int category_bound(const Prior& prior);

bool is_two_group(const Prior& prior);
int split_index(const Prior& prior);  // two-group / mixed families only

struct Moments {
  double mean = 0, variance = 0;
};

// Mean and variance of the latent success probability, per coordinate:
// one entry for binary priors, (u, v) for two-group grids, and
// (u_0, ..., u_m) for categorical families.  Discrete grids are exact sums;
// beta and Dirichlet use the closed-form moments.
std::vector<Moments> prior_moments(const Prior& prior);

// Conjugate / reweighting posterior update given observed counts.
// Throws conditioning_error when the stats have zero marginal probability.
Prior posterior(const Prior& prior, const SuffStats& stats);

struct TvResult {
  double value = 0;
  // Set when the pair is mutually singular (discrete vs diffuse), in which
  // case the exact distance is 1.
  bool mutually_singular = false;
};

// Total variation distance between two priors: exact half-L1 over the merged
// atom set for discrete pairs (atoms matched within 1e-12), adaptive Simpson
// quadrature split at density crossings for beta pairs (abs error <= 1e-9).
TvResult tv_distance_priors(const Prior& p1, const Prior& p2);

// (psi(2d) - psi(c)) * (|a1-a2| + |b1-b2|); requires 0 < c < d and all
// parameters in [c, d].
double beta_tv_bound(double a1, double b1, double a2, double b2, double c,
                     double d);

// --- JSON interface --------------------------------------------------------
// {"family": "beta"|"dirichlet"|"grid"|"binomial_grid"|"uniform_grid"|
//  "two_group_binomial"|"graph"|"mixed_graph", ...}; see README for the
// per-family fields.
Prior prior_from_json_text(const std::string& text);
std::string prior_to_json_text(const Prior& prior);

}  // namespace catknock
