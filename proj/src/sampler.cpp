#include "catknock/sampler.hpp"

#include <cmath>
#include <limits>

#include "catknock/errors.hpp"
#include "catknock/special_functions.hpp"

namespace catknock {

namespace {

// Latent draw from a prior, expressed as per-category probabilities for the
// first block and (for two-group priors) the second block.
struct Latent {
  std::vector<double> probs1;  // size m + 1
  std::vector<double> probs2;  // size 2, two-group only
  bool two_group = false;
  int split_k = 0;
};

Latent binary_latent(double u) {
  Latent l;
  l.probs1 = {1 - u, u};
  return l;
}

Latent two_group_latent(double u, double v, int k) {
  Latent l;
  l.probs1 = {1 - u, u};
  l.probs2 = {1 - v, v};
  l.two_group = true;
  l.split_k = k;
  return l;
}

Latent draw_latent(const Prior& prior, SeededRng& rng) {
  if (const auto* b = std::get_if<BetaPrior>(&prior))
    return binary_latent(rng.beta(b->a, b->b));
  if (const auto* d = std::get_if<DirichletPrior>(&prior)) {
    Latent l;
    l.probs1 = rng.dirichlet(d->alpha);
    return l;
  }
  if (const auto* g = std::get_if<DiscreteGridPrior>(&prior)) {
    std::size_t i = rng.categorical(g->weights);
    switch (g->kind) {
      case GridKind::binary:
        return binary_latent(g->points[i][0]);
      case GridKind::two_group:
        return two_group_latent(g->points[i][0], g->points[i][1], g->split_k);
      case GridKind::simplex: {
        Latent l;
        double rest = 1;
        l.probs1.push_back(0);
        for (double uj : g->points[i]) {
          l.probs1.push_back(uj);
          rest -= uj;
        }
        l.probs1[0] = std::max(rest, 0.0);
        return l;
      }
    }
  }
  if (const auto* g = std::get_if<GraphPrior>(&prior)) {
    if (g->conjugate) {
      double u = rng.beta(g->base_a, g->base_b);
      return two_group_latent(u, 1 - u, g->split_k);
    }
    std::size_t i = rng.categorical(g->grid_w);
    double u = g->grid_u[i];
    return two_group_latent(u, g->link(u), g->split_k);
  }
  throw parameter_error("sampling mixed graph priors goes through sample_mixed_knockoff");
}

void draw_row(const Latent& l, std::size_t p, SeededRng& rng, int* out) {
  std::size_t k = l.two_group ? static_cast<std::size_t>(l.split_k) : p;
  if (l.two_group && k >= p)
    throw parameter_error("two-group prior: split index must satisfy k < p");
  for (std::size_t i = 0; i < p; ++i) {
    const auto& probs = (l.two_group && i >= k) ? l.probs2 : l.probs1;
    out[i] = static_cast<int>(rng.categorical(probs));
  }
}

}  // namespace

CategoricalMatrix sample_x(std::size_t n, std::size_t p, const Prior& prior,
                           SeededRng rng) {
  if (p < 1) throw parameter_error("sample_x: p must be >= 1");
  validate(prior);
  CategoricalMatrix X;
  X.rows = n;
  X.cols = p;
  X.m = category_bound(prior);
  X.codes.assign(n * p, 0);
  for (std::size_t r = 0; r < n; ++r) {
    SeededRng row_rng = rng.spawn(r);
    Latent l = draw_latent(prior, row_rng);
    draw_row(l, p, row_rng, &X.codes[r * p]);
  }
  return X;
}

CategoricalVector sample_knockoff(const CategoricalVector& x, const Prior& prior,
                                  SeededRng rng) {
  std::optional<int> k;
  if (is_two_group(prior)) k = split_index(prior);
  SuffStats st = suff_stats(x, k);
  Prior post = posterior(prior, st);
  CategoricalVector out;
  out.m = x.m;
  out.codes.assign(x.codes.size(), 0);
  Latent l = draw_latent(post, rng);
  draw_row(l, out.codes.size(), rng, out.codes.data());
  return out;
}

MixedVector sample_mixed_knockoff(const MixedVector& x,
                                  const MixedGraphPrior& prior, SeededRng rng) {
  int k = prior.split_k;
  if (static_cast<int>(x.binary.size()) != k)
    throw parameter_error("sample_mixed_knockoff: binary prefix length must equal k");
  long long s1 = 0;
  for (int c : x.binary) {
    if (c != 0 && c != 1)
      throw parameter_error("sample_mixed_knockoff: prefix codes must be binary");
    s1 += c;
  }
  long long s0 = k - s1;

  // posterior over the latent grid
  std::size_t G = prior.grid_u.size();
  std::vector<double> lw(G);
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < G; ++i) {
    double u = prior.grid_u[i];
    double ll = sf::xlogy(s1, u) + sf::xlogy(s0, 1 - u);
    double mean = prior.mean_link(u), var = prior.var_link(u);
    for (double xv : x.cont) ll += sf::normal_log_pdf(xv, mean, var);
    lw[i] = (prior.grid_w[i] > 0 ? std::log(prior.grid_w[i])
                                 : -std::numeric_limits<double>::infinity()) +
            ll;
    mx = std::max(mx, lw[i]);
  }
  if (!std::isfinite(mx))
    throw conditioning_error(
        "sample_mixed_knockoff: posterior grid weights underflowed to zero");
  std::vector<double> w(G);
  double total = 0;
  for (std::size_t i = 0; i < G; ++i) {
    w[i] = std::exp(lw[i] - mx);
    total += w[i];
  }
  for (auto& v : w) v /= total;

  std::size_t idx = rng.categorical(w);
  double u = prior.grid_u[idx];
  double mean = prior.mean_link(u), sd = std::sqrt(prior.var_link(u));
  MixedVector out;
  out.binary.reserve(x.binary.size());
  for (std::size_t i = 0; i < x.binary.size(); ++i)
    out.binary.push_back(rng.bernoulli(u));
  out.cont.reserve(x.cont.size());
  for (std::size_t i = 0; i < x.cont.size(); ++i)
    out.cont.push_back(mean + sd * rng.normal());
  return out;
}

CategoricalMatrix knockoff_matrix(const CategoricalMatrix& X, const Prior& prior,
                                  SeededRng rng) {
  CategoricalMatrix Xk;
  Xk.rows = X.rows;
  Xk.cols = X.cols;
  Xk.m = X.m;
  Xk.codes.assign(X.rows * X.cols, 0);
  for (std::size_t r = 0; r < X.rows; ++r) {
    CategoricalVector xk = sample_knockoff(X.row(r), prior, rng.spawn(r));
    std::copy(xk.codes.begin(), xk.codes.end(), Xk.codes.begin() + static_cast<std::ptrdiff_t>(r * X.cols));
  }
  return Xk;
}

}  // namespace catknock
