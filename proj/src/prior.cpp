#include "catknock/prior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "atom_likelihood.hpp"
#include "catknock/errors.hpp"
#include "catknock/quadrature.hpp"
#include "catknock/special_functions.hpp"

namespace catknock {

namespace {

constexpr double kWeightTol = 1e-12;
constexpr double kAtomMatchTol = 1e-12;
constexpr double kVarianceFloor = 1e-8;

void check_weights(const std::vector<double>& w) {
  double sum = 0;
  for (double x : w) {
    if (!(x >= 0)) throw parameter_error("prior weights must be nonnegative");
    sum += x;
  }
  if (std::fabs(sum - 1) > kWeightTol)
    throw parameter_error("prior weights must sum to 1 within 1e-12");
}

void normalize(std::vector<double>& w) {
  double sum = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= sum;
}

std::vector<double> midpoint_grid(int grid_size) {
  if (grid_size < 2) throw parameter_error("grid_size must be >= 2");
  std::vector<double> u(static_cast<std::size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i) u[static_cast<std::size_t>(i)] = (i + 0.5) / grid_size;
  return u;
}

}  // namespace

// --- LinkSpec ---------------------------------------------------------------

double LinkSpec::operator()(double u) const {
  double v = 0;
  switch (family) {
    case Family::one_minus_u:
      v = 1 - u;
      break;
    case Family::power:
      v = std::pow(u, exponent);
      break;
    case Family::affine:
      v = c0 + c1 * u;
      break;
    case Family::table: {
      if (u <= xs.front()) {
        v = ys.front();
        break;
      }
      if (u >= xs.back()) {
        v = ys.back();
        break;
      }
      auto it = std::upper_bound(xs.begin(), xs.end(), u);
      std::size_t hi = static_cast<std::size_t>(it - xs.begin());
      double t = (u - xs[hi - 1]) / (xs[hi] - xs[hi - 1]);
      v = ys[hi - 1] + t * (ys[hi] - ys[hi - 1]);
      break;
    }
  }
  if (range == Range::unit) return std::clamp(v, 0.0, 1.0);
  return std::max(v, kVarianceFloor);
}

LinkSpec LinkSpec::one_minus_u() { return LinkSpec{}; }

LinkSpec LinkSpec::power(double exponent) {
  if (!(exponent > 0)) throw parameter_error("power link requires exponent > 0");
  LinkSpec l;
  l.family = Family::power;
  l.exponent = exponent;
  return l;
}

LinkSpec LinkSpec::affine(double c0, double c1) {
  LinkSpec l;
  l.family = Family::affine;
  l.c0 = c0;
  l.c1 = c1;
  return l;
}

LinkSpec LinkSpec::table(std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw parameter_error("table link requires matching x/y arrays of size >= 2");
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    if (!(xs[i] < xs[i + 1]))
      throw parameter_error("table link x nodes must be strictly increasing");
  LinkSpec l;
  l.family = Family::table;
  l.xs = std::move(xs);
  l.ys = std::move(ys);
  return l;
}

// --- constructors -----------------------------------------------------------

Prior binomial_grid_prior(int p, double alpha) {
  if (p < 1) throw parameter_error("binomial_grid_prior: p must be >= 1");
  if (!(alpha > 0) || !(alpha < 1))
    throw parameter_error("binomial_grid_prior: alpha must lie in (0,1)");
  DiscreteGridPrior g;
  g.kind = GridKind::binary;
  for (int j = 0; j <= p; ++j) {
    double lw = sf::log_binomial(p, j) + j * std::log(alpha) +
                (p - j) * std::log1p(-alpha);
    g.points.push_back({static_cast<double>(j) / p});
    g.weights.push_back(std::exp(lw));
  }
  normalize(g.weights);
  return g;
}

Prior uniform_grid_prior(int p, bool drop_endpoints) {
  if (p < 1) throw parameter_error("uniform_grid_prior: p must be >= 1");
  if (drop_endpoints && p < 2)
    throw parameter_error("uniform_grid_prior: dropping endpoints requires p >= 2");
  DiscreteGridPrior g;
  g.kind = GridKind::binary;
  int lo = drop_endpoints ? 1 : 0;
  int hi = drop_endpoints ? p - 1 : p;
  double w = 1.0 / (hi - lo + 1);
  for (int j = lo; j <= hi; ++j) {
    g.points.push_back({static_cast<double>(j) / p});
    g.weights.push_back(w);
  }
  return g;
}

Prior two_group_binomial_prior(int k, int p, double alpha, const LinkSpec& link) {
  if (k < 1 || k >= p)
    throw parameter_error("two_group_binomial_prior: need 1 <= k < p");
  if (!(alpha > 0) || !(alpha < 1))
    throw parameter_error("two_group_binomial_prior: alpha must lie in (0,1)");
  DiscreteGridPrior g;
  g.kind = GridKind::two_group;
  g.split_k = k;
  int pk = p - k;
  for (int r = 0; r <= k; ++r) {
    double u = static_cast<double>(r) / k;
    double lwu = sf::log_binomial(k, r) + sf::xlogy(r, alpha) +
                 sf::xlogy(k - r, 1 - alpha);
    double fu = link(u);
    for (int s = 0; s <= pk; ++s) {
      double v = static_cast<double>(s) / pk;
      double lwv = sf::log_binomial(pk, s) + sf::xlogy(s, fu) +
                   sf::xlogy(pk - s, 1 - fu);
      g.points.push_back({u, v});
      g.weights.push_back(std::exp(lwu + lwv));
    }
  }
  normalize(g.weights);
  return g;
}

Prior delta_prior(double u) { return grid_prior({u}, {1.0}); }

Prior grid_prior(std::vector<double> points, std::vector<double> weights) {
  if (points.size() != weights.size() || points.empty())
    throw parameter_error("grid_prior: points/weights size mismatch");
  DiscreteGridPrior g;
  g.kind = GridKind::binary;
  for (double u : points) g.points.push_back({u});
  g.weights = std::move(weights);
  Prior prior = g;
  validate(prior);
  return prior;
}

Prior two_group_grid_prior(std::vector<std::vector<double>> points,
                           std::vector<double> weights, int split_k) {
  DiscreteGridPrior g;
  g.kind = GridKind::two_group;
  g.split_k = split_k;
  g.points = std::move(points);
  g.weights = std::move(weights);
  Prior prior = g;
  validate(prior);
  return prior;
}

Prior simplex_grid_prior(std::vector<std::vector<double>> points,
                         std::vector<double> weights) {
  if (points.empty()) throw parameter_error("simplex_grid_prior: no atoms");
  DiscreteGridPrior g;
  g.kind = GridKind::simplex;
  g.m = static_cast<int>(points.front().size());
  g.points = std::move(points);
  g.weights = std::move(weights);
  Prior prior = g;
  validate(prior);
  return prior;
}

Prior graph_prior_uniform(const LinkSpec& link, int split_k, int grid_size) {
  if (split_k < 1) throw parameter_error("graph prior: split index must be >= 1");
  GraphPrior g;
  g.link = link;
  g.split_k = split_k;
  if (link.family == LinkSpec::Family::one_minus_u) {
    // uniform base + 1-u link is beta-conjugate; keep it exact
    g.conjugate = true;
    g.base_a = 1;
    g.base_b = 1;
    return g;
  }
  g.grid_u = midpoint_grid(grid_size);
  g.grid_w.assign(g.grid_u.size(), 1.0 / static_cast<double>(grid_size));
  return g;
}

Prior graph_prior(std::vector<double> grid_u, std::vector<double> grid_w,
                  const LinkSpec& link, int split_k) {
  if (split_k < 1) throw parameter_error("graph prior: split index must be >= 1");
  GraphPrior g;
  g.grid_u = std::move(grid_u);
  g.grid_w = std::move(grid_w);
  g.link = link;
  g.split_k = split_k;
  Prior prior = g;
  validate(prior);
  return prior;
}

MixedGraphPrior mixed_graph_prior_uniform(const LinkSpec& mean_link,
                                          const LinkSpec& var_link, int split_k,
                                          int grid_size) {
  MixedGraphPrior g;
  g.grid_u = midpoint_grid(grid_size);
  g.grid_w.assign(g.grid_u.size(), 1.0 / static_cast<double>(grid_size));
  g.mean_link = mean_link;
  g.var_link = var_link;
  g.var_link.range = LinkSpec::Range::positive;
  g.split_k = split_k;
  Prior prior = g;
  validate(prior);
  return g;
}

MixedGraphPrior mixed_graph_prior(std::vector<double> grid_u,
                                  std::vector<double> grid_w,
                                  const LinkSpec& mean_link,
                                  const LinkSpec& var_link, int split_k) {
  MixedGraphPrior g;
  g.grid_u = std::move(grid_u);
  g.grid_w = std::move(grid_w);
  g.mean_link = mean_link;
  g.var_link = var_link;
  g.var_link.range = LinkSpec::Range::positive;
  g.split_k = split_k;
  Prior prior = g;
  validate(prior);
  return g;
}

// --- validation and queries -------------------------------------------------

void validate(const Prior& prior) {
  std::visit(
      [](const auto& pr) {
        using T = std::decay_t<decltype(pr)>;
        if constexpr (std::is_same_v<T, DiscreteGridPrior>) {
          if (pr.points.size() != pr.weights.size() || pr.points.empty())
            throw parameter_error("grid prior: points/weights size mismatch");
          check_weights(pr.weights);
          std::size_t dim = pr.kind == GridKind::binary    ? 1
                            : pr.kind == GridKind::two_group ? 2
                                                             : static_cast<std::size_t>(pr.m);
          for (const auto& pt : pr.points) {
            if (pt.size() != dim)
              throw parameter_error("grid prior: support point dimension mismatch");
            double sum = 0;
            for (double c : pt) {
              if (!(c >= 0) || (pr.kind != GridKind::simplex && !(c <= 1)))
                throw parameter_error("grid prior: support point outside domain");
              sum += c;
            }
            if (pr.kind == GridKind::simplex && sum > 1 + kWeightTol)
              throw parameter_error("grid prior: simplex point exceeds unit mass");
          }
          if (pr.kind == GridKind::two_group && pr.split_k < 1)
            throw parameter_error("two-group prior: split index must be >= 1");
          if (pr.kind == GridKind::simplex && pr.m < 1)
            throw parameter_error("simplex prior: category bound must be >= 1");
        } else if constexpr (std::is_same_v<T, BetaPrior>) {
          if (!(pr.a > 0) || !(pr.b > 0))
            throw parameter_error("beta prior: parameters must be positive");
        } else if constexpr (std::is_same_v<T, DirichletPrior>) {
          if (pr.alpha.size() < 2)
            throw parameter_error("dirichlet prior: needs at least two parameters");
          for (double a : pr.alpha)
            if (!(a > 0))
              throw parameter_error("dirichlet prior: parameters must be positive");
        } else if constexpr (std::is_same_v<T, GraphPrior>) {
          if (pr.split_k < 1)
            throw parameter_error("graph prior: split index must be >= 1");
          if (pr.conjugate) {
            if (!(pr.base_a > 0) || !(pr.base_b > 0))
              throw parameter_error("graph prior: beta base parameters must be positive");
            if (pr.link.family != LinkSpec::Family::one_minus_u)
              throw parameter_error("graph prior: conjugate base requires the 1-u link");
          } else {
            if (pr.grid_u.size() != pr.grid_w.size() || pr.grid_u.empty())
              throw parameter_error("graph prior: grid size mismatch");
            check_weights(pr.grid_w);
            for (double u : pr.grid_u)
              if (!(u >= 0) || !(u <= 1))
                throw parameter_error("graph prior: grid point outside [0,1]");
          }
        } else if constexpr (std::is_same_v<T, MixedGraphPrior>) {
          if (pr.split_k < 1)
            throw parameter_error("mixed graph prior: split index must be >= 1");
          if (pr.grid_u.size() != pr.grid_w.size() || pr.grid_u.empty())
            throw parameter_error("mixed graph prior: grid size mismatch");
          check_weights(pr.grid_w);
          if (pr.var_link.range != LinkSpec::Range::positive)
            throw parameter_error("mixed graph prior: variance link must map to (0,inf)");
        }
      },
      prior);
}

int category_bound(const Prior& prior) {
  return std::visit(
      [](const auto& pr) -> int {
        using T = std::decay_t<decltype(pr)>;
        if constexpr (std::is_same_v<T, DiscreteGridPrior>)
          return pr.kind == GridKind::simplex ? pr.m : 1;
        else if constexpr (std::is_same_v<T, DirichletPrior>)
          return static_cast<int>(pr.alpha.size()) - 1;
        else
          return 1;
      },
      prior);
}

bool is_two_group(const Prior& prior) {
  if (const auto* g = std::get_if<DiscreteGridPrior>(&prior))
    return g->kind == GridKind::two_group;
  return std::holds_alternative<GraphPrior>(prior) ||
         std::holds_alternative<MixedGraphPrior>(prior);
}

int split_index(const Prior& prior) {
  if (const auto* g = std::get_if<DiscreteGridPrior>(&prior)) {
    if (g->kind != GridKind::two_group)
      throw parameter_error("split_index: prior has no split");
    return g->split_k;
  }
  if (const auto* g = std::get_if<GraphPrior>(&prior)) return g->split_k;
  if (const auto* g = std::get_if<MixedGraphPrior>(&prior)) return g->split_k;
  throw parameter_error("split_index: prior has no split");
}

// --- moments ----------------------------------------------------------------

namespace {

std::vector<Moments> grid_moments(const DiscreteGridPrior& g) {
  std::size_t dim = g.points.front().size();
  bool simplex = g.kind == GridKind::simplex;
  std::size_t ncoord = simplex ? dim + 1 : dim;
  std::vector<double> m1(ncoord, 0), m2(ncoord, 0);
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    double w = g.weights[i];
    double rest = 1;
    for (std::size_t c = 0; c < dim; ++c) rest -= g.points[i][c];
    for (std::size_t c = 0; c < ncoord; ++c) {
      double u = simplex ? (c == 0 ? rest : g.points[i][c - 1]) : g.points[i][c];
      m1[c] += w * u;
      m2[c] += w * u * u;
    }
  }
  std::vector<Moments> out(ncoord);
  for (std::size_t c = 0; c < ncoord; ++c)
    out[c] = {m1[c], std::max(0.0, m2[c] - m1[c] * m1[c])};
  return out;
}

}  // namespace

std::vector<Moments> prior_moments(const Prior& prior) {
  validate(prior);
  if (const auto* g = std::get_if<DiscreteGridPrior>(&prior)) return grid_moments(*g);
  if (const auto* b = std::get_if<BetaPrior>(&prior)) {
    double s = b->a + b->b;
    return {{b->a / s, b->a * b->b / (s * s * (s + 1))}};
  }
  if (const auto* d = std::get_if<DirichletPrior>(&prior)) {
    double A = std::accumulate(d->alpha.begin(), d->alpha.end(), 0.0);
    std::vector<Moments> out;
    for (double aj : d->alpha)
      out.push_back({aj / A, aj * (A - aj) / (A * A * (A + 1))});
    return out;
  }
  throw parameter_error("prior_moments: supported for grid, beta and dirichlet priors");
}

// --- posterior --------------------------------------------------------------

namespace {

template <class LoglikFn>
std::pair<std::vector<double>, bool> reweight(const std::vector<double>& w,
                                              std::size_t n, LoglikFn&& ll) {
  std::vector<double> lw(n);
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    lw[i] = (w[i] > 0 ? std::log(w[i]) : -std::numeric_limits<double>::infinity()) +
            ll(i);
    mx = std::max(mx, lw[i]);
  }
  if (!std::isfinite(mx)) return {{}, false};
  double total = 0;
  for (auto& x : lw) {
    x = std::exp(x - mx);
    total += x;
  }
  for (auto& x : lw) x /= total;
  return {std::move(lw), true};
}

}  // namespace

Prior posterior(const Prior& prior, const SuffStats& stats) {
  stats.validate();
  if (is_two_group(prior)) {
    if (!stats.has_split)
      throw parameter_error("posterior: two-group prior requires split stats");
    if (stats.split_k != split_index(prior))
      throw parameter_error("posterior: split index of stats does not match prior");
  }
  if (const auto* b = std::get_if<BetaPrior>(&prior)) {
    if (stats.counts.size() != 2)
      throw parameter_error("posterior: beta prior requires binary counts");
    return BetaPrior{b->a + static_cast<double>(stats.counts[1]),
                     b->b + static_cast<double>(stats.counts[0])};
  }
  if (const auto* d = std::get_if<DirichletPrior>(&prior)) {
    if (stats.counts.size() != d->alpha.size())
      throw parameter_error("posterior: dirichlet dimension mismatch");
    DirichletPrior out = *d;
    for (std::size_t j = 0; j < out.alpha.size(); ++j)
      out.alpha[j] += static_cast<double>(stats.counts[j]);
    return out;
  }
  if (const auto* g = std::get_if<DiscreteGridPrior>(&prior)) {
    auto [w, ok] = reweight(g->weights, g->points.size(), [&](std::size_t i) {
      return detail::grid_atom_loglik(*g, stats, i);
    });
    if (!ok)
      throw conditioning_error("posterior: observed counts have zero probability under prior");
    DiscreteGridPrior out;
    out.kind = g->kind;
    out.split_k = g->split_k;
    out.m = g->m;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] <= 0) continue;  // drop null atoms
      out.points.push_back(g->points[i]);
      out.weights.push_back(w[i]);
    }
    return out;
  }
  if (const auto* g = std::get_if<GraphPrior>(&prior)) {
    if (g->conjugate) {
      // likelihood folds into u^(s1+t0) (1-u)^(s0+t1) under the 1-u link
      GraphPrior out = *g;
      out.base_a = g->base_a + static_cast<double>(stats.s[1] + stats.t[0]);
      out.base_b = g->base_b + static_cast<double>(stats.s[0] + stats.t[1]);
      return out;
    }
    auto [w, ok] = reweight(g->grid_w, g->grid_u.size(), [&](std::size_t i) {
      return detail::graph_atom_loglik(*g, stats, i);
    });
    if (!ok)
      throw conditioning_error("posterior: observed counts have zero probability under prior");
    GraphPrior out = *g;
    out.grid_u.clear();
    out.grid_w.clear();
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] <= 0) continue;
      out.grid_u.push_back(g->grid_u[i]);
      out.grid_w.push_back(w[i]);
    }
    return out;
  }
  throw parameter_error("posterior: mixed graph priors update against full mixed data, not counts");
}

// --- total variation --------------------------------------------------------

namespace {

struct AtomSet {
  std::vector<std::vector<double>> points;
  std::vector<double> weights;
  std::size_t dim = 0;
};

// Finite-support view of a prior, when one exists.
std::optional<AtomSet> as_atoms(const Prior& prior) {
  if (const auto* g = std::get_if<DiscreteGridPrior>(&prior)) {
    AtomSet a;
    a.points = g->points;
    a.weights = g->weights;
    a.dim = g->points.front().size();
    return a;
  }
  if (const auto* g = std::get_if<GraphPrior>(&prior)) {
    if (g->conjugate) return std::nullopt;
    AtomSet a;
    a.dim = 2;
    for (std::size_t i = 0; i < g->grid_u.size(); ++i) {
      a.points.push_back({g->grid_u[i], g->link(g->grid_u[i])});
      a.weights.push_back(g->grid_w[i]);
    }
    return a;
  }
  if (const auto* g = std::get_if<MixedGraphPrior>(&prior)) {
    AtomSet a;
    a.dim = 3;
    for (std::size_t i = 0; i < g->grid_u.size(); ++i) {
      double u = g->grid_u[i];
      a.points.push_back({u, g->mean_link(u), g->var_link(u)});
      a.weights.push_back(g->grid_w[i]);
    }
    return a;
  }
  return std::nullopt;
}

// Beta-density view: plain beta priors, Dirichlet with m = 1, and the
// conjugate graph prior (whose law is determined by its u-marginal).
std::optional<BetaPrior> as_beta_density(const Prior& prior) {
  if (const auto* b = std::get_if<BetaPrior>(&prior)) return *b;
  if (const auto* d = std::get_if<DirichletPrior>(&prior)) {
    if (d->alpha.size() == 2) return BetaPrior{d->alpha[1], d->alpha[0]};
    return std::nullopt;
  }
  if (const auto* g = std::get_if<GraphPrior>(&prior)) {
    if (g->conjugate) return BetaPrior{g->base_a, g->base_b};
    return std::nullopt;
  }
  return std::nullopt;
}

double discrete_tv(const AtomSet& a, const AtomSet& b) {
  if (a.dim != b.dim)
    throw parameter_error("tv_distance_priors: priors live on different spaces");
  struct Entry {
    const std::vector<double>* pt;
    double w1, w2;
  };
  std::vector<Entry> entries;
  entries.reserve(a.points.size() + b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i)
    entries.push_back({&a.points[i], a.weights[i], 0});
  for (std::size_t i = 0; i < b.points.size(); ++i)
    entries.push_back({&b.points[i], 0, b.weights[i]});
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    return std::lexicographical_compare(x.pt->begin(), x.pt->end(),
                                        y.pt->begin(), y.pt->end());
  });
  auto same_point = [](const std::vector<double>& x, const std::vector<double>& y) {
    for (std::size_t c = 0; c < x.size(); ++c)
      if (std::fabs(x[c] - y[c]) > kAtomMatchTol) return false;
    return true;
  };
  double total = 0;
  std::size_t i = 0;
  while (i < entries.size()) {
    double w1 = entries[i].w1, w2 = entries[i].w2;
    std::size_t j = i + 1;
    while (j < entries.size() && same_point(*entries[i].pt, *entries[j].pt)) {
      w1 += entries[j].w1;
      w2 += entries[j].w2;
      ++j;
    }
    total += std::fabs(w1 - w2);
    i = j;
  }
  return 0.5 * total;
}

double beta_log_pdf_safe(double a, double b, double lB, double u) {
  double t1 = (a == 1) ? 0.0 : (a - 1) * std::log(u);
  double t2 = (b == 1) ? 0.0 : (b - 1) * std::log1p(-u);
  return t1 + t2 - lB;
}

// Quadrature TV between beta densities: locate the (at most two) density
// crossings, then integrate |f1 - f2| piecewise so the integrand is smooth
// on every panel.  Singular tails (parameters < 1) are handled exactly via
// the incomplete beta, since the sign of f1 - f2 is constant there.
double beta_tv_quadrature(const BetaPrior& p1, const BetaPrior& p2) {
  double a1 = p1.a, b1 = p1.b, a2 = p2.a, b2 = p2.b;
  if (a1 == a2 && b1 == b2) return 0;
  double lB1 = sf::log_beta(a1, b1), lB2 = sf::log_beta(a2, b2);
  auto logdiff = [&](double u) {
    return beta_log_pdf_safe(a1, b1, lB1, u) - beta_log_pdf_safe(a2, b2, lB2, u);
  };
  // crossing scan
  std::vector<double> roots;
  constexpr int kScan = 2048;
  double prev_u = 1e-14, prev_g = logdiff(prev_u);
  for (int i = 1; i <= kScan; ++i) {
    double u = (i == kScan) ? 1 - 1e-14 : static_cast<double>(i) / kScan;
    double g = logdiff(u);
    if (std::isfinite(prev_g) && std::isfinite(g) && prev_g * g < 0) {
      double lo = prev_u, hi = u, glo = prev_g;
      for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi), gm = logdiff(mid);
        if (gm == 0) {
          lo = hi = mid;
          break;
        }
        if (glo * gm < 0)
          hi = mid;
        else {
          lo = mid;
          glo = gm;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_u = u;
    prev_g = g;
  }
  bool singular_lo = std::min(a1, a2) < 1;
  bool singular_hi = std::min(b1, b2) < 1;
  double lo = singular_lo ? 1e-8 : 0.0;
  double hi = singular_hi ? 1 - 1e-8 : 1.0;
  if (!roots.empty()) {
    lo = std::min(lo, roots.front() / 2);
    hi = std::max(hi, 1 - (1 - roots.back()) / 2);
  }
  double total = 0;
  // exact tails: sign of f1 - f2 fixed below the first / above the last root
  if (lo > 0)
    total += std::fabs(sf::reg_inc_beta(a1, b1, lo) - sf::reg_inc_beta(a2, b2, lo));
  if (hi < 1)
    total += std::fabs((1 - sf::reg_inc_beta(a1, b1, hi)) -
                       (1 - sf::reg_inc_beta(a2, b2, hi)));
  std::vector<double> knots{lo};
  for (double r : roots)
    if (r > lo && r < hi) knots.push_back(r);
  knots.push_back(hi);
  auto absdiff = [&](double u) {
    u = std::clamp(u, 1e-300, 1 - 1e-16);
    return std::fabs(std::exp(beta_log_pdf_safe(a1, b1, lB1, u)) -
                     std::exp(beta_log_pdf_safe(a2, b2, lB2, u)));
  };
  total += quad::adaptive_simpson_knots(absdiff, knots, 1e-9);
  return 0.5 * total;
}

}  // namespace

TvResult tv_distance_priors(const Prior& p1, const Prior& p2) {
  validate(p1);
  validate(p2);
  auto atoms1 = as_atoms(p1), atoms2 = as_atoms(p2);
  if (atoms1 && atoms2) return {discrete_tv(*atoms1, *atoms2), false};
  auto beta1 = as_beta_density(p1), beta2 = as_beta_density(p2);
  if (beta1 && beta2) {
    // conjugate graph priors only compare with their own kind
    bool graph1 = std::holds_alternative<GraphPrior>(p1);
    bool graph2 = std::holds_alternative<GraphPrior>(p2);
    if (graph1 != graph2) return {1.0, true};  // graph support vs full interval
    return {beta_tv_quadrature(*beta1, *beta2), false};
  }
  if ((atoms1 && beta2) || (atoms2 && beta1)) return {1.0, true};
  throw parameter_error("tv_distance_priors: unsupported prior combination");
}

double beta_tv_bound(double a1, double b1, double a2, double b2, double c,
                     double d) {
  if (!(c > 0) || !(c < d))
    throw parameter_error("beta_tv_bound: need 0 < c < d");
  for (double v : {a1, b1, a2, b2})
    if (!(v >= c) || !(v <= d))
      throw parameter_error("beta_tv_bound: parameters must lie in [c,d]");
  double q = sf::digamma(2 * d) - sf::digamma(c);
  return q * (std::fabs(a1 - a2) + std::fabs(b1 - b2));
}

}  // namespace catknock
