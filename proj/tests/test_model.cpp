#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "catknock/errors.hpp"
#include "catknock/model.hpp"
#include "catknock/quadrature.hpp"
#include "catknock/rng.hpp"
#include "catknock/robustness.hpp"
#include "catknock/special_functions.hpp"

using namespace catknock;

namespace {

CategoricalVector vec(std::vector<int> codes, int m = 1) {
  return CategoricalVector{std::move(codes), m};
}

// Simpson oracle for the binary marginal under a beta prior, with the
// integrand rescaled by its mode value so the tolerance is effectively
// relative
double beta_marginal_quadrature(double a, double b, long long n0, long long n1) {
  double ea = static_cast<double>(n1) + a - 1, eb = static_cast<double>(n0) + b - 1;
  double mode = (ea + eb > 0) ? ea / (ea + eb) : 0.5;
  mode = std::clamp(mode, 1e-9, 1 - 1e-9);
  double lscale = ea * std::log(mode) + eb * std::log1p(-mode);
  auto f = [&](double u) {
    u = std::clamp(u, 1e-300, 1 - 1e-16);
    return std::exp(ea * std::log(u) + eb * std::log1p(-u) - lscale);
  };
  double integral = quad::adaptive_simpson(f, 0, 1, 1e-13);
  return std::exp(lscale - sf::log_beta(a, b)) * integral;
}

// Iterated composite-Simpson oracle over the 2-simplex for a Dirichlet
// marginal.  Callers keep every exponent >= 1, so the integrand vanishes on
// the boundary and the endpoint terms drop out.
double dirichlet_marginal_quadrature(const std::vector<double>& alpha,
                                     const std::vector<long long>& n) {
  double e0 = static_cast<double>(n[0]) + alpha[0] - 1;
  double e1 = static_cast<double>(n[1]) + alpha[1] - 1;
  double e2 = static_cast<double>(n[2]) + alpha[2] - 1;
  double lnorm = sf::log_gamma(alpha[0]) + sf::log_gamma(alpha[1]) +
                 sf::log_gamma(alpha[2]) -
                 sf::log_gamma(alpha[0] + alpha[1] + alpha[2]);
  const int N = 600;  // composite Simpson panels (even count)
  auto inner = [&](double u1) {
    double hi = 1 - u1;
    if (hi <= 0 || u1 <= 0) return 0.0;
    auto g = [&](double u2) {
      double rest = hi - u2;
      if (u2 <= 0 || rest <= 0) return 0.0;
      return std::pow(rest, e0) * std::pow(u1, e1) * std::pow(u2, e2);
    };
    double h = hi / N, acc = 0;
    for (int i = 1; i < N; ++i) acc += g(i * h) * (i % 2 ? 4 : 2);
    return acc * h / 3;
  };
  double h = 1.0 / N, acc = 0;
  for (int i = 1; i < N; ++i) acc += inner(i * h) * (i % 2 ? 4 : 2);
  return acc * h / 3 / std::exp(lnorm);
}

}  // namespace

TEST_CASE("suff_stats counts and splits") {
  SuffStats s = suff_stats(vec({1, 0, 1}));
  CHECK(s.counts[0] == 1);
  CHECK(s.counts[1] == 2);

  SuffStats z = suff_stats(vec({0, 0, 0, 0}, 2));
  CHECK(z.counts == std::vector<long long>{4, 0, 0});

  SuffStats sp = suff_stats(vec({1, 0, 1, 1}), 2);
  CHECK(sp.s == std::vector<long long>{1, 1});
  CHECK(sp.t == std::vector<long long>{0, 2});

  CHECK_THROWS_AS(suff_stats(vec({0, 2}, 1)), parameter_error);
  CHECK_THROWS_AS(suff_stats(vec({0, 1}), 2), parameter_error);
}

TEST_CASE("marginal closed forms: spec examples") {
  CHECK(marginal_prob(SuffStats::binary(1, 1), BetaPrior{1, 1}) ==
        doctest::Approx(1.0 / 6).epsilon(1e-13));

  DirichletPrior d{{1, 1, 1}};
  for (int c = 0; c <= 2; ++c) {
    SuffStats st;
    st.counts = {0, 0, 0};
    st.counts[static_cast<std::size_t>(c)] = 1;
    CHECK(marginal_prob(st, d) == doctest::Approx(1.0 / 3).epsilon(1e-13));
  }

  // uniform graph prior with the 1-u link, p=2, k=1, s1=1, t0=1
  Prior g = graph_prior_uniform(LinkSpec::one_minus_u(), 1);
  SuffStats st = SuffStats::two_group_binary(0, 1, 1, 0);
  CHECK(marginal_prob(st, g) == doctest::Approx(1.0 / 3).epsilon(1e-13));
}

TEST_CASE("beta closed form vs quadrature oracle") {
  SeededRng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    double a = 1 + 6 * rng.uniform(), b = 1 + 6 * rng.uniform();
    long long n1 = static_cast<long long>(rng.uniform() * 15);
    long long n0 = static_cast<long long>(rng.uniform() * 15);
    double closed = marginal_prob(SuffStats::binary(n0, n1), BetaPrior{a, b});
    double oracle = beta_marginal_quadrature(a, b, n0, n1);
    CHECK(std::fabs(closed - oracle) / oracle < 1e-8);
  }
}

TEST_CASE("dirichlet closed form vs iterated quadrature oracle") {
  SeededRng rng(43);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> alpha{1 + 3 * rng.uniform(), 1 + 3 * rng.uniform(),
                              1 + 3 * rng.uniform()};
    std::vector<long long> n{1 + static_cast<long long>(rng.uniform() * 4),
                             1 + static_cast<long long>(rng.uniform() * 4),
                             1 + static_cast<long long>(rng.uniform() * 4)};
    SuffStats st;
    st.counts = n;
    double closed = marginal_prob(st, DirichletPrior{alpha});
    double oracle = dirichlet_marginal_quadrature(alpha, n);
    CHECK(std::fabs(closed - oracle) / closed < 1e-6);
  }
}

TEST_CASE("joint law: degenerate and closed-form examples") {
  // delta atom: joint factorizes into powers of u
  Prior d = delta_prior(0.3);
  SuffStats x = SuffStats::binary(1, 2), xk = SuffStats::binary(2, 1);
  CHECK(joint_prob(x, xk, d) ==
        doctest::Approx(std::pow(0.3, 3) * std::pow(0.7, 3)).epsilon(1e-13));

  CHECK(joint_prob(SuffStats::binary(0, 1), SuffStats::binary(0, 1), BetaPrior{1, 1}) ==
        doctest::Approx(1.0 / 3).epsilon(1e-13));

  CHECK_THROWS_AS(
      joint_prob(SuffStats::binary(1, 1), SuffStats::binary(1, 2), BetaPrior{1, 1}),
      parameter_error);
}

TEST_CASE("joint sums to the marginal over knockoff count classes") {
  std::vector<Prior> priors{BetaPrior{2, 3}, binomial_grid_prior(5, 0.3),
                            uniform_grid_prior(4, true)};
  for (const auto& prior : priors) {
    for (int p = 1; p <= 6; ++p) {
      for (long long n1 = 0; n1 <= p; ++n1) {
        SuffStats x = SuffStats::binary(p - n1, n1);
        double marg = marginal_prob(x, prior);
        double acc = 0;
        for (long long k1 = 0; k1 <= p; ++k1) {
          SuffStats xk = SuffStats::binary(p - k1, k1);
          acc += std::exp(sf::log_binomial(p, static_cast<double>(k1)) +
                          log_joint_prob(x, xk, prior));
        }
        CHECK(acc == doctest::Approx(marg).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("conditional pmf: examples and normalization") {
  // delta prior: conditional does not depend on x
  Prior d = delta_prior(0.6);
  SuffStats xa = SuffStats::binary(2, 1), xb = SuffStats::binary(0, 3);
  SuffStats xk = SuffStats::binary(1, 2);
  CHECK(conditional_knockoff_pmf(xa, xk, d) ==
        doctest::Approx(conditional_knockoff_pmf(xb, xk, d)).epsilon(1e-13));

  CHECK(conditional_knockoff_pmf(SuffStats::binary(0, 1), SuffStats::binary(0, 1),
                                 BetaPrior{1, 1}) ==
        doctest::Approx(2.0 / 3).epsilon(1e-13));

  // sums to 1 over all knockoff count classes, p <= 6
  std::vector<Prior> priors{BetaPrior{1.5, 2.5}, binomial_grid_prior(6, 0.3)};
  for (const auto& prior : priors) {
    int p = 6;
    SuffStats x = SuffStats::binary(4, 2);
    double acc = 0;
    for (long long k1 = 0; k1 <= p; ++k1) {
      SuffStats xk = SuffStats::binary(p - k1, k1);
      acc += std::exp(sf::log_binomial(p, static_cast<double>(k1)) +
                      log_conditional_knockoff_pmf(x, xk, prior));
    }
    CHECK(acc == doctest::Approx(1.0).epsilon(1e-10));
  }

  CHECK_THROWS_AS(conditional_knockoff_pmf(SuffStats::binary(0, 1),
                                           SuffStats::binary(1, 0), delta_prior(0)),
                  conditioning_error);
}

TEST_CASE("conditional equals marginal under the posterior") {
  std::vector<Prior> priors{BetaPrior{2, 5}, binomial_grid_prior(5, 0.4),
                            DirichletPrior{{1, 2, 1.5}}};
  // binary families
  for (const auto& prior : priors) {
    if (category_bound(prior) != 1) continue;
    SuffStats x = SuffStats::binary(3, 2);
    Prior post = posterior(prior, x);
    for (long long k1 = 0; k1 <= 5; ++k1) {
      SuffStats xk = SuffStats::binary(5 - k1, k1);
      CHECK(conditional_knockoff_pmf(x, xk, prior) ==
            doctest::Approx(marginal_prob(xk, post)).epsilon(1e-12));
    }
  }
  // categorical family
  {
    DirichletPrior prior{{1, 2, 1.5}};
    SuffStats x;
    x.counts = {2, 1, 2};
    Prior post = posterior(prior, x);
    for_each_count_class(5, 2, [&](const std::vector<long long>& counts, double) {
      SuffStats xk;
      xk.counts = counts;
      CHECK(conditional_knockoff_pmf(x, xk, prior) ==
            doctest::Approx(marginal_prob(xk, post)).epsilon(1e-12));
    });
  }
  // conjugate graph prior
  {
    Prior prior = graph_prior_uniform(LinkSpec::one_minus_u(), 2);
    SuffStats x = SuffStats::two_group_binary(1, 1, 1, 2);
    Prior post = posterior(prior, x);
    SuffStats xk = SuffStats::two_group_binary(0, 2, 2, 1);
    CHECK(conditional_knockoff_pmf(x, xk, prior) ==
          doctest::Approx(marginal_prob(xk, post)).epsilon(1e-12));
  }
}

TEST_CASE("probabilities depend on x only through the counts") {
  Prior prior = binomial_grid_prior(4, 0.3);
  CategoricalVector x1 = vec({1, 1, 0, 0});
  CategoricalVector x2 = vec({0, 1, 0, 1});
  double l1 = log_marginal_prob(suff_stats(x1), prior);
  double l2 = log_marginal_prob(suff_stats(x2), prior);
  CHECK(l1 == l2);  // bitwise equal: same code path, same counts
}

TEST_CASE("normalization over F^p for every prior family") {
  struct Case {
    Prior prior;
    int p;
  };
  std::vector<Case> cases;
  cases.push_back({BetaPrior{2, 3}, 6});
  cases.push_back({BetaPrior{0.5, 0.7}, 5});  // singular-density parameters
  cases.push_back({binomial_grid_prior(6, 0.25), 6});
  cases.push_back({uniform_grid_prior(5), 5});
  cases.push_back({DirichletPrior{{1.5, 1.0, 2.0}}, 5});

  for (const auto& c : cases) {
    int m = category_bound(c.prior);
    double acc = 0;
    for_each_count_class(c.p, m, [&](const std::vector<long long>& counts,
                                     double logmult) {
      SuffStats st;
      st.counts = counts;
      acc += std::exp(logmult + log_marginal_prob(st, c.prior));
    });
    CHECK(acc == doctest::Approx(1.0).epsilon(1e-10));
  }

  // two-group families: enumerate block counts with binomial multiplicities
  std::vector<Prior> tg{two_group_binomial_prior(2, 6, 0.3, LinkSpec::one_minus_u()),
                        two_group_binomial_prior(3, 6, 0.6, LinkSpec::power(2)),
                        graph_prior_uniform(LinkSpec::one_minus_u(), 2),
                        graph_prior_uniform(LinkSpec::power(1.5), 2, 512)};
  for (const auto& prior : tg) {
    int k = split_index(prior), p = 6;
    double acc = 0;
    for (long long s1 = 0; s1 <= k; ++s1)
      for (long long t1 = 0; t1 <= p - k; ++t1) {
        SuffStats st = SuffStats::two_group_binary(k - s1, s1, p - k - t1, t1);
        acc += std::exp(sf::log_binomial(k, static_cast<double>(s1)) +
                        sf::log_binomial(p - k, static_cast<double>(t1)) +
                        log_marginal_prob(st, prior));
      }
    CHECK(acc == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("swap exchangeability of the joint law (small p)") {
  // the joint law depends only on summed counts, so swapping coordinate i
  // between x and xk leaves it unchanged; verify by full enumeration
  std::vector<Prior> priors{BetaPrior{2, 3}, binomial_grid_prior(3, 0.3)};
  int p = 3;
  for (const auto& prior : priors) {
    double mass = 0;
    for (int xa = 0; xa < (1 << p); ++xa)
      for (int xb = 0; xb < (1 << p); ++xb) {
        std::vector<int> x(p), xk(p);
        for (int i = 0; i < p; ++i) {
          x[i] = (xa >> i) & 1;
          xk[i] = (xb >> i) & 1;
        }
        double pr = std::exp(
            log_joint_prob(suff_stats(vec(x)), suff_stats(vec(xk)), prior));
        mass += pr;
        for (int i = 0; i < p; ++i) {
          std::vector<int> xs = x, xks = xk;
          std::swap(xs[i], xks[i]);
          double ps = std::exp(log_joint_prob(suff_stats(vec(xs)),
                                              suff_stats(vec(xks)), prior));
          CHECK(std::fabs(ps - pr) <= 1e-12);
        }
      }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("conjugate graph closed form vs quadrature") {
  Prior g = graph_prior_uniform(LinkSpec::one_minus_u(), 2);
  SuffStats st = SuffStats::two_group_binary(1, 1, 2, 1);
  // integrand u^(s1+t0) (1-u)^(s0+t1) on [0,1]
  double oracle = quad::adaptive_simpson(
      [&](double u) { return std::pow(u, 3) * std::pow(1 - u, 2); }, 0, 1, 1e-13);
  CHECK(marginal_prob(st, g) == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("mixed density") {
  // k = p: reduces to the marginal of the binary block
  LinkSpec f2 = LinkSpec::affine(1, 0);
  MixedGraphPrior mg = mixed_graph_prior_uniform(LinkSpec::power(1), f2, 3, 256);
  MixedVector x{{1, 0, 1}, {}};
  // same grid as a plain binary grid prior
  Prior flat = grid_prior(mg.grid_u, mg.grid_w);
  CHECK(mixed_density(x, mg) ==
        doctest::Approx(marginal_prob(SuffStats::binary(1, 2), flat)).epsilon(1e-12));

  // single atom: u^{s1} (1-u)^{s0} prod phi(x_j | f1(u), f2(u))
  MixedGraphPrior atom = mixed_graph_prior({0.3}, {1.0}, LinkSpec::power(1),
                                           LinkSpec::affine(2, 0), 2);
  MixedVector xa{{1, 1}, {0.5}};
  double expected = 0.3 * 0.3 * std::exp(sf::normal_log_pdf(0.5, 0.3, 2.0));
  CHECK(mixed_density(xa, atom) == doctest::Approx(expected).epsilon(1e-12));

  // uniform base, f1(u) = u, f2 = 1, k = 1, p = 2: high-resolution oracle
  MixedGraphPrior uni = mixed_graph_prior_uniform(LinkSpec::power(1),
                                                  LinkSpec::affine(1, 0), 1, 4096);
  MixedVector xu{{1}, {0.25}};
  double oracle = quad::adaptive_simpson(
      [&](double u) { return u * std::exp(sf::normal_log_pdf(0.25, u, 1.0)); }, 0,
      1, 1e-13);
  CHECK(mixed_density(xu, uni) == doctest::Approx(oracle).epsilon(1e-5));

  CHECK(mixed_log_density(xu, uni) > -std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(mixed_density(MixedVector{{1, 0}, {}}, uni), parameter_error);
}
