#pragma once

#include <span>
#include <vector>

// Scalar special functions used throughout: log-gamma, digamma, regularized
// incomplete beta/gamma, and the inverse CDFs backing the samplers.  All of
// them are plain deterministic code (no libm special functions beyond
// exp/log/sqrt), so results are reproducible across standard libraries.

namespace catknock::sf {

// Lanczos approximation, x > 0.  Relative accuracy ~1e-14 on [1e-3, 1e4].
double log_gamma(double x);

// psi(x) = d/dx log Gamma(x), x > 0.  Upward recurrence past 10, then the
// Bernoulli asymptotic series.
double digamma(double x);

double log_beta(double a, double b);

// log C(n, k) for real n >= k >= 0.
double log_binomial(double n, double k);

// log of the multinomial coefficient n! / prod(counts_j!).
double log_multinomial(long long n, std::span<const long long> counts);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double reg_inc_beta(double a, double b, double x);

// Regularized incomplete gamma P(a, x) and Q(a, x) = 1 - P(a, x).
double reg_lower_gamma(double a, double x);
double reg_upper_gamma(double a, double x);

double erfc(double x);
double normal_cdf(double z);
double normal_log_pdf(double x, double mean, double var);

// Quantile functions, p in (0,1).  Rational initial guess plus Newton/Halley
// polish against the (in-house) CDFs; accurate to ~1e-14.
double inv_normal_cdf(double p);
double inv_gamma_cdf(double a, double p);

// n * log(y) with the 0^0 = 1 convention: n == 0 gives 0 regardless of y.
double xlogy(long long n, double y);

double log_sum_exp(std::span<const double> v);
double log_add_exp(double a, double b);

}  // namespace catknock::sf
