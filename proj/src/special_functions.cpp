#include "catknock/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "catknock/errors.hpp"

namespace catknock::sf {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310005024;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;

// Lanczos g = 7, n = 9 (Godfrey coefficients).
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

double log_gamma_lanczos(double x) {
  // valid for x >= 0.5
  double sum = kLanczos[0];
  for (int i = 1; i < 9; ++i) sum += kLanczos[i] / (x - 1 + i);
  double t = x + 6.5;  // x + g - 0.5
  return kLogSqrt2Pi + (x - 0.5) * std::log(t) - t + std::log(sum);
}

// Continued fraction for the incomplete beta (modified Lentz).
double betacf(double a, double b, double x) {
  constexpr double eps = 3e-16, fpmin = 1e-300;
  double qab = a + b, qap = a + 1, qam = a - 1;
  double c = 1, d = 1 - qab * x / qap;
  if (std::fabs(d) < fpmin) d = fpmin;
  d = 1 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1) < eps) break;
  }
  return h;
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0)) throw parameter_error("log_gamma: argument must be positive");
  if (x < 0.5) return log_gamma_lanczos(x + 1) - std::log(x);
  return log_gamma_lanczos(x);
}

double digamma(double x) {
  if (!(x > 0)) throw parameter_error("digamma: argument must be positive");
  double r = 0;
  while (x < 10) {
    r -= 1 / x;
    x += 1;
  }
  double inv = 1 / x, inv2 = inv * inv;
  double series =
      1. / 12 -
      inv2 * (1. / 120 -
              inv2 * (1. / 252 -
                      inv2 * (1. / 240 -
                              inv2 * (1. / 132 -
                                      inv2 * (691. / 32760 - inv2 / 12)))));
  return r + std::log(x) - 0.5 * inv - inv2 * series;
}

double log_beta(double a, double b) {
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double log_binomial(double n, double k) {
  if (k < 0 || k > n) throw parameter_error("log_binomial: need 0 <= k <= n");
  return log_gamma(n + 1) - log_gamma(k + 1) - log_gamma(n - k + 1);
}

double log_multinomial(long long n, std::span<const long long> counts) {
  double r = log_gamma(static_cast<double>(n) + 1);
  long long total = 0;
  for (long long c : counts) {
    if (c < 0) throw parameter_error("log_multinomial: negative count");
    r -= log_gamma(static_cast<double>(c) + 1);
    total += c;
  }
  if (total != n) throw parameter_error("log_multinomial: counts do not sum to n");
  return r;
}

double reg_inc_beta(double a, double b, double x) {
  if (!(a > 0) || !(b > 0)) throw parameter_error("reg_inc_beta: a, b must be positive");
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  double lbt = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
  if (x < (a + 1) / (a + b + 2)) return std::exp(lbt) * betacf(a, b, x) / a;
  return 1 - std::exp(lbt) * betacf(b, a, 1 - x) / b;
}

double reg_lower_gamma(double a, double x) {
  if (!(a > 0)) throw parameter_error("reg_lower_gamma: a must be positive");
  if (x <= 0) return 0;
  if (x < a + 1) {
    // series representation
    double ap = a, sum = 1.0 / a, del = sum;
    for (int n = 0; n < 1000; ++n) {
      ap += 1;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-17) break;
    }
    return sum * std::exp(-x + a * std::log(x) - log_gamma(a));
  }
  return 1 - reg_upper_gamma(a, x);
}

double reg_upper_gamma(double a, double x) {
  if (!(a > 0)) throw parameter_error("reg_upper_gamma: a must be positive");
  if (x <= 0) return 1;
  if (x < a + 1) return 1 - reg_lower_gamma(a, x);
  // continued fraction (modified Lentz)
  double b = x + 1 - a, c = 1e300, d = 1 / b, h = d;
  for (int i = 1; i <= 1000; ++i) {
    double an = -static_cast<double>(i) * (i - a);
    b += 2;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1) < 1e-17) break;
  }
  return std::exp(-x + a * std::log(x) - log_gamma(a)) * h;
}

double erfc(double x) {
  if (x < 0) return 2 - erfc(-x);
  if (x == 0) return 1;
  return reg_upper_gamma(0.5, x * x);
}

double normal_cdf(double z) { return 0.5 * erfc(-z / std::sqrt(2.0)); }

double normal_log_pdf(double x, double mean, double var) {
  if (!(var > 0)) throw parameter_error("normal_log_pdf: variance must be positive");
  double d = x - mean;
  return -0.5 * std::log(var) - kLogSqrt2Pi - 0.5 * d * d / var;
}

double inv_normal_cdf(double p) {
  if (!(p > 0) || !(p < 1)) throw parameter_error("inv_normal_cdf: p must lie in (0,1)");
  // Acklam's rational approximation ...
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double plow = 0.02425;
  double x;
  if (p < plow) {
    double q = std::sqrt(-2 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else if (p <= 1 - plow) {
    double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  } else {
    double q = std::sqrt(-2 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  // ... polished with two Halley steps against the in-house CDF.
  for (int it = 0; it < 2; ++it) {
    double e = normal_cdf(x) - p;
    double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
    x -= u / (1 + 0.5 * x * u);
  }
  return x;
}

double inv_gamma_cdf(double a, double p) {
  if (!(a > 0)) throw parameter_error("inv_gamma_cdf: a must be positive");
  if (!(p >= 0) || !(p < 1)) throw parameter_error("inv_gamma_cdf: p must lie in [0,1)");
  if (p == 0) return 0;
  double gln = log_gamma(a);
  double a1 = a - 1;
  double lna1 = 0, afac = 0;
  double x;
  if (a > 1) {
    // Wilson-Hilferty starting point
    lna1 = std::log(a1);
    afac = std::exp(a1 * (lna1 - 1) - gln);
    double z = inv_normal_cdf(p);
    x = a * std::pow(1 - 1 / (9. * a) + z / (3. * std::sqrt(a)), 3);
    x = std::max(x, 1e-3);
  } else {
    double t = 1 - a * (0.253 + a * 0.12);
    if (p < t)
      x = std::pow(p / t, 1. / a);
    else
      x = 1 - std::log1p(-(p - t) / (1 - t));
  }
  for (int j = 0; j < 24; ++j) {
    if (x <= 0) x = 1e-300;
    double err = reg_lower_gamma(a, x) - p;
    double pdf = (a > 1) ? afac * std::exp(-(x - a1) + a1 * (std::log(x) - lna1))
                         : std::exp(-x + a1 * std::log(x) - gln);
    if (pdf <= 0) break;
    double u = err / pdf;
    // Halley step
    double step = u / (1 - 0.5 * std::min(1.0, u * (a1 / x - 1)));
    x -= step;
    if (x <= 0) x = 0.5 * (x + step);
    if (std::fabs(step) < 1e-14 * std::max(x, 1e-300) && j > 1) break;
  }
  return x;
}

double xlogy(long long n, double y) {
  if (n == 0) return 0;
  if (y <= 0) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(n) * std::log(y);
}

double log_sum_exp(std::span<const double> v) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double x : v) mx = std::max(mx, x);
  if (!std::isfinite(mx)) return mx;
  double s = 0;
  for (double x : v) s += std::exp(x - mx);
  return mx + std::log(s);
}

double log_add_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (!std::isfinite(a)) return a;
  return a + std::log1p(std::exp(b - a));
}

}  // namespace catknock::sf
