#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "catknock/errors.hpp"
#include "catknock/selection.hpp"

namespace catknock {

namespace {

struct Standardized {
  Matrix X;                       // centered, unit population variance columns
  std::vector<double> y;          // centered
  std::vector<double> mean, sd;   // per column; sd 0 marks constant columns
};

Standardized standardize(const Matrix& X, std::span<const double> y) {
  std::size_t n = X.rows, d = X.cols;
  if (y.size() != n) throw parameter_error("lasso: y length does not match X rows");
  for (double v : y)
    if (!std::isfinite(v)) throw parameter_error("lasso: non-finite response");
  Standardized s;
  s.X = Matrix(n, d);
  s.mean.assign(d, 0);
  s.sd.assign(d, 0);
  for (std::size_t j = 0; j < d; ++j) {
    double m = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double v = X(i, j);
      if (!std::isfinite(v)) throw parameter_error("lasso: non-finite design entry");
      m += v;
    }
    m /= static_cast<double>(n);
    double v2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double c = X(i, j) - m;
      v2 += c * c;
    }
    double sd = std::sqrt(v2 / static_cast<double>(n));
    s.mean[j] = m;
    s.sd[j] = sd;
    if (sd > 0)
      for (std::size_t i = 0; i < n; ++i) s.X(i, j) = (X(i, j) - m) / sd;
    // constant columns stay identically zero and get coefficient 0
  }
  double ym = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  s.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.y[i] = y[i] - ym;
  return s;
}

inline double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0;
}

double kkt_residual(const Matrix& X, std::span<const double> resid,
                    std::span<const double> beta, double lambda) {
  std::size_t n = X.rows, d = X.cols;
  double worst = 0;
  for (std::size_t j = 0; j < d; ++j) {
    double g = 0;
    for (std::size_t i = 0; i < n; ++i) g += X(i, j) * resid[i];
    g /= static_cast<double>(n);  // = -(d/d beta_j) of the smooth part
    double viol = (beta[j] != 0) ? std::fabs(g - lambda * (beta[j] > 0 ? 1 : -1))
                                 : std::max(0.0, std::fabs(g) - lambda);
    worst = std::max(worst, viol);
  }
  return worst;
}

// Coordinate descent on pre-standardized data, warm-started from beta.
// Returns the number of sweeps used, or -1 if the sweep limit was hit.
int descend(const Matrix& X, std::span<const double> y, double lambda,
            std::vector<double>& beta, std::vector<double>& resid,
            int max_sweeps) {
  std::size_t n = X.rows, d = X.cols;
  constexpr double kCoefTol = 1e-10;
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    double max_delta = 0;
    for (std::size_t j = 0; j < d; ++j) {
      // constant columns are all-zero: rho = 0 -> beta stays 0
      double rho = 0;
      for (std::size_t i = 0; i < n; ++i) rho += X(i, j) * resid[i];
      rho = rho / static_cast<double>(n) + beta[j];
      double bj = soft_threshold(rho, lambda);
      double delta = bj - beta[j];
      if (delta != 0) {
        for (std::size_t i = 0; i < n; ++i) resid[i] -= delta * X(i, j);
        beta[j] = bj;
        max_delta = std::max(max_delta, std::fabs(delta));
      }
    }
    if (max_delta < kCoefTol) return sweep;
  }
  (void)y;
  return -1;
}

double lambda_max_of(const Matrix& X, std::span<const double> y) {
  std::size_t n = X.rows, d = X.cols;
  double mx = 0;
  for (std::size_t j = 0; j < d; ++j) {
    double g = 0;
    for (std::size_t i = 0; i < n; ++i) g += X(i, j) * y[i];
    mx = std::max(mx, std::fabs(g) / static_cast<double>(n));
  }
  return mx;
}

}  // namespace

LassoFit fit_lasso(const Matrix& X, std::span<const double> y, double lambda,
                   int max_sweeps) {
  if (!(lambda >= 0)) throw parameter_error("fit_lasso: lambda must be nonnegative");
  Standardized s = standardize(X, y);
  LassoFit fit;
  fit.lambda = lambda;
  fit.beta.assign(X.cols, 0);
  std::vector<double> resid = s.y;
  int sweeps = descend(s.X, s.y, lambda, fit.beta, resid, max_sweeps);
  fit.kkt_residual = kkt_residual(s.X, resid, fit.beta, lambda);
  fit.sweeps = sweeps < 0 ? max_sweeps : sweeps;
  if (fit.kkt_residual > 1e-6)
    throw convergence_error("fit_lasso: coordinate descent did not converge",
                            fit.kkt_residual);
  return fit;
}

std::vector<double> make_lambda_grid(double lambda_max, int size, double ratio) {
  if (!(lambda_max > 0)) throw parameter_error("make_lambda_grid: lambda_max must be positive");
  if (size < 2 || !(ratio > 0) || !(ratio < 1))
    throw parameter_error("make_lambda_grid: invalid grid shape");
  std::vector<double> grid(static_cast<std::size_t>(size));
  double step = std::log(ratio) / (size - 1);
  for (int i = 0; i < size; ++i)
    grid[static_cast<std::size_t>(i)] = lambda_max * std::exp(step * i);
  return grid;
}

WStats coef_diff_stats(const Matrix& X, const Matrix& Xk,
                       std::span<const double> y, SeededRng rng,
                       std::vector<double> lambda_grid) {
  if (X.rows != Xk.rows || X.cols != Xk.cols)
    throw parameter_error("coef_diff_stats: X and Xk shapes differ");
  std::size_t n = X.rows, p = X.cols, d = 2 * p;
  Matrix aug(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      aug(i, j) = X(i, j);
      aug(i, p + j) = Xk(i, j);
    }
  Standardized s = standardize(aug, y);

  if (lambda_grid.empty()) {
    double lmax = lambda_max_of(s.X, s.y);
    if (lmax <= 0) lmax = 1e-8;  // null response; any small grid works
    lambda_grid = make_lambda_grid(lmax);
  }
  std::sort(lambda_grid.begin(), lambda_grid.end(), std::greater<>());

  // 5-fold assignment from a seeded permutation
  constexpr int kFolds = 5;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(i));
    j = std::min(j, i - 1);
    std::swap(perm[i - 1], perm[j]);
  }
  std::vector<int> fold(n);
  for (std::size_t i = 0; i < n; ++i) fold[perm[i]] = static_cast<int>(i % kFolds);

  std::vector<double> cv_mse(lambda_grid.size(), 0);
  for (int f = 0; f < kFolds; ++f) {
    std::vector<std::size_t> train, val;
    for (std::size_t i = 0; i < n; ++i) (fold[i] == f ? val : train).push_back(i);
    Matrix Xt(train.size(), d);
    std::vector<double> yt(train.size());
    for (std::size_t r = 0; r < train.size(); ++r) {
      yt[r] = s.y[train[r]];
      for (std::size_t j = 0; j < d; ++j) Xt(r, j) = s.X(train[r], j);
    }
    std::vector<double> beta(d, 0), resid = yt;
    for (std::size_t li = 0; li < lambda_grid.size(); ++li) {
      if (descend(Xt, yt, lambda_grid[li], beta, resid, 100000) < 0)
        throw convergence_error("coef_diff_stats: CV path fit did not converge",
                                kkt_residual(Xt, resid, beta, lambda_grid[li]));
      double err = 0;
      for (std::size_t vi : val) {
        double pred = 0;
        for (std::size_t j = 0; j < d; ++j) pred += s.X(vi, j) * beta[j];
        double e = s.y[vi] - pred;
        err += e * e;
      }
      cv_mse[li] += err / static_cast<double>(val.size());
    }
  }

  std::size_t best = 0;
  for (std::size_t li = 1; li < lambda_grid.size(); ++li)
    if (cv_mse[li] < cv_mse[best] - 1e-12) best = li;

  LassoFit fit = fit_lasso(aug, y, lambda_grid[best]);
  WStats w;
  w.lambda = lambda_grid[best];
  w.column_mean = s.mean;
  w.column_sd = s.sd;
  w.w.resize(p);
  for (std::size_t j = 0; j < p; ++j)
    w.w[j] = std::fabs(fit.beta[j]) - std::fabs(fit.beta[p + j]);
  // a column identical to its knockoff carries no information, and the
  // coordinate-descent tie break would otherwise give it an arbitrary sign;
  // antisymmetry forces w = 0 there
  for (std::size_t j = 0; j < p; ++j) {
    bool same = true;
    for (std::size_t i = 0; i < n && same; ++i)
      same = (s.X(i, j) == s.X(i, p + j));
    if (same) w.w[j] = 0;
  }
  return w;
}

SelectionResult knockoff_threshold(const WStats& w, double q, bool plus) {
  if (!(q > 0) || !(q < 1)) throw parameter_error("knockoff_threshold: q must lie in (0,1)");
  SelectionResult res;
  res.q = q;
  res.plus = plus;
  std::vector<double> candidates;
  for (double wi : w.w) {
    if (!std::isfinite(wi)) throw parameter_error("knockoff_threshold: non-finite statistic");
    if (std::fabs(wi) > 0) candidates.push_back(std::fabs(wi));
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  double offset = plus ? 1.0 : 0.0;
  res.threshold = std::numeric_limits<double>::infinity();
  for (double t : candidates) {
    std::size_t neg = 0, pos = 0;
    for (double wi : w.w) {
      if (wi <= -t) ++neg;
      if (wi >= t) ++pos;
    }
    double ratio = (offset + static_cast<double>(neg)) /
                   std::max<double>(1.0, static_cast<double>(pos));
    if (ratio <= q) {
      res.threshold = t;
      break;
    }
  }
  if (std::isfinite(res.threshold))
    for (std::size_t i = 0; i < w.w.size(); ++i)
      if (w.w[i] >= res.threshold) res.selected.push_back(static_cast<int>(i));
  return res;
}

FdrPower fdr_power(std::span<const int> selected, std::span<const int> true_support) {
  std::vector<int> sel(selected.begin(), selected.end());
  std::vector<int> sup(true_support.begin(), true_support.end());
  std::sort(sel.begin(), sel.end());
  std::sort(sup.begin(), sup.end());
  std::vector<int> hits;
  std::set_intersection(sel.begin(), sel.end(), sup.begin(), sup.end(),
                        std::back_inserter(hits));
  FdrPower out;
  double nsel = static_cast<double>(sel.size());
  out.fdp = (nsel - static_cast<double>(hits.size())) / std::max(1.0, nsel);
  out.power = sup.empty() ? 0.0
                          : static_cast<double>(hits.size()) /
                                static_cast<double>(sup.size());
  return out;
}

}  // namespace catknock
