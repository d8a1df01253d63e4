#include "catknock/gaussian_knockoffs.hpp"

#include <algorithm>
#include <cmath>

#include "catknock/errors.hpp"

namespace catknock {

namespace {

constexpr double kMinEigen = 1e-6;

Matrix shrink_to_diag(const Matrix& sigma, double w) {
  std::size_t p = sigma.rows;
  Matrix out = sigma;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      out(i, j) = (i == j) ? sigma(i, j) : (1 - w) * sigma(i, j);
  return out;
}

}  // namespace

GaussianKnockoffModel fit_gaussian_model(const Matrix& X) {
  std::size_t n = X.rows, p = X.cols;
  if (n < 2 || p < 1) throw parameter_error("gaussian_knockoffs: need n >= 2, p >= 1");
  for (double v : X.data)
    if (!std::isfinite(v)) throw parameter_error("gaussian_knockoffs: non-finite input");

  GaussianKnockoffModel m;
  m.mu.assign(p, 0);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t i = 0; i < n; ++i) m.mu[j] += X(i, j);
    m.mu[j] /= static_cast<double>(n);
  }
  Matrix sigma(p, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      double cj = X(i, j) - m.mu[j];
      for (std::size_t l = j; l < p; ++l)
        sigma(j, l) += cj * (X(i, l) - m.mu[l]);
    }
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t l = j; l < p; ++l) {
      sigma(j, l) /= static_cast<double>(n);
      sigma(l, j) = sigma(j, l);
    }
  for (std::size_t j = 0; j < p; ++j)
    sigma(j, j) = std::max(sigma(j, j), 1e-12);

  // smallest convex shrinkage toward diag(sigma) that clears the eigen floor
  if (sym_min_eigenvalue(sigma) >= kMinEigen) {
    m.shrink_weight = 0;
  } else {
    double mn = 0;
    for (std::size_t j = 0; j < p; ++j)
      mn = (j == 0) ? sigma(j, j) : std::min(mn, sigma(j, j));
    if (mn < kMinEigen)
      throw parameter_error("gaussian_knockoffs: degenerate covariance diagonal");
    double lo = 0, hi = 1;
    for (int it = 0; it < 50; ++it) {
      double mid = 0.5 * (lo + hi);
      if (sym_min_eigenvalue(shrink_to_diag(sigma, mid)) >= kMinEigen)
        hi = mid;
      else
        lo = mid;
    }
    m.shrink_weight = hi;
  }
  m.sigma = shrink_to_diag(sigma, m.shrink_weight);

  // equicorrelated s on the correlation scale, mapped back
  Matrix corr(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      corr(i, j) = m.sigma(i, j) / std::sqrt(m.sigma(i, i) * m.sigma(j, j));
  double lam_min = sym_min_eigenvalue(corr);
  double s_corr = std::min(2 * lam_min, 1.0);
  m.s.assign(p, 0);
  for (std::size_t j = 0; j < p; ++j) m.s[j] = s_corr * m.sigma(j, j);

  SymEigen eig = sym_eigen(m.sigma);
  Matrix sigma_inv(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      double acc = 0;
      for (std::size_t k = 0; k < p; ++k)
        acc += eig.vectors(i, k) * eig.vectors(j, k) / eig.values[k];
      sigma_inv(i, j) = acc;
    }

  m.gain = Matrix(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) m.gain(i, j) = sigma_inv(i, j) * m.s[j];

  // conditional covariance 2 diag(s) - S Sigma^{-1} S, floored to PSD
  Matrix cond(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      cond(i, j) = -m.s[i] * sigma_inv(i, j) * m.s[j];
      if (i == j) cond(i, j) += 2 * m.s[i];
    }
  SymEigen ce = sym_eigen(cond);
  m.cond_sqrt = Matrix(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t k = 0; k < p; ++k) {
      double root = ce.values[k] > 0 ? std::sqrt(ce.values[k]) : 0.0;
      m.cond_sqrt(i, k) = ce.vectors(i, k) * root;
    }
  return m;
}

Matrix sample_gaussian_knockoffs(const GaussianKnockoffModel& model,
                                 const Matrix& X, SeededRng rng) {
  std::size_t n = X.rows, p = X.cols;
  if (p != model.mu.size())
    throw parameter_error("gaussian_knockoffs: column count does not match model");
  Matrix Xk(n, p);
  std::vector<double> centered(p), z(p);
  for (std::size_t i = 0; i < n; ++i) {
    SeededRng row_rng = rng.spawn(i);
    for (std::size_t j = 0; j < p; ++j) centered[j] = X(i, j) - model.mu[j];
    for (std::size_t j = 0; j < p; ++j) z[j] = row_rng.normal();
    for (std::size_t j = 0; j < p; ++j) {
      double mean = X(i, j);
      for (std::size_t l = 0; l < p; ++l) mean -= centered[l] * model.gain(l, j);
      double noise = 0;
      for (std::size_t l = 0; l < p; ++l) noise += model.cond_sqrt(j, l) * z[l];
      Xk(i, j) = mean + noise;
    }
  }
  return Xk;
}

Matrix gaussian_knockoffs(const Matrix& X, SeededRng rng) {
  return sample_gaussian_knockoffs(fit_gaussian_model(X), X, rng);
}

}  // namespace catknock
