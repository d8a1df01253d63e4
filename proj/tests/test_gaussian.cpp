#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "catknock/errors.hpp"
#include "catknock/gaussian_knockoffs.hpp"
#include "catknock/rng.hpp"

using namespace catknock;

namespace {

Matrix gaussian_data(std::size_t n, std::size_t p, SeededRng& rng) {
  Matrix X(n, p);
  for (auto& v : X.data) v = rng.normal();
  return X;
}

Matrix empirical_cov(const Matrix& X, std::vector<double>& mean) {
  std::size_t n = X.rows, p = X.cols;
  mean.assign(p, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) mean[j] += X(i, j);
  for (auto& m : mean) m /= static_cast<double>(n);
  Matrix S(p, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t l = 0; l < p; ++l)
        S(j, l) += (X(i, j) - mean[j]) * (X(i, l) - mean[l]);
  for (auto& v : S.data) v /= static_cast<double>(n);
  return S;
}

Matrix cross_cov(const Matrix& A, const Matrix& B) {
  std::size_t n = A.rows, p = A.cols;
  std::vector<double> ma(p, 0), mb(p, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      ma[j] += A(i, j);
      mb[j] += B(i, j);
    }
  for (std::size_t j = 0; j < p; ++j) {
    ma[j] /= static_cast<double>(n);
    mb[j] /= static_cast<double>(n);
  }
  Matrix S(p, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t l = 0; l < p; ++l)
        S(j, l) += (A(i, j) - ma[j]) * (B(i, l) - mb[l]);
  for (auto& v : S.data) v /= static_cast<double>(n);
  return S;
}

}  // namespace

TEST_CASE("jacobi eigensolver on a known matrix") {
  Matrix A(2, 2);
  A(0, 0) = 2;
  A(0, 1) = 1;
  A(1, 0) = 1;
  A(1, 1) = 2;
  SymEigen e = sym_eigen(A);
  CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e.values[1] == doctest::Approx(3.0).epsilon(1e-12));
  // reconstruct
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      double acc = 0;
      for (std::size_t k = 0; k < 2; ++k)
        acc += e.vectors(i, k) * e.values[k] * e.vectors(j, k);
      CHECK(acc == doctest::Approx(A(i, j)).epsilon(1e-12));
    }
}

TEST_CASE("near-identity covariance gives s close to 1 and decorrelated knockoffs") {
  SeededRng rng(103);
  Matrix X = gaussian_data(20000, 4, rng);
  GaussianKnockoffModel m = fit_gaussian_model(X);
  for (double s : m.s) CHECK(s == doctest::Approx(1.0).epsilon(0.05));

  Matrix Xk = sample_gaussian_knockoffs(m, X, SeededRng(7));
  Matrix C = cross_cov(X, Xk);
  // Cov(X_i, Xk_i) should sit near Sigma_ii - s_i, which is ~0 here
  for (std::size_t j = 0; j < 4; ++j)
    CHECK(std::fabs(C(j, j) - (m.sigma(j, j) - m.s[j])) < 0.05);
}

TEST_CASE("second-order exchangeability of the augmented moments") {
  SeededRng rng(107);
  std::size_t n = 100000, p = 4;
  // correlated design: x_j = z_j + shared factor
  Matrix X(n, p);
  for (std::size_t i = 0; i < n; ++i) {
    double f = rng.normal();
    for (std::size_t j = 0; j < p; ++j) X(i, j) = rng.normal() + 0.6 * f;
  }
  GaussianKnockoffModel m = fit_gaussian_model(X);
  Matrix Xk = sample_gaussian_knockoffs(m, X, SeededRng(11));

  std::vector<double> mean_k;
  Matrix Sk = empirical_cov(Xk, mean_k);
  double se = 3.5 / std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < p; ++j)
    CHECK(std::fabs(mean_k[j] - m.mu[j]) < 3 * se);
  // Cov(Xk) matches Sigma within MC error
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t l = 0; l < p; ++l)
      CHECK(std::fabs(Sk(j, l) - m.sigma(j, l)) < 0.03);
  // Cov(X_i, Xk_j) = Sigma_ij off the diagonal, Sigma_ii - s_i on it
  Matrix C = cross_cov(X, Xk);
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t l = 0; l < p; ++l) {
      double target = (j == l) ? m.sigma(j, j) - m.s[j] : m.sigma(j, l);
      CHECK(std::fabs(C(j, l) - target) < 0.03);
    }
}

TEST_CASE("augmented covariance is PSD after clipping") {
  SeededRng rng(109);
  // strongly correlated columns force real shrinkage and clipping
  std::size_t n = 500, p = 6;
  Matrix X(n, p);
  for (std::size_t i = 0; i < n; ++i) {
    double f = rng.normal();
    for (std::size_t j = 0; j < p; ++j) X(i, j) = 0.05 * rng.normal() + f;
  }
  GaussianKnockoffModel m = fit_gaussian_model(X);
  // [[Sigma, Sigma - S], [Sigma - S, Sigma]]
  std::size_t p2 = 2 * p;
  Matrix G(p2, p2);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      double off = m.sigma(i, j) - (i == j ? m.s[i] : 0.0);
      G(i, j) = m.sigma(i, j);
      G(p + i, p + j) = m.sigma(i, j);
      G(i, p + j) = off;
      G(p + i, j) = off;
    }
  CHECK(sym_min_eigenvalue(G) >= -1e-8);
}

TEST_CASE("shrinkage engages for rank-deficient input") {
  SeededRng rng(113);
  std::size_t n = 10, p = 20;  // n < p: empirical covariance is singular
  Matrix X(n, p);
  for (auto& v : X.data) v = rng.normal();
  GaussianKnockoffModel m = fit_gaussian_model(X);
  CHECK(m.shrink_weight > 0);
  CHECK(sym_min_eigenvalue(m.sigma) >= 1e-6 - 1e-12);
  Matrix Xk = sample_gaussian_knockoffs(m, X, SeededRng(3));
  for (double v : Xk.data) CHECK(std::isfinite(v));
}

TEST_CASE("deterministic under a fixed seed") {
  SeededRng rng(127);
  Matrix X = gaussian_data(50, 3, rng);
  Matrix a = gaussian_knockoffs(X, SeededRng(9, 2));
  Matrix b = gaussian_knockoffs(X, SeededRng(9, 2));
  CHECK(a.data == b.data);
}

TEST_CASE("non-finite input is rejected") {
  Matrix X(3, 2);
  X(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(fit_gaussian_model(X), parameter_error);
}
