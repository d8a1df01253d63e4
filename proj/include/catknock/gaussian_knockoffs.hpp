#pragma once

#include "catknock/linalg.hpp"
#include "catknock/rng.hpp"

namespace catknock {

// Second-order Gaussian Model-X knockoffs with the equicorrelated s-vector:
// the comparison construction applied to categorical codes as if they were
// continuous.

struct GaussianKnockoffModel {
  std::vector<double> mu;     // column means
  Matrix sigma;               // shrunk covariance (positive definite)
  double shrink_weight = 0;   // convex weight toward diag(Sigma)
  std::vector<double> s;      // equicorrelated s-vector on covariance scale
  Matrix gain;                // Sigma^{-1} diag(s); cond mean = x - (x - mu) gain
  Matrix cond_sqrt;           // PSD square root of 2 diag(s) - S Sigma^{-1} S
};

GaussianKnockoffModel fit_gaussian_model(const Matrix& X);

Matrix sample_gaussian_knockoffs(const GaussianKnockoffModel& model,
                                 const Matrix& X, SeededRng rng);

// fit + sample in one call.
Matrix gaussian_knockoffs(const Matrix& X, SeededRng rng);

}  // namespace catknock
