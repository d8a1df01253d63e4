#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace catknock {

// Counter-keyed deterministic RNG: xoshiro256++ seeded through splitmix64
// from a (master seed, stream) pair.  Identical (seed, stream) produce
// identical sequences on every platform; child streams are derived by
// hashing, never by splitting state, so work can be keyed by index rather
// than by execution order.
//
// All variate generators are inverse-CDF based (one or two uniforms per
// draw, no accept/reject loops), which keeps the uniform stream consumption
// a fixed function of the request sequence.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed, std::uint64_t stream = 0);

  // Child stream keyed by index; independent of any draws made so far.
  SeededRng spawn(std::uint64_t index) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint64_t next_u64();

  // Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();

  // Standard normal via quantile transform.
  double normal();

  // Gamma(shape, scale 1) and Beta(a, b) via quantile / gamma-ratio draws.
  double gamma(double shape);
  double beta(double a, double b);

  // Dirichlet(alpha) as normalized independent gamma draws.
  std::vector<double> dirichlet(std::span<const double> alpha);

  int bernoulli(double p) { return uniform() < p ? 1 : 0; }

  // Index draw from a probability vector (assumed normalized).
  std::size_t categorical(std::span<const double> probs);

  // Index draw from a cumulative weight vector (last entry = total mass).
  std::size_t categorical_from_cdf(std::span<const double> cdf);

 private:
  std::array<std::uint64_t, 4> state_{};
  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
};

}  // namespace catknock
