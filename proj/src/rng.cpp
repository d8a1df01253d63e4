#include "catknock/rng.hpp"

#include <algorithm>
#include <cmath>

#include "catknock/errors.hpp"
#include "catknock/special_functions.hpp"

namespace catknock {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a;
  std::uint64_t h = splitmix64(x);
  x = h ^ (b + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2));
  return splitmix64(x);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
  std::uint64_t x = mix(seed, stream);
  for (auto& s : state_) s = splitmix64(x);
}

SeededRng SeededRng::spawn(std::uint64_t index) const {
  return SeededRng(seed_, mix(stream_, index));
}

std::uint64_t SeededRng::next_u64() {
  // xoshiro256++
  std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double SeededRng::uniform() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double SeededRng::normal() { return sf::inv_normal_cdf(uniform()); }

double SeededRng::gamma(double shape) {
  if (!(shape > 0)) throw parameter_error("SeededRng::gamma: shape must be positive");
  return sf::inv_gamma_cdf(shape, uniform());
}

double SeededRng::beta(double a, double b) {
  double ga = gamma(a), gb = gamma(b);
  double s = ga + gb;
  if (s <= 0) return a / (a + b);  // both draws underflowed; shape-mean fallback
  return ga / s;
}

std::vector<double> SeededRng::dirichlet(std::span<const double> alpha) {
  std::vector<double> g(alpha.size());
  double total = 0;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    g[j] = gamma(alpha[j]);
    total += g[j];
  }
  if (total <= 0) {
    double a = 0;
    for (double v : alpha) a += v;
    for (std::size_t j = 0; j < alpha.size(); ++j) g[j] = alpha[j] / a;
    return g;
  }
  for (auto& v : g) v /= total;
  return g;
}

std::size_t SeededRng::categorical(std::span<const double> probs) {
  double u = uniform();
  double cum = 0;
  std::size_t last = 0;
  for (std::size_t j = 0; j < probs.size(); ++j) {
    if (probs[j] <= 0) continue;
    cum += probs[j];
    last = j;
    if (u < cum) return j;
  }
  return last;
}

std::size_t SeededRng::categorical_from_cdf(std::span<const double> cdf) {
  double u = uniform() * cdf.back();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
  return std::min(idx, cdf.size() - 1);
}

}  // namespace catknock
