#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace catknock {

// Category counts n_0..n_m; optionally split into first-block counts s and
// second-block counts t at index k (s_j + t_j = n_j).  These are the
// sufficient statistics behind every probability in the library.
struct SuffStats {
  std::vector<long long> counts;
  bool has_split = false;
  int split_k = 0;
  std::vector<long long> s, t;

  long long p() const {
    long long total = 0;
    for (long long c : counts) total += c;
    return total;
  }
  int category_bound() const { return static_cast<int>(counts.size()) - 1; }

  // Componentwise sum; exponent counts of the knockoff joint law.
  SuffStats operator+(const SuffStats& o) const;

  static SuffStats binary(long long n0, long long n1);
  static SuffStats two_group_binary(long long s0, long long s1, long long t0,
                                    long long t1);

  void validate() const;
};

struct CategoricalVector {
  std::vector<int> codes;
  int m = 1;  // codes live in {0, ..., m}
};

// Row-major matrix of category codes.
struct CategoricalMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<int> codes;
  int m = 1;

  int operator()(std::size_t i, std::size_t j) const { return codes[i * cols + j]; }
  int& operator()(std::size_t i, std::size_t j) { return codes[i * cols + j]; }
  CategoricalVector row(std::size_t i) const;
};

// Binary prefix plus real-valued tail (partially exchangeable mixed model).
struct MixedVector {
  std::vector<int> binary;
  std::vector<double> cont;
};

// Exact counts of x; with split_k, also the per-block counts.
SuffStats suff_stats(const CategoricalVector& x,
                     std::optional<int> split_k = std::nullopt);

}  // namespace catknock
