#include "catknock/suff_stats.hpp"

#include <string>

#include "catknock/errors.hpp"

namespace catknock {

SuffStats SuffStats::operator+(const SuffStats& o) const {
  if (counts.size() != o.counts.size())
    throw parameter_error("SuffStats: category bounds differ");
  if (has_split != o.has_split || (has_split && split_k != o.split_k))
    throw parameter_error("SuffStats: split structure differs");
  SuffStats r = *this;
  for (std::size_t j = 0; j < counts.size(); ++j) r.counts[j] += o.counts[j];
  if (has_split) {
    r.split_k += o.split_k;  // the pair has 2k first-block coordinates
    for (std::size_t j = 0; j < s.size(); ++j) {
      r.s[j] += o.s[j];
      r.t[j] += o.t[j];
    }
  }
  return r;
}

SuffStats SuffStats::binary(long long n0, long long n1) {
  SuffStats st;
  st.counts = {n0, n1};
  return st;
}

SuffStats SuffStats::two_group_binary(long long s0, long long s1, long long t0,
                                      long long t1) {
  SuffStats st;
  st.counts = {s0 + t0, s1 + t1};
  st.has_split = true;
  st.split_k = static_cast<int>(s0 + s1);
  st.s = {s0, s1};
  st.t = {t0, t1};
  return st;
}

void SuffStats::validate() const {
  for (long long c : counts)
    if (c < 0) throw parameter_error("SuffStats: negative count");
  if (has_split) {
    if (s.size() != counts.size() || t.size() != counts.size())
      throw parameter_error("SuffStats: split count dimension mismatch");
    long long sk = 0;
    for (std::size_t j = 0; j < counts.size(); ++j) {
      if (s[j] < 0 || t[j] < 0 || s[j] + t[j] != counts[j])
        throw parameter_error("SuffStats: split counts inconsistent with totals");
      sk += s[j];
    }
    if (sk != split_k) throw parameter_error("SuffStats: split counts do not sum to k");
  }
}

CategoricalVector CategoricalMatrix::row(std::size_t i) const {
  CategoricalVector v;
  v.m = m;
  v.codes.assign(codes.begin() + static_cast<std::ptrdiff_t>(i * cols),
                 codes.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols));
  return v;
}

SuffStats suff_stats(const CategoricalVector& x, std::optional<int> split_k) {
  if (x.m < 1) throw parameter_error("suff_stats: category bound must be >= 1");
  SuffStats st;
  st.counts.assign(static_cast<std::size_t>(x.m) + 1, 0);
  for (std::size_t i = 0; i < x.codes.size(); ++i) {
    int c = x.codes[i];
    if (c < 0 || c > x.m)
      throw parameter_error("suff_stats: code " + std::to_string(c) +
                            " at position " + std::to_string(i) +
                            " outside {0,...," + std::to_string(x.m) + "}");
  }
  if (split_k) {
    int k = *split_k;
    if (k < 1 || static_cast<std::size_t>(k) >= x.codes.size())
      throw parameter_error("suff_stats: split index must satisfy 1 <= k < p");
    st.has_split = true;
    st.split_k = k;
    st.s.assign(st.counts.size(), 0);
    st.t.assign(st.counts.size(), 0);
  }
  for (std::size_t i = 0; i < x.codes.size(); ++i) {
    int c = x.codes[i];
    ++st.counts[static_cast<std::size_t>(c)];
    if (st.has_split) {
      if (i < static_cast<std::size_t>(st.split_k))
        ++st.s[static_cast<std::size_t>(c)];
      else
        ++st.t[static_cast<std::size_t>(c)];
    }
  }
  return st;
}

}  // namespace catknock
