#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpa/random.hpp"

namespace cpa {

// A permutation of {1..n}. Values are 1-based (matching the usual
// combinatorial notation); positions handed around the API are 0-based.
// The same type serves as a consecutive pattern sigma in S_m.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<int> entries) : entries_(std::move(entries)) {
    validate();
  }

  static Permutation identity(int n) {
    std::vector<int> e(static_cast<std::size_t>(n));
    std::iota(e.begin(), e.end(), 1);
    return Permutation(std::move(e));
  }

  int size() const { return static_cast<int>(entries_.size()); }
  const std::vector<int>& entries() const { return entries_; }

  // Value at 0-based position.
  int operator[](int pos) const { return entries_[static_cast<std::size_t>(pos)]; }

  friend bool operator==(const Permutation& a, const Permutation& b) = default;

  // Lexicographic comparison on entries; used to pick class representatives.
  friend bool operator<(const Permutation& a, const Permutation& b) {
    return a.entries_ < b.entries_;
  }

 private:
  void validate() const {
    const std::size_t n = entries_.size();
    std::vector<bool> seen(n + 1, false);
    for (int v : entries_) {
      if (v < 1 || static_cast<std::size_t>(v) > n || seen[static_cast<std::size_t>(v)])
        throw std::invalid_argument("not a permutation of {1..n}");
      seen[static_cast<std::size_t>(v)] = true;
    }
  }

  std::vector<int> entries_;
};

// A pattern is structurally a permutation; the alias marks intent.
using Pattern = Permutation;

// Sorted 0-based offsets i such that the window starting at i matches the
// pattern; empty means the permutation avoids it.
using OccurrenceList = std::vector<int>;

namespace detail {

// Ranks of `values` written into `out` (1-based ranks, order-isomorphic).
// Caller guarantees distinctness when `checked` is false.
inline void rank_into(const int* values, std::size_t k, std::vector<int>& out) {
  static thread_local std::vector<int> idx;
  idx.resize(k);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return values[a] < values[b]; });
  out.resize(k);
  for (std::size_t r = 0; r < k; ++r) out[static_cast<std::size_t>(idx[r])] = static_cast<int>(r) + 1;
}

}  // namespace detail

// Order-isomorphic relabeling onto {1..k}: (3,5,1) -> (2,3,1).
inline Pattern standardize(const std::vector<int>& values) {
  if (values.empty()) throw std::invalid_argument("standardize: empty input");
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      if (values[i] == values[j])
        throw std::invalid_argument("standardize: values must be distinct");
  std::vector<int> ranks;
  detail::rank_into(values.data(), values.size(), ranks);
  return Pattern(std::move(ranks));
}

// All 0-based offsets at which pi contains sigma as a consecutive pattern.
inline OccurrenceList occurrences(const Permutation& pi, const Pattern& sigma) {
  OccurrenceList out;
  const int n = pi.size();
  const int m = sigma.size();
  if (m < 1 || n < m) return out;
  std::vector<int> ranks;
  const int* data = pi.entries().data();
  for (int i = 0; i + m <= n; ++i) {
    detail::rank_into(data + i, static_cast<std::size_t>(m), ranks);
    if (std::equal(ranks.begin(), ranks.end(), sigma.entries().begin())) out.push_back(i);
  }
  return out;
}

// Early-exit containment test (Monte Carlo hot path).
inline bool contains(const Permutation& pi, const Pattern& sigma) {
  const int n = pi.size();
  const int m = sigma.size();
  if (m < 1 || n < m) return false;
  std::vector<int> ranks;
  const int* data = pi.entries().data();
  for (int i = 0; i + m <= n; ++i) {
    detail::rank_into(data + i, static_cast<std::size_t>(m), ranks);
    if (std::equal(ranks.begin(), ranks.end(), sigma.entries().begin())) return true;
  }
  return false;
}

// Position reversal: (1,3,2) -> (2,3,1). Involution.
inline Pattern reverse(const Pattern& p) {
  std::vector<int> e(p.entries().rbegin(), p.entries().rend());
  return Pattern(std::move(e));
}

// Value reversal v -> m+1-v: (1,3,2) -> (3,1,2). Involution.
inline Pattern complement(const Pattern& p) {
  const int m = p.size();
  std::vector<int> e;
  e.reserve(static_cast<std::size_t>(m));
  for (int v : p.entries()) e.push_back(m + 1 - v);
  return Pattern(std::move(e));
}

// Uniform random element of S_m; fully determined by (m, seed).
inline Pattern random_pattern(int m, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("random_pattern: m must be >= 1");
  std::vector<int> e(static_cast<std::size_t>(m));
  std::iota(e.begin(), e.end(), 1);
  SplitMix64 rng(seed);
  rng.shuffle(e);
  return Pattern(std::move(e));
}

// Text format: digits concatenated for m <= 9 ("132"); comma-separated for
// m >= 10 ("1,10,2,9").
inline std::string format_pattern(const Pattern& p) {
  std::string s;
  if (p.size() <= 9) {
    for (int v : p.entries()) s += static_cast<char>('0' + v);
  } else {
    for (int v : p.entries()) {
      if (!s.empty()) s += ',';
      s += std::to_string(v);
    }
  }
  return s;
}

inline Pattern parse_pattern(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty pattern string");
  std::vector<int> e;
  if (text.find(',') != std::string::npos) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t next = std::min(text.find(',', pos), text.size());
      const std::string tok = text.substr(pos, next - pos);
      if (tok.empty()) throw std::invalid_argument("malformed pattern string: " + text);
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(tok, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("malformed pattern string: " + text);
      }
      if (used != tok.size()) throw std::invalid_argument("malformed pattern string: " + text);
      e.push_back(v);
      pos = next + 1;
    }
  } else {
    for (char c : text) {
      if (c < '1' || c > '9') throw std::invalid_argument("malformed pattern string: " + text);
      e.push_back(c - '0');
    }
  }
  try {
    return Pattern(std::move(e));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a permutation: " + text);
  }
}

}  // namespace cpa
