#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "cpa/numeric.hpp"
#include "cpa/pattern.hpp"

namespace cpa {

// A pattern has an overlap at k when its length-k prefix and suffix
// standardize identically; two occurrences may then share k positions.
struct OverlapProfile {
  int m = 0;
  std::vector<int> overlaps;  // sorted subset of [1, m-1]; 1 is always present
  int max_overlap = 0;

  bool has(int k) const {
    return std::binary_search(overlaps.begin(), overlaps.end(), k);
  }
};

inline OverlapProfile overlap_profile(const Pattern& sigma) {
  const int m = sigma.size();
  if (m < 2) throw std::invalid_argument("overlap_profile: pattern length must be >= 2");
  OverlapProfile prof;
  prof.m = m;
  const auto& e = sigma.entries();
  for (int k = 1; k < m; ++k) {
    const std::vector<int> prefix(e.begin(), e.begin() + k);
    const std::vector<int> suffix(e.end() - k, e.end());
    if (standardize(prefix) == standardize(suffix)) prof.overlaps.push_back(k);
  }
  prof.max_overlap = prof.overlaps.back();  // k = 1 always qualifies
  return prof;
}

struct Classification {
  int max_overlap = 0;
  bool is_non_overlapping = false;  // member of M_1
  bool is_monotone = false;         // (12...m) or (m...21)
};

inline Classification classify(const Pattern& sigma) {
  const OverlapProfile prof = overlap_profile(sigma);
  Classification c;
  c.max_overlap = prof.max_overlap;
  c.is_non_overlapping = prof.max_overlap == 1;
  c.is_monotone = prof.max_overlap == prof.m - 1;
  return c;
}

namespace detail {

constexpr int kExhaustiveLimit = 8;  // S_8 = 40320 patterns: milliseconds each

template <class Fn>
void for_each_pattern(int m, Fn&& fn) {
  std::vector<int> e(static_cast<std::size_t>(m));
  std::iota(e.begin(), e.end(), 1);
  do {
    fn(Pattern(std::vector<int>(e)));
  } while (std::next_permutation(e.begin(), e.end()));
}

}  // namespace detail

// Exhaustive check that the only patterns with an overlap at m-1 are the two
// monotone ones. Returns every sigma in S_m with such an overlap.
inline std::vector<Pattern> verify_monotone_lemma(int m) {
  if (m < 3 || m > detail::kExhaustiveLimit)
    throw std::invalid_argument("verify_monotone_lemma: m must be in [3, 8]");
  std::vector<Pattern> found;
  detail::for_each_pattern(m, [&](const Pattern& p) {
    if (overlap_profile(p).has(m - 1)) found.push_back(p);
  });
  return found;
}

// Values forced on the shared positions of a double occurrence: if tau in
// S_{2m-k} has occurrences of sigma at offsets 0 and m-k, then for 0 <= i < k
//   tau_{m-i} = sigma_{k-i} + sigma_{m-i} - sigma'_{k-i}
// with sigma' the standardization of sigma's length-k suffix. Returned as a
// map from 1-based position in the length-(2m-k) word to its forced value.
inline std::map<int, int> forced_suffix(const Pattern& sigma, int k) {
  const int m = sigma.size();
  if (k < 1 || k > m - 1) throw std::invalid_argument("forced_suffix: k must be in [1, m-1]");
  const OverlapProfile prof = overlap_profile(sigma);
  if (!prof.has(k)) throw std::invalid_argument("impossible event pair");
  const auto& e = sigma.entries();
  const Pattern sp = standardize(std::vector<int>(e.end() - k, e.end()));
  std::map<int, int> forced;
  for (int i = 0; i < k; ++i)
    forced[m - i] = e[static_cast<std::size_t>(k - i - 1)] +
                    e[static_cast<std::size_t>(m - i - 1)] - sp[k - i - 1];
  return forced;
}

// Exact number of words tau in S_{2m-k} realizing occurrences of sigma at
// both offset 0 and offset m-k, plus the binomial bound C(2(m-k), m-k).
struct JointCount {
  int m = 0;
  int k = 0;
  BigInt count;
  BigInt bound;
};

// Route 1: full enumeration of S_{2m-k}. Guarded at 11! words.
inline BigInt joint_count_enumerate(const Pattern& sigma, int k) {
  const int m = sigma.size();
  const int L = 2 * m - k;
  if (L > 11) throw capacity_error("joint_count_enumerate: word length above 11");
  BigInt count = 0;
  std::vector<int> tau(static_cast<std::size_t>(L));
  std::iota(tau.begin(), tau.end(), 1);
  do {
    const std::vector<int> w1(tau.begin(), tau.begin() + m);
    if (standardize(w1) != sigma) continue;
    const std::vector<int> w2(tau.end() - m, tau.end());
    if (standardize(w2) == sigma) ++count;
  } while (std::next_permutation(tau.begin(), tau.end()));
  return count;
}

// Route 2: constructive counting. The shared positions are forced; choosing
// which m-k of the 2(m-k) unforced values land in the first window determines
// the whole word, so candidates are scanned as subsets, not words.
inline BigInt joint_count_constructive(const Pattern& sigma, int k) {
  const int m = sigma.size();
  const int L = 2 * m - k;
  const OverlapProfile prof = overlap_profile(sigma);
  if (!prof.has(k)) return 0;

  const std::map<int, int> forced = forced_suffix(sigma, k);
  std::vector<bool> is_forced(static_cast<std::size_t>(L + 1), false);
  for (const auto& [pos, val] : forced) {
    (void)pos;
    if (val < 1 || val > L || is_forced[static_cast<std::size_t>(val)]) return 0;
    is_forced[static_cast<std::size_t>(val)] = true;
  }
  std::vector<int> free_vals;
  for (int v = 1; v <= L; ++v)
    if (!is_forced[static_cast<std::size_t>(v)]) free_vals.push_back(v);

  const int f = m - k;  // window 1 takes f free values, window 2 the rest
  const int total = static_cast<int>(free_vals.size());  // = 2(m-k)
  const auto& sig = sigma.entries();

  BigInt count = 0;
  std::vector<int> pick(static_cast<std::size_t>(f));
  std::iota(pick.begin(), pick.end(), 0);  // indices into free_vals
  std::vector<int> tau(static_cast<std::size_t>(L + 1), 0);
  std::vector<int> w1, w2;
  for (;;) {
    w1.clear();
    std::vector<bool> in_pick(static_cast<std::size_t>(total), false);
    for (int idx : pick) {
      w1.push_back(free_vals[static_cast<std::size_t>(idx)]);
      in_pick[static_cast<std::size_t>(idx)] = true;
    }
    for (const auto& [pos, val] : forced) {
      (void)pos;
      w1.push_back(val);
    }
    std::sort(w1.begin(), w1.end());

    bool ok = true;
    std::fill(tau.begin(), tau.end(), 0);
    for (int j = 1; j <= m && ok; ++j)
      tau[static_cast<std::size_t>(j)] = w1[static_cast<std::size_t>(sig[j - 1] - 1)];
    for (const auto& [pos, val] : forced)
      if (tau[static_cast<std::size_t>(pos)] != val) { ok = false; break; }

    if (ok) {
      w2.clear();
      for (int idx = 0; idx < total; ++idx)
        if (!in_pick[static_cast<std::size_t>(idx)])
          w2.push_back(free_vals[static_cast<std::size_t>(idx)]);
      for (const auto& [pos, val] : forced) {
        (void)pos;
        w2.push_back(val);
      }
      std::sort(w2.begin(), w2.end());
      for (int j = 1; j <= m && ok; ++j) {
        const int pos = m - k + j;
        const int v = w2[static_cast<std::size_t>(sig[j - 1] - 1)];
        if (pos <= m) {
          if (tau[static_cast<std::size_t>(pos)] != v) ok = false;
        } else {
          tau[static_cast<std::size_t>(pos)] = v;
        }
      }
      if (ok) ++count;
    }

    // next f-combination of [0, total)
    int i = f - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == total - f + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < f; ++j)
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  return count;
}

// Dispatcher: exact enumeration while the word fits the 11! guard, else the
// constructive route. Both agree wherever both apply (tested).
inline JointCount joint_count(const Pattern& sigma, int k) {
  const int m = sigma.size();
  if (k < 1 || k > m - 1) throw std::invalid_argument("joint_count: k must be in [1, m-1]");
  JointCount jc;
  jc.m = m;
  jc.k = k;
  jc.bound = binomial(static_cast<unsigned>(2 * (m - k)), static_cast<unsigned>(m - k));
  if (!overlap_profile(sigma).has(k)) {
    jc.count = 0;  // Pr(A_i and A_{i+m-k}) = 0 without an overlap at k
    return jc;
  }
  const int L = 2 * m - k;
  jc.count = L <= 11 ? joint_count_enumerate(sigma, k) : joint_count_constructive(sigma, k);
  return jc;
}

// Exhaustive census of N_k (overlap at k) and M_k (max overlap <= k) over S_m.
struct OverlapCensus {
  int m = 0;
  std::vector<std::uint64_t> n_sizes;  // |N_k| at index k-1, k = 1..m-1
  std::vector<std::uint64_t> m_sizes;  // |M_k| at index k-1
};

inline OverlapCensus enumerate_overlap_sets(int m) {
  if (m < 2 || m > detail::kExhaustiveLimit)
    throw std::invalid_argument(
        "enumerate_overlap_sets: m must be in [2, 8]; sample for larger m");
  OverlapCensus census;
  census.m = m;
  census.n_sizes.assign(static_cast<std::size_t>(m - 1), 0);
  census.m_sizes.assign(static_cast<std::size_t>(m - 1), 0);
  detail::for_each_pattern(m, [&](const Pattern& p) {
    const OverlapProfile prof = overlap_profile(p);
    for (int k : prof.overlaps) ++census.n_sizes[static_cast<std::size_t>(k - 1)];
    ++census.m_sizes[static_cast<std::size_t>(prof.max_overlap - 1)];
  });
  // m_sizes holds |M_k \ M_{k-1}| so far; accumulate to nested sizes.
  for (std::size_t i = 1; i < census.m_sizes.size(); ++i)
    census.m_sizes[i] += census.m_sizes[i - 1];
  return census;
}

}  // namespace cpa
