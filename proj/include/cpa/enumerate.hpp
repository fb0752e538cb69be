#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <vector>

#include "cpa/numeric.hpp"
#include "cpa/overlap.hpp"
#include "cpa/pattern.hpp"
#include "cpa/random.hpp"

namespace cpa {

// Exact avoider counts alpha_0 .. alpha_{n_max} for one pattern.
struct CountTable {
  Pattern sigma;
  std::vector<BigInt> counts;
  int n_max = 0;
};

// Brute-force oracle: scan all n! permutations. Guarded so a stray call
// cannot burn hours; larger n belongs to count_dp.
inline BigInt count_bruteforce(const Pattern& sigma, int n) {
  if (n < 0) throw std::invalid_argument("count_bruteforce: n must be >= 0");
  if (n > 10) throw std::invalid_argument("count_bruteforce: n must be <= 10");
  if (n == 0) return 1;
  BigInt count = 0;
  std::vector<int> e(static_cast<std::size_t>(n));
  std::iota(e.begin(), e.end(), 1);
  do {
    if (!contains(Permutation(std::vector<int>(e)), sigma)) ++count;
  } while (std::next_permutation(e.begin(), e.end()));
  return count;
}

namespace detail {

// Packs up to 8 rank entries (each < 256) into one key.
inline std::uint64_t pack_state(const int* s, int len) {
  std::uint64_t key = 0;
  for (int j = 0; j < len; ++j)
    key |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[j])) << (8 * j);
  return key;
}

// True when the distinct values w_0..w_{m-1} are order-isomorphic to sigma.
inline bool window_matches(const int* w, const std::vector<int>& sigma) {
  const int m = static_cast<int>(sigma.size());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if ((w[i] < w[j]) != (sigma[static_cast<std::size_t>(i)] < sigma[static_cast<std::size_t>(j)]))
        return false;
  return true;
}

}  // namespace detail

// Exact table via a layered dynamic program. State after placing a prefix of
// length l: the tuple of ranks (within that prefix) of its last m-1 entries;
// there are l!/(l-m+1)! such states. A transition appends the next entry at
// relative rank r in 1..l+1, lifts stored ranks >= r by one, and is discarded
// when the completed length-m window is order-isomorphic to sigma. Summing a
// layer gives alpha_l. Only the previous layer is kept.
inline CountTable count_dp(const Pattern& sigma, int n_max,
                           std::uint64_t state_budget = 8'000'000) {
  const int m = sigma.size();
  if (m < 1) throw std::invalid_argument("count_dp: empty pattern");
  if (n_max < m) throw std::invalid_argument("count_dp: n_max must be >= pattern length");

  CountTable table;
  table.sigma = sigma;
  table.n_max = n_max;
  table.counts.assign(static_cast<std::size_t>(n_max) + 1, 0);

  if (m == 1) {  // every nonempty permutation contains the length-1 pattern
    table.counts[0] = 1;
    return table;
  }

  // Feasibility guards for the packed-key representation and the final layer.
  if (n_max > 255) throw capacity_error("count_dp: n_max above 255");
  if (m - 1 > 8) throw capacity_error("count_dp: pattern length above 9");
  BigInt projected = 1;
  for (int l = n_max; l > n_max - (m - 1); --l) projected *= l;
  if (projected > state_budget)
    throw capacity_error("count_dp: projected state space exceeds budget");

  for (int n = 0; n < m; ++n) table.counts[static_cast<std::size_t>(n)] = factorial(static_cast<unsigned>(n));

  using Layer = std::unordered_map<std::uint64_t, BigInt>;
  Layer layer;

  // Prefix length m-1: every relative order occurs exactly once, none can
  // contain the length-m pattern yet.
  {
    std::vector<int> s(static_cast<std::size_t>(m - 1));
    std::iota(s.begin(), s.end(), 1);
    do {
      layer.emplace(detail::pack_state(s.data(), m - 1), 1);
    } while (std::next_permutation(s.begin(), s.end()));
  }

  std::vector<int> state(static_cast<std::size_t>(m - 1));
  std::vector<int> window(static_cast<std::size_t>(m));
  std::vector<int> next_state(static_cast<std::size_t>(m - 1));
  for (int l = m - 1; l < n_max; ++l) {
    Layer next;
    next.reserve(layer.size() * static_cast<std::size_t>(l + 1));
    BigInt total = 0;
    for (const auto& [key, cnt] : layer) {
      for (int j = 0; j < m - 1; ++j)
        state[static_cast<std::size_t>(j)] = static_cast<int>((key >> (8 * j)) & 0xff);
      for (int r = 1; r <= l + 1; ++r) {
        for (int j = 0; j < m - 1; ++j) {
          const int s = state[static_cast<std::size_t>(j)];
          window[static_cast<std::size_t>(j)] = s + (s >= r ? 1 : 0);
        }
        window[static_cast<std::size_t>(m - 1)] = r;
        if (detail::window_matches(window.data(), sigma.entries())) continue;
        for (int j = 0; j < m - 2; ++j)
          next_state[static_cast<std::size_t>(j)] = window[static_cast<std::size_t>(j + 1)];
        next_state[static_cast<std::size_t>(m - 2)] = r;
        next[detail::pack_state(next_state.data(), m - 1)] += cnt;
      }
    }
    for (const auto& [key, cnt] : next) {
      (void)key;
      total += cnt;
    }
    table.counts[static_cast<std::size_t>(l) + 1] = total;
    layer = std::move(next);
  }
  return table;
}

// Growth-rate estimators derived from a count table. ratio[n] is
// alpha_{n+1} / ((n+1) alpha_n) — the faster-converging of the two — and
// root[n-1] is (alpha_n / n!)^{1/n}.
struct RhoEstimate {
  std::vector<double> ratio;
  std::vector<double> root;
};

inline RhoEstimate rho_estimates(const CountTable& table) {
  const int m = table.sigma.size();
  if (table.n_max < m + 1)
    throw std::invalid_argument("rho_estimates: table must reach at least m+1");
  RhoEstimate est;
  for (int n = 0; n < table.n_max; ++n) {
    const BigRat r(table.counts[static_cast<std::size_t>(n) + 1],
                   BigInt(n + 1) * table.counts[static_cast<std::size_t>(n)]);
    est.ratio.push_back(to_double(r));
  }
  for (int n = 1; n <= table.n_max; ++n) {
    const BigRat p(table.counts[static_cast<std::size_t>(n)], factorial(static_cast<unsigned>(n)));
    est.root.push_back(std::pow(to_double(p), 1.0 / n));
  }
  return est;
}

// Monte Carlo estimate of the avoidance probability alpha_n / n!.
struct McResult {
  double p_hat = 0;
  double std_err = 0;
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
};

inline McResult mc_avoidance(const Pattern& sigma, int n, std::uint64_t samples,
                             std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("mc_avoidance: n must be >= 0");
  if (samples < 1) throw std::invalid_argument("mc_avoidance: samples must be >= 1");
  SplitMix64 rng(seed);
  std::vector<int> pi(static_cast<std::size_t>(n));
  std::iota(pi.begin(), pi.end(), 1);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    rng.shuffle(pi);
    if (!contains(Permutation(std::vector<int>(pi)), sigma)) ++hits;
  }
  McResult res;
  res.hits = hits;
  res.samples = samples;
  res.p_hat = static_cast<double>(hits) / static_cast<double>(samples);
  res.std_err = std::sqrt(res.p_hat * (1.0 - res.p_hat) / static_cast<double>(samples));
  return res;
}

// Full S_m scan: one exact count per reverse/complement symmetry class,
// shared across members. Classes are keyed by their lexicographically least
// pattern.
struct ScanEntry {
  Pattern pattern;
  Pattern class_rep;
  BigInt alpha;
  bool is_monotone = false;
  int max_overlap = 0;
};

struct ScanResult {
  int m = 0;
  int n = 0;
  std::vector<ScanEntry> entries;  // all of S_m in lexicographic order
  Pattern argmax, argmin;          // lexicographically least attaining max/min
  BigInt alpha_max, alpha_min;
};

inline Pattern class_representative(const Pattern& p) {
  Pattern best = p;
  for (const Pattern& q : {reverse(p), complement(p), reverse(complement(p))})
    if (q < best) best = q;
  return best;
}

inline ScanResult scan_patterns(int m, int n) {
  if (m < 2 || m > 5) throw std::invalid_argument("scan_patterns: m must be in [2, 5]");
  if (n < m) throw std::invalid_argument("scan_patterns: n must be >= m");

  std::vector<Pattern> patterns;
  detail::for_each_pattern(m, [&](const Pattern& p) { patterns.push_back(p); });

  std::vector<Pattern> reps;
  std::unordered_map<std::string, std::size_t> rep_index;
  for (const Pattern& p : patterns) {
    const Pattern rep = class_representative(p);
    const std::string key = format_pattern(rep);
    if (rep_index.emplace(key, reps.size()).second) reps.push_back(rep);
  }

  // One DP per class representative, distributed over workers; each worker
  // owns a disjoint slice of the result vector, and the merge order is fixed,
  // so the outcome does not depend on scheduling.
  std::vector<BigInt> rep_alpha(reps.size());
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(hw, reps.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < reps.size(); i += workers)
        rep_alpha[i] = count_dp(reps[i], n).counts[static_cast<std::size_t>(n)];
    });
  }
  for (auto& t : pool) t.join();

  ScanResult result;
  result.m = m;
  result.n = n;
  bool first = true;
  for (const Pattern& p : patterns) {
    ScanEntry entry;
    entry.pattern = p;
    entry.class_rep = class_representative(p);
    entry.alpha = rep_alpha[rep_index.at(format_pattern(entry.class_rep))];
    const Classification cls = classify(p);
    entry.is_monotone = cls.is_monotone;
    entry.max_overlap = cls.max_overlap;
    if (first || entry.alpha > result.alpha_max) {
      result.alpha_max = entry.alpha;
      result.argmax = p;
    }
    if (first || entry.alpha < result.alpha_min) {
      result.alpha_min = entry.alpha;
      result.argmin = p;
    }
    first = false;
    result.entries.push_back(std::move(entry));
  }
  return result;
}

}  // namespace cpa
