#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "cpa/numeric.hpp"
#include "cpa/overlap.hpp"
#include "cpa/pattern.hpp"
#include "cpa/random.hpp"

namespace cpa {

// Empirical membership frequency of N_k (overlap at k) for uniform random
// patterns, compared against the exact value 1/k! when the prefix and suffix
// windows are disjoint (2k <= m) or the tail bound 2^{-m/2+1} otherwise.
struct SampleReport {
  int m = 0;
  int k = 0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  double fraction = 0;
  double target = 0;
  double std_err = 0;        // sqrt(target (1-target) / samples)
  bool exact_target = false;  // true: two-sided check; false: one-sided bound
  bool within_3sigma = false;
};

inline std::vector<SampleReport> sample_overlap_distribution(int m, std::uint64_t samples,
                                                             std::uint64_t seed) {
  if (m < 4) throw std::invalid_argument("sample_overlap_distribution: m must be >= 4");
  if (samples < 1000)
    throw std::invalid_argument("sample_overlap_distribution: samples must be >= 1000");

  // Fixed-size chunks with per-chunk derived seeds: totals are independent of
  // the number of worker threads and of scheduling order.
  constexpr std::uint64_t kChunk = 16384;
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::vector<std::uint64_t>> chunk_hits(
      static_cast<std::size_t>(chunks), std::vector<std::uint64_t>(static_cast<std::size_t>(m - 1), 0));

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = static_cast<std::size_t>(
      std::min<std::uint64_t>(hw, chunks));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      std::vector<int> vals(static_cast<std::size_t>(m));
      for (std::uint64_t c = w; c < chunks; c += workers) {
        SplitMix64 rng(derive_seed(seed, c));
        const std::uint64_t quota = std::min(kChunk, samples - c * kChunk);
        auto& hits = chunk_hits[static_cast<std::size_t>(c)];
        for (std::uint64_t s = 0; s < quota; ++s) {
          std::iota(vals.begin(), vals.end(), 1);
          rng.shuffle(vals);
          const OverlapProfile prof = overlap_profile(Pattern(std::vector<int>(vals)));
          for (int k : prof.overlaps) ++hits[static_cast<std::size_t>(k - 1)];
        }
      }
    });
  }
  for (auto& t : pool) t.join();

  std::vector<std::uint64_t> totals(static_cast<std::size_t>(m - 1), 0);
  for (const auto& hits : chunk_hits)
    for (std::size_t i = 0; i < totals.size(); ++i) totals[i] += hits[i];

  std::vector<SampleReport> reports;
  for (int k = 1; k <= m - 1; ++k) {
    SampleReport rep;
    rep.m = m;
    rep.k = k;
    rep.samples = samples;
    rep.hits = totals[static_cast<std::size_t>(k - 1)];
    rep.fraction = static_cast<double>(rep.hits) / static_cast<double>(samples);
    rep.exact_target = 2 * k <= m;
    rep.target = rep.exact_target
                     ? 1.0 / to_double(factorial(static_cast<unsigned>(k)))
                     : std::pow(2.0, 1.0 - 0.5 * m);
    rep.std_err = std::sqrt(rep.target * (1.0 - rep.target) / static_cast<double>(samples));
    rep.within_3sigma = rep.exact_target
                            ? std::fabs(rep.fraction - rep.target) <= 3.0 * rep.std_err
                            : rep.fraction <= rep.target + 3.0 * rep.std_err;
    reports.push_back(rep);
  }
  return reports;
}

// Exact overlap census over S_m with the finite-m comparisons reported, not
// asserted: the M_k lower bound 1 - 2/(k+1)! - m 2^{-m/2} (vacuous rows are
// flagged), the limiting non-overlapping interval (informational), and the
// local-lemma-style bound |M_1| >= (3-e) m!.
struct CensusRow {
  int k = 0;
  std::uint64_t n_size = 0;
  std::uint64_t m_size = 0;
  double n_fraction = 0;
  double m_fraction = 0;
  double lemma_lower_bound = 0;  // on |M_k|/m!
  bool lemma_vacuous = false;
  bool lemma_holds = false;
};

struct MkCensusReport {
  int m = 0;
  std::vector<CensusRow> rows;
  double non_overlapping_fraction = 0;
  double bona_lo = 0.364098149;  // limiting |M_1|/m! interval
  double bona_hi = 0.3640992743;
  bool within_bona_interval = false;
  bool m1_at_least_3_minus_e = false;
};

inline MkCensusReport mk_census(int m) {
  if (m < 2) throw std::invalid_argument("mk_census: m must be >= 2");
  if (m > 8)
    throw std::invalid_argument("mk_census: m must be <= 8; use sampling for larger m");
  const OverlapCensus census = enumerate_overlap_sets(m);
  const double mf = to_double(factorial(static_cast<unsigned>(m)));

  MkCensusReport report;
  report.m = m;
  for (int k = 1; k <= m - 1; ++k) {
    CensusRow row;
    row.k = k;
    row.n_size = census.n_sizes[static_cast<std::size_t>(k - 1)];
    row.m_size = census.m_sizes[static_cast<std::size_t>(k - 1)];
    row.n_fraction = static_cast<double>(row.n_size) / mf;
    row.m_fraction = static_cast<double>(row.m_size) / mf;
    row.lemma_lower_bound = 1.0 -
                            2.0 / to_double(factorial(static_cast<unsigned>(k + 1))) -
                            m * std::pow(2.0, -0.5 * m);
    row.lemma_vacuous = row.lemma_lower_bound <= 0.0;
    row.lemma_holds = row.lemma_vacuous || row.m_fraction >= row.lemma_lower_bound;
    report.rows.push_back(row);
  }
  report.non_overlapping_fraction = report.rows.front().m_fraction;
  report.within_bona_interval = report.non_overlapping_fraction >= report.bona_lo &&
                                report.non_overlapping_fraction <= report.bona_hi;
  report.m1_at_least_3_minus_e =
      static_cast<double>(census.m_sizes.front()) >= (3.0 - std::numbers::e) * mf;
  return report;
}

}  // namespace cpa
