#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cpa/stats.hpp"

using namespace cpa;
using Catch::Matchers::WithinAbs;

TEST_CASE("exhaustive overlap census", "[stats]") {
  const MkCensusReport c3 = mk_census(3);
  CHECK(c3.non_overlapping_fraction == 4.0 / 6.0);
  CHECK_FALSE(c3.within_bona_interval);

  const MkCensusReport c4 = mk_census(4);
  REQUIRE(c4.rows.size() == 3);
  CHECK(c4.rows[1].k == 2);
  CHECK(c4.rows[1].n_fraction == 0.5);

  const MkCensusReport c6 = mk_census(6);
  REQUIRE(c6.rows.size() == 5);
  CHECK(c6.rows[0].m_size == 280);
  for (std::size_t i = 1; i < c6.rows.size(); ++i) {
    CHECK(c6.rows[i].m_fraction >= c6.rows[i - 1].m_fraction);
  }
  CHECK(c6.rows.back().m_fraction == 1.0);

  CHECK_THROWS_AS(mk_census(9), std::invalid_argument);
  CHECK_THROWS_AS(mk_census(1), std::invalid_argument);
}

TEST_CASE("census at m = 8", "[stats]") {
  const MkCensusReport c = mk_census(8);
  REQUIRE(c.rows.size() == 7);
  const std::uint64_t n_sizes[] = {40320, 20160, 6720, 1680, 188, 20, 2};
  const std::uint64_t m_sizes[] = {14840, 31874, 38454, 40114, 40300, 40318, 40320};
  for (int i = 0; i < 7; ++i) {
    CHECK(c.rows[i].n_size == n_sizes[i]);
    CHECK(c.rows[i].m_size == m_sizes[i]);
  }
  CHECK_THAT(c.non_overlapping_fraction, WithinAbs(14840.0 / 40320.0, 1e-15));
  CHECK_FALSE(c.within_bona_interval);  // fraction still well above the limit interval
  CHECK(c.m1_at_least_3_minus_e);

  // Lemma columns: bound vacuous only where it dips below zero, never violated.
  for (const CensusRow& row : c.rows) {
    if (!row.lemma_vacuous) CHECK(row.lemma_holds);
  }
}

TEST_CASE("sampled overlap distribution", "[stats]") {
  CHECK_THROWS_AS(sample_overlap_distribution(3, 100000, 0), std::invalid_argument);
  CHECK_THROWS_AS(sample_overlap_distribution(6, 999, 0), std::invalid_argument);

  const MkCensusReport census = mk_census(6);
  const std::vector<SampleReport> reports = sample_overlap_distribution(6, 100000, 0);
  REQUIRE(reports.size() == 5);
  for (int i = 0; i < 5; ++i) {
    const SampleReport& r = reports[i];
    CHECK(r.k == i + 1);
    CHECK(r.samples == 100000);
    const double p = census.rows[i].n_fraction;
    const double sigma = std::sqrt(p * (1.0 - p) / 100000.0);
    CHECK(std::abs(r.fraction - p) <= 3.0 * sigma + 1e-15);
  }

  // Every pattern trivially matches itself at offset zero.
  CHECK(reports[0].fraction == 1.0);
  CHECK(reports[0].std_err == 0.0);
  CHECK(reports[0].within_3sigma);

  const std::vector<SampleReport> again = sample_overlap_distribution(6, 100000, 0);
  for (int i = 0; i < 5; ++i) CHECK(again[i].hits == reports[i].hits);
}

TEST_CASE("sampled distribution at m = 8", "[stats]") {
  const std::vector<SampleReport> reports = sample_overlap_distribution(8, 100000, 0);
  REQUIRE(reports.size() == 7);
  for (const SampleReport& r : reports) {
    if (2 * r.k <= 8) {
      CHECK(r.exact_target);
      CHECK_THAT(r.target, WithinAbs(1.0 / to_double(factorial(static_cast<unsigned>(r.k))), 1e-15));
    } else {
      CHECK_FALSE(r.exact_target);
      CHECK(r.target == 0.125);  // 2^{1 - m/2}
    }
    CHECK(r.within_3sigma);
  }
}
