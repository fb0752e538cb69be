#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <vector>

#include "cpa/overlap.hpp"

using namespace cpa;

TEST_CASE("overlap profiles", "[overlap]") {
  CHECK(overlap_profile(Pattern({1, 2, 3})).overlaps == std::vector<int>{1, 2});
  CHECK(overlap_profile(Pattern({1, 3, 2})).overlaps == std::vector<int>{1});
  CHECK(overlap_profile(Pattern({1, 3, 2, 4})).overlaps == std::vector<int>{1, 2});
  CHECK(overlap_profile(Pattern({2, 1, 4, 3})).overlaps == std::vector<int>{1, 2});
  CHECK(overlap_profile(Pattern({1, 2, 3, 4})).overlaps == std::vector<int>{1, 2, 3});
  CHECK_THROWS_AS(overlap_profile(Pattern({1})), std::invalid_argument);
}

TEST_CASE("classification", "[overlap]") {
  const Classification c1 = classify(Pattern({1, 3, 2}));
  CHECK(c1.max_overlap == 1);
  CHECK(c1.is_non_overlapping);
  CHECK_FALSE(c1.is_monotone);

  const Classification c2 = classify(Pattern({1, 2, 3, 4}));
  CHECK(c2.max_overlap == 3);
  CHECK(c2.is_monotone);
  CHECK_FALSE(c2.is_non_overlapping);

  const Classification c3 = classify(Pattern({2, 1, 3}));
  CHECK(c3.max_overlap == 1);

  // max_overlap = m-1 coincides with direct monotonicity for all of S_4.
  std::vector<int> e{1, 2, 3, 4};
  do {
    const Pattern p{std::vector<int>(e)};
    const bool monotone_direct =
        std::is_sorted(e.begin(), e.end()) || std::is_sorted(e.rbegin(), e.rend());
    CHECK(classify(p).is_monotone == monotone_direct);
  } while (std::next_permutation(e.begin(), e.end()));
}

TEST_CASE("only monotone patterns overlap at m-1", "[overlap]") {
  for (int m = 3; m <= 5; ++m) {
    const std::vector<Pattern> found = verify_monotone_lemma(m);
    REQUIRE(found.size() == 2);
    CHECK(found[0] == Pattern::identity(m));
    CHECK(found[1] == reverse(Pattern::identity(m)));
  }
  CHECK_THROWS_AS(verify_monotone_lemma(2), std::invalid_argument);
  CHECK_THROWS_AS(verify_monotone_lemma(9), std::invalid_argument);
}

TEST_CASE("forced values on a double occurrence", "[overlap]") {
  const std::map<int, int> f1 = forced_suffix(Pattern({1, 2, 3}), 2);
  CHECK(f1 == std::map<int, int>{{2, 2}, {3, 3}});

  const std::map<int, int> f2 = forced_suffix(Pattern({1, 3, 2, 4}), 2);
  CHECK(f2 == std::map<int, int>{{3, 2}, {4, 5}});

  CHECK_THROWS_WITH(forced_suffix(Pattern({1, 3, 2}), 2), "impossible event pair");
  CHECK_THROWS_AS(forced_suffix(Pattern({1, 3, 2}), 0), std::invalid_argument);
  CHECK_THROWS_AS(forced_suffix(Pattern({1, 3, 2}), 3), std::invalid_argument);
}

TEST_CASE("joint counts", "[overlap]") {
  const JointCount a = joint_count(Pattern({1, 2, 3}), 2);
  CHECK(a.count == 1);
  CHECK(a.bound == 2);

  CHECK(joint_count(Pattern({1, 3, 2}), 2).count == 0);

  const JointCount b = joint_count(Pattern({1, 3, 2}), 1);
  CHECK(b.count == 3);
  CHECK(b.bound == 6);

  CHECK(joint_count(Pattern({1, 2, 3}), 1).count == 1);
  CHECK(joint_count(Pattern({1, 3, 2, 4}), 2).count == 2);
  CHECK(joint_count(Pattern({1, 2, 3, 4}), 3).count == 1);

  CHECK_THROWS_AS(joint_count(Pattern({1, 2, 3}), 0), std::invalid_argument);
  CHECK_THROWS_AS(joint_count(Pattern({1, 2, 3}), 3), std::invalid_argument);
}

TEST_CASE("joint count routes agree", "[overlap]") {
  // Enumeration vs constructive counting wherever both run: S_4 and S_5.
  for (int m : {4, 5}) {
    std::vector<int> e(static_cast<std::size_t>(m));
    std::iota(e.begin(), e.end(), 1);
    do {
      const Pattern sigma{std::vector<int>(e)};
      for (int k = 1; k <= m - 1; ++k) {
        if (!overlap_profile(sigma).has(k)) continue;
        CHECK(joint_count_enumerate(sigma, k) == joint_count_constructive(sigma, k));
      }
    } while (std::next_permutation(e.begin(), e.end()));
  }
}

TEST_CASE("constructive route serves the large-word regime", "[overlap]") {
  // 2m-k = 11 is still enumerable; the dispatcher's answer must match the
  // constructive one there.
  const Pattern sigma({1, 2, 3, 4, 6, 5});  // non-overlapping, m = 6
  CHECK(joint_count(sigma, 1).count == 6);
  CHECK(joint_count_constructive(sigma, 1) == 6);
  CHECK(joint_count(sigma, 1).bound == 252);
}

TEST_CASE("forced values match every enumerated double occurrence", "[overlap]") {
  // For each sigma in S_4 and overlap k: every word in S_{2m-k} realizing
  // both events carries exactly the forced values.
  std::vector<int> e{1, 2, 3, 4};
  const int m = 4;
  do {
    const Pattern sigma{std::vector<int>(e)};
    const OverlapProfile prof = overlap_profile(sigma);
    for (int k : prof.overlaps) {
      const std::map<int, int> forced = forced_suffix(sigma, k);
      const int L = 2 * m - k;
      std::vector<int> tau(static_cast<std::size_t>(L));
      std::iota(tau.begin(), tau.end(), 1);
      do {
        const std::vector<int> w1(tau.begin(), tau.begin() + m);
        if (standardize(w1) != sigma) continue;
        const std::vector<int> w2(tau.end() - m, tau.end());
        if (standardize(w2) != sigma) continue;
        for (const auto& [pos, val] : forced)
          CHECK(tau[static_cast<std::size_t>(pos - 1)] == val);
      } while (std::next_permutation(tau.begin(), tau.end()));
    }
  } while (std::next_permutation(e.begin(), e.end()));
}

TEST_CASE("overlap structure is symmetry invariant", "[overlap]") {
  std::vector<int> e{1, 2, 3, 4, 5};
  do {
    const Pattern p{std::vector<int>(e)};
    const OverlapProfile prof = overlap_profile(p);
    CHECK(overlap_profile(reverse(complement(p))).overlaps == prof.overlaps);
  } while (std::next_permutation(e.begin(), e.end()));
}

TEST_CASE("overlap census", "[overlap]") {
  const OverlapCensus c3 = enumerate_overlap_sets(3);
  CHECK(c3.n_sizes == std::vector<std::uint64_t>{6, 2});
  CHECK(c3.m_sizes == std::vector<std::uint64_t>{4, 6});

  const OverlapCensus c4 = enumerate_overlap_sets(4);
  CHECK(c4.n_sizes == std::vector<std::uint64_t>{24, 12, 2});
  CHECK(c4.m_sizes == std::vector<std::uint64_t>{12, 22, 24});

  const OverlapCensus c6 = enumerate_overlap_sets(6);
  CHECK(c6.n_sizes == std::vector<std::uint64_t>{720, 360, 120, 16, 2});
  CHECK(c6.m_sizes == std::vector<std::uint64_t>{280, 586, 704, 718, 720});

  CHECK_THROWS_AS(enumerate_overlap_sets(9), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_overlap_sets(1), std::invalid_argument);
}

TEST_CASE("disjoint-window overlap frequencies are exactly 1/k!", "[overlap]") {
  for (int m = 2; m <= 7; ++m) {
    const OverlapCensus census = enumerate_overlap_sets(m);
    const BigInt mf = factorial(static_cast<unsigned>(m));
    for (int k = 1; 2 * k <= m; ++k)
      CHECK(BigInt(census.n_sizes[static_cast<std::size_t>(k - 1)]) *
                factorial(static_cast<unsigned>(k)) ==
            mf);
  }
}

TEST_CASE("maximal overlap classes partition S_m", "[overlap]") {
  for (int m = 3; m <= 6; ++m) {
    const OverlapCensus census = enumerate_overlap_sets(m);
    CHECK(BigInt(census.m_sizes.back()) == factorial(static_cast<unsigned>(m)));
  }
}
