#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "cpa/pattern.hpp"

using namespace cpa;

TEST_CASE("standardize maps onto ranks", "[pattern]") {
  CHECK(standardize({3, 5, 1}) == Pattern({2, 3, 1}));
  CHECK(standardize({1, 2, 3, 4}) == Pattern::identity(4));
  CHECK(standardize({10, 2, 7}) == Pattern({3, 1, 2}));
  CHECK(standardize({-5, 100, 0}) == Pattern({1, 3, 2}));
}

TEST_CASE("standardize rejects bad input", "[pattern]") {
  CHECK_THROWS_AS(standardize({}), std::invalid_argument);
  CHECK_THROWS_AS(standardize({1, 4, 1}), std::invalid_argument);
}

TEST_CASE("standardize is idempotent", "[pattern]") {
  const std::vector<int> vals{9, 2, 14, 3};
  const Pattern once = standardize(vals);
  CHECK(standardize(once.entries()) == once);
}

TEST_CASE("permutation validation", "[pattern]") {
  CHECK_THROWS_AS(Permutation({1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation({2, 2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation({0, 1}), std::invalid_argument);
  CHECK(Permutation({2, 1, 3}).size() == 3);
}

TEST_CASE("occurrence scanning", "[pattern]") {
  CHECK(occurrences(Permutation({1, 5, 3, 2, 4}), Pattern({1, 3, 2})) == OccurrenceList{0});
  const Pattern sigma({2, 3, 1});
  CHECK(occurrences(sigma, sigma) == OccurrenceList{0});
  CHECK(occurrences(Permutation({2, 1}), Pattern({1, 3, 2})).empty());
  // 123 occurs at both windows of 1234.
  CHECK(occurrences(Permutation({1, 2, 3, 4}), Pattern({1, 2, 3})) == OccurrenceList{0, 1});
}

TEST_CASE("occurrence count is bounded by n-m+1", "[pattern]") {
  const Permutation pi({1, 2, 3, 4, 5, 6});
  CHECK(occurrences(pi, Pattern({1, 2})).size() == 5);
}

TEST_CASE("within S_m only sigma itself contains sigma", "[pattern]") {
  std::vector<int> e{1, 2, 3, 4};
  do {
    const Pattern sigma{std::vector<int>(e)};
    std::vector<int> p{1, 2, 3, 4};
    int containing = 0;
    Permutation witness;
    do {
      const Permutation pi{std::vector<int>(p)};
      if (!occurrences(pi, sigma).empty()) {
        ++containing;
        witness = pi;
      }
    } while (std::next_permutation(p.begin(), p.end()));
    CHECK(containing == 1);
    CHECK(witness == sigma);
  } while (std::next_permutation(e.begin(), e.end()));
}

TEST_CASE("reverse and complement", "[pattern]") {
  CHECK(reverse(Pattern({1, 3, 2})) == Pattern({2, 3, 1}));
  CHECK(complement(Pattern({1, 3, 2})) == Pattern({3, 1, 2}));
  CHECK(reverse(Pattern::identity(5)) == Pattern({5, 4, 3, 2, 1}));
  const Pattern p({2, 4, 1, 3});
  CHECK(reverse(reverse(p)) == p);
  CHECK(complement(complement(p)) == p);
}

TEST_CASE("containment is preserved under simultaneous symmetry", "[pattern]") {
  const Permutation pi({2, 5, 1, 4, 3});
  const Pattern sigma({1, 3, 2});
  const bool direct = !occurrences(pi, sigma).empty();
  const bool reversed = !occurrences(reverse(pi), reverse(sigma)).empty();
  const bool complemented = !occurrences(complement(pi), complement(sigma)).empty();
  CHECK(direct == reversed);
  CHECK(direct == complemented);
}

TEST_CASE("random_pattern determinism and validity", "[pattern][random]") {
  const Pattern a = random_pattern(5, 12345);
  const Pattern b = random_pattern(5, 12345);
  CHECK(a == b);
  CHECK(a.size() == 5);
  CHECK(random_pattern(5, 12346) != a);  // overwhelmingly likely distinct draw
  CHECK_THROWS_AS(random_pattern(0, 1), std::invalid_argument);
}

namespace {

int cell_index(const Pattern& p) {
  // Lexicographic rank within S_4 via the factorial number system.
  std::vector<int> e = p.entries();
  int rank = 0;
  const int fact[4] = {6, 2, 1, 1};
  for (int i = 0; i < 4; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < 4; ++j)
      if (e[static_cast<std::size_t>(j)] < e[static_cast<std::size_t>(i)]) ++smaller;
    rank += smaller * fact[i];
  }
  return rank;
}

// 0.001 critical value of the chi-square distribution with 23 degrees of
// freedom (only quantile the suite needs; from a high-precision table).
constexpr double kChi2Crit23 = 49.72823246643151;

}  // namespace

TEST_CASE("random patterns are uniform: chi-square over S_4", "[pattern][random]") {
  constexpr int kDraws = 100000;
  constexpr double expected = static_cast<double>(kDraws) / 24.0;

  SECTION("fresh seed per draw") {
    std::vector<int> counts(24, 0);
    for (int s = 0; s < kDraws; ++s) ++counts[static_cast<std::size_t>(cell_index(random_pattern(4, static_cast<std::uint64_t>(s))))];
    double chi2 = 0;
    for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
    CHECK(chi2 < kChi2Crit23);
  }

  SECTION("single stream of shuffles") {
    SplitMix64 rng(987654321);
    std::vector<int> counts(24, 0);
    std::vector<int> vals{1, 2, 3, 4};
    for (int s = 0; s < kDraws; ++s) {
      std::iota(vals.begin(), vals.end(), 1);
      rng.shuffle(vals);
      ++counts[static_cast<std::size_t>(cell_index(Pattern(std::vector<int>(vals))))];
    }
    double chi2 = 0;
    for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
    CHECK(chi2 < kChi2Crit23);
  }
}

TEST_CASE("pattern text round trip", "[pattern]") {
  CHECK(format_pattern(Pattern({1, 3, 2})) == "132");
  CHECK(parse_pattern("132") == Pattern({1, 3, 2}));
  CHECK(parse_pattern("1,10,2,9,3,8,4,7,5,6") ==
        Pattern({1, 10, 2, 9, 3, 8, 4, 7, 5, 6}));
  const Pattern big({1, 10, 2, 9, 3, 8, 4, 7, 5, 6});
  CHECK(format_pattern(big) == "1,10,2,9,3,8,4,7,5,6");
  CHECK(parse_pattern(format_pattern(big)) == big);
}

TEST_CASE("pattern parsing rejects non-permutations", "[pattern]") {
  CHECK_THROWS_AS(parse_pattern(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_pattern("130"), std::invalid_argument);
  CHECK_THROWS_AS(parse_pattern("122"), std::invalid_argument);
  CHECK_THROWS_AS(parse_pattern("13"), std::invalid_argument);   // missing 2
  CHECK_THROWS_AS(parse_pattern("1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_pattern("1,x,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_pattern("12a"), std::invalid_argument);
}

TEST_CASE("splitmix bounded draws stay in range", "[random]") {
  SplitMix64 rng(42);
  for (int i = 0; i < 1000; ++i) CHECK(rng.bounded(7) < 7);
}
