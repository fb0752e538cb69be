#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "cpa/enumerate.hpp"
#include "cpa/numeric.hpp"
#include "cpa/pattern.hpp"

namespace cpa {

// Count tables are cached as plain text, one file per (pattern, n_max):
//
//   cpa-cache 1
//   pattern 132
//   n_max 5
//   0 1
//   ...
//   5 63
//
// Decimal big integers keep the format diff-able and platform-neutral. A
// cache hit must be byte-equivalent to recomputation; anything unexpected in
// a file (version, key mismatch, corruption) is treated as a miss.
inline constexpr const char* kCacheVersionLine = "cpa-cache 1";

inline std::string cache_token(const Pattern& p) {
  std::string token = format_pattern(p);
  for (char& c : token)
    if (c == ',') c = '-';
  return token;
}

inline std::filesystem::path cache_path(const std::filesystem::path& dir, const Pattern& sigma,
                                        int n_max) {
  return dir / ("count_" + cache_token(sigma) + "_n" + std::to_string(n_max) + ".txt");
}

inline std::optional<CountTable> load_count_table(const std::filesystem::path& dir,
                                                  const Pattern& sigma, int n_max) {
  std::ifstream in(cache_path(dir, sigma, n_max));
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line) || line != kCacheVersionLine) return std::nullopt;
  if (!std::getline(in, line) || line != "pattern " + format_pattern(sigma)) return std::nullopt;
  if (!std::getline(in, line) || line != "n_max " + std::to_string(n_max)) return std::nullopt;

  CountTable table;
  table.sigma = sigma;
  table.n_max = n_max;
  for (int n = 0; n <= n_max; ++n) {
    if (!std::getline(in, line)) return std::nullopt;
    std::istringstream row(line);
    int idx = -1;
    std::string digits;
    if (!(row >> idx >> digits) || idx != n) return std::nullopt;
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      return std::nullopt;
    table.counts.emplace_back(digits);
  }
  return table;
}

// Atomic publish: write a temporary sibling, then rename over the target.
// Readers therefore never observe a half-written file. Returns false (with a
// message) on I/O failure; callers report and carry on with the computed
// table.
inline bool save_count_table(const std::filesystem::path& dir, const CountTable& table,
                             std::string* error = nullptr) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    if (error) *error = "cannot create cache directory: " + ec.message();
    return false;
  }
  const std::filesystem::path target = cache_path(dir, table.sigma, table.n_max);
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) {
      if (error) *error = "cannot open cache file for writing: " + tmp.string();
      return false;
    }
    out << kCacheVersionLine << '\n';
    out << "pattern " << format_pattern(table.sigma) << '\n';
    out << "n_max " << table.n_max << '\n';
    for (int n = 0; n <= table.n_max; ++n)
      out << n << ' ' << table.counts[static_cast<std::size_t>(n)].str() << '\n';
    out.flush();
    if (!out) {
      if (error) *error = "cache write failed: " + tmp.string();
      return false;
    }
  }
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    if (error) *error = "cache rename failed: " + ec.message();
    std::filesystem::remove(tmp, ec);
    return false;
  }
  return true;
}

}  // namespace cpa
