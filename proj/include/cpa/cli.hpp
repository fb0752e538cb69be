#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cpa/bounds.hpp"
#include "cpa/cache.hpp"
#include "cpa/enumerate.hpp"
#include "cpa/numeric.hpp"
#include "cpa/overlap.hpp"
#include "cpa/pattern.hpp"
#include "cpa/series.hpp"
#include "cpa/stats.hpp"

namespace cpa {

// Insertion-ordered JSON keeps key order (and therefore bytes) stable across
// runs — the determinism contract of the CLI.
using ordered_json = nlohmann::ordered_json;

struct RunConfig {
  enum class Command { count, scan, overlap, bounds, rho, sample, census };
  Command command = Command::count;
  std::optional<Pattern> pattern;
  std::optional<int> m;
  std::optional<int> n;
  std::optional<int> k;
  std::uint64_t samples = 100000;
  std::uint64_t mc_samples = 0;  // count: sample instead of exact when > 0
  std::uint64_t seed = 0;
  std::string kind = "monotone_g";
  std::string output = "json";  // json | csv | text
  std::string cache_dir;        // empty = caching disabled
};

namespace detail {

// Exact integers stay JSON numbers while they fit; beyond that they are
// emitted as decimal strings rather than rounded.
inline ordered_json big_json(const BigInt& x) {
  if (x >= (std::numeric_limits<std::int64_t>::min)() &&
      x <= (std::numeric_limits<std::int64_t>::max)())
    return x.convert_to<std::int64_t>();
  return x.str();
}

inline std::string plain_cell(const ordered_json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

inline std::string csv_cell(const ordered_json& v) {
  std::string s = plain_cell(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<ordered_json>> rows;
};

inline void write_csv(std::ostream& out, const CsvTable& table) {
  for (std::size_t i = 0; i < table.header.size(); ++i)
    out << (i ? "," : "") << table.header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << csv_cell(row[i]);
    out << '\n';
  }
}

struct Rendered {
  ordered_json json;
  CsvTable csv;
  std::string text;
};

inline void emit(std::ostream& out, const std::string& mode, const Rendered& r) {
  if (mode == "csv") {
    write_csv(out, r.csv);
  } else if (mode == "text") {
    out << r.text;
  } else {
    out << r.json.dump() << '\n';
  }
}

inline std::string fmt_double(double v) { return ordered_json(v).dump(); }

// ---- count ----------------------------------------------------------------

inline Rendered run_count(const RunConfig& cfg, std::ostream& err) {
  const Pattern& sigma = *cfg.pattern;
  const int n = *cfg.n;
  const std::string pat = format_pattern(sigma);
  Rendered r;

  if (cfg.mc_samples > 0) {
    const McResult mc = mc_avoidance(sigma, n, cfg.mc_samples, cfg.seed);
    r.json = {{"pattern", pat},   {"n", n},
              {"samples", mc.samples}, {"seed", cfg.seed},
              {"p_hat", mc.p_hat},     {"std_err", mc.std_err}};
    r.csv.header = {"pattern", "n", "samples", "seed", "p_hat", "std_err"};
    r.csv.rows.push_back({pat, n, mc.samples, cfg.seed, mc.p_hat, mc.std_err});
    r.text = "p_hat_" + std::to_string(n) + "(" + pat + ") = " + fmt_double(mc.p_hat) +
             " (std_err " + fmt_double(mc.std_err) + ", " + std::to_string(mc.samples) +
             " samples, seed " + std::to_string(cfg.seed) + ")\n";
    return r;
  }

  if (n < 0) throw std::invalid_argument("count: n must be >= 0");
  BigInt alpha;
  if (n < sigma.size()) {
    alpha = factorial(static_cast<unsigned>(n));  // no length-m window exists
  } else {
    std::optional<CountTable> table;
    if (!cfg.cache_dir.empty()) table = load_count_table(cfg.cache_dir, sigma, n);
    if (!table) {
      table = count_dp(sigma, n);
      if (!cfg.cache_dir.empty()) {
        std::string save_err;
        if (!save_count_table(cfg.cache_dir, *table, &save_err))
          err << "warning: " << save_err << '\n';
      }
    }
    alpha = table->counts[static_cast<std::size_t>(n)];
  }

  r.json = {{"pattern", pat}, {"n", n}, {"alpha", big_json(alpha)}};
  r.csv.header = {"pattern", "n", "alpha"};
  r.csv.rows.push_back({pat, n, big_json(alpha)});
  r.text = "alpha_" + std::to_string(n) + "(" + pat + ") = " + alpha.str() + "\n";
  return r;
}

// ---- scan -----------------------------------------------------------------

inline Rendered run_scan(const RunConfig& cfg) {
  const ScanResult res = scan_patterns(*cfg.m, *cfg.n);
  Rendered r;
  r.json = {{"m", res.m},
            {"n", res.n},
            {"argmax", {{"pattern", format_pattern(res.argmax)}, {"alpha", big_json(res.alpha_max)}}},
            {"argmin", {{"pattern", format_pattern(res.argmin)}, {"alpha", big_json(res.alpha_min)}}},
            {"entries", ordered_json::array()}};
  r.csv.header = {"pattern", "m", "n", "alpha_n", "class_rep", "is_monotone", "max_overlap"};
  r.text = "scan m=" + std::to_string(res.m) + " n=" + std::to_string(res.n) + ": max alpha " +
           res.alpha_max.str() + " at " + format_pattern(res.argmax) + ", min alpha " +
           res.alpha_min.str() + " at " + format_pattern(res.argmin) + "\n";
  for (const ScanEntry& e : res.entries) {
    const std::string pat = format_pattern(e.pattern);
    const std::string rep = format_pattern(e.class_rep);
    r.json["entries"].push_back({{"pattern", pat},
                                 {"m", res.m},
                                 {"n", res.n},
                                 {"alpha_n", big_json(e.alpha)},
                                 {"class_rep", rep},
                                 {"is_monotone", e.is_monotone},
                                 {"max_overlap", e.max_overlap}});
    r.csv.rows.push_back({pat, res.m, res.n, big_json(e.alpha), rep, e.is_monotone, e.max_overlap});
    r.text += pat + " alpha=" + e.alpha.str() + " class=" + rep +
              (e.is_monotone ? " monotone" : "") + " max_overlap=" +
              std::to_string(e.max_overlap) + "\n";
  }
  return r;
}

// ---- overlap ---------------------------------------------------------------

inline Rendered run_overlap(const RunConfig& cfg) {
  const Pattern& sigma = *cfg.pattern;
  const OverlapProfile prof = overlap_profile(sigma);
  const Classification cls = classify(sigma);
  const std::string pat = format_pattern(sigma);

  Rendered r;
  r.json = {{"pattern", pat},
            {"m", prof.m},
            {"overlaps", prof.overlaps},
            {"max_overlap", prof.max_overlap},
            {"is_non_overlapping", cls.is_non_overlapping},
            {"is_monotone", cls.is_monotone},
            {"joint", ordered_json::array()}};
  r.csv.header = {"m", "k", "count", "bound", "fraction"};
  r.text = "pattern " + pat + ": overlaps {";
  for (std::size_t i = 0; i < prof.overlaps.size(); ++i)
    r.text += (i ? "," : "") + std::to_string(prof.overlaps[i]);
  r.text += "}, max overlap " + std::to_string(prof.max_overlap) +
            (cls.is_non_overlapping ? ", non-overlapping" : "") +
            (cls.is_monotone ? ", monotone" : "") + "\n";
  for (int k = 1; k <= prof.m - 1; ++k) {
    const JointCount jc = joint_count(sigma, k);
    const double fraction =
        to_double(BigRat(jc.count, factorial(static_cast<unsigned>(2 * prof.m - k))));
    r.json["joint"].push_back({{"m", jc.m},
                               {"k", jc.k},
                               {"count", big_json(jc.count)},
                               {"bound", big_json(jc.bound)},
                               {"fraction", fraction}});
    r.csv.rows.push_back({jc.m, jc.k, big_json(jc.count), big_json(jc.bound), fraction});
    r.text += "k=" + std::to_string(k) + ": joint count " + jc.count.str() + " (bound " +
              jc.bound.str() + "), fraction " + fmt_double(fraction) + "\n";
  }
  return r;
}

// ---- bounds ----------------------------------------------------------------

inline Rendered run_bounds(const RunConfig& cfg) {
  const BoundReport rep = make_bound_report(*cfg.m, cfg.pattern, cfg.k, cfg.n);
  Rendered r;
  r.json["m"] = rep.m;
  if (rep.pattern) r.json["pattern"] = format_pattern(*rep.pattern);
  if (rep.k) r.json["k"] = *rep.k;
  r.json["lower_lll"] = rep.lower_lll.value;
  r.json["upper_block"] = rep.upper_block;
  if (rep.upper_suen) r.json["upper_suen"] = rep.upper_suen->rho_upper;
  if (rep.upper_mk) r.json["upper_mk"] = rep.upper_mk->rho_upper;
  if (rep.finite_n) r.json["finite_n_bound"] = rep.finite_n->bound;
  if (rep.n_used) r.json["n_used"] = *rep.n_used;
  ordered_json flags;
  flags["lll_valid"] = rep.lower_lll.valid;
  if (rep.upper_suen) flags["suen_valid"] = rep.upper_suen->valid;
  if (rep.upper_mk) flags["mk_valid"] = rep.upper_mk->valid;
  if (rep.finite_n) flags["finite_n_applies"] = rep.finite_n->applies;
  r.json["flags"] = flags;

  r.csv.header = {"m", "k", "pattern", "lower_lll", "upper_block", "upper_suen", "upper_mk"};
  r.csv.rows.push_back({rep.m, rep.k ? ordered_json(*rep.k) : ordered_json(""),
                        rep.pattern ? ordered_json(format_pattern(*rep.pattern)) : ordered_json(""),
                        rep.lower_lll.value, rep.upper_block,
                        rep.upper_suen ? ordered_json(rep.upper_suen->rho_upper) : ordered_json(""),
                        rep.upper_mk ? ordered_json(rep.upper_mk->rho_upper) : ordered_json("")});

  r.text = "m=" + std::to_string(rep.m) + "\n";
  r.text += "lower_lll = " + fmt_double(rep.lower_lll.value) +
            (rep.lower_lll.valid ? "" : " (invalid)") + "\n";
  r.text += "upper_block = " + fmt_double(rep.upper_block) + "\n";
  if (rep.upper_suen)
    r.text += "upper_suen(" + format_pattern(*rep.pattern) + ") = " +
              fmt_double(rep.upper_suen->rho_upper) +
              (rep.upper_suen->valid ? "" : " (vacuous)") + "\n";
  if (rep.upper_mk)
    r.text += "upper_mk(k=" + std::to_string(*rep.k) + ") = " +
              fmt_double(rep.upper_mk->rho_upper) + (rep.upper_mk->valid ? "" : " (vacuous)") +
              "\n";
  if (rep.finite_n)
    r.text += "finite_n_bound(n=" + std::to_string(*rep.n_used) + ") = " +
              fmt_double(rep.finite_n->bound) + (rep.finite_n->applies ? "" : " (vacuous)") +
              "\n";
  return r;
}

// ---- rho -------------------------------------------------------------------

inline Rendered run_rho(const RunConfig& cfg) {
  Rendered r;
  if (cfg.kind == "quadratic") {
    const QuadraticBound q = monotone_lb_quadratic(*cfg.m);
    r.json = {{"kind", "quadratic"},
              {"m", *cfg.m},
              {"epsilon_prime", q.epsilon_prime},
              {"rho_lower", q.rho_lower},
              {"approx_epsilon", q.approx_epsilon},
              {"valid", q.valid}};
    r.csv.header = {"kind", "m", "epsilon_prime", "rho_lower", "approx_epsilon", "valid"};
    r.csv.rows.push_back({"quadratic", *cfg.m, q.epsilon_prime, q.rho_lower, q.approx_epsilon, q.valid});
    r.text = "quadratic m=" + std::to_string(*cfg.m) + ": rho_lower = " + fmt_double(q.rho_lower) +
             " (epsilon " + fmt_double(q.epsilon_prime) + ", series approx " +
             fmt_double(q.approx_epsilon) + (q.valid ? ")" : ", invalid)") + "\n";
    return r;
  }

  SeriesKind kind;
  if (cfg.kind == "monotone_g") kind = SeriesKind::monotone_g;
  else if (cfg.kind == "monotone_majorant_f") kind = SeriesKind::monotone_majorant_f;
  else if (cfg.kind == "nakamura_f") kind = SeriesKind::nakamura_f;
  else throw std::invalid_argument("rho: unknown kind " + cfg.kind);

  const SeriesSpec spec = make_series(kind, *cfg.m);
  const RootResult root = smallest_root(spec);
  r.json = {{"kind", cfg.kind},
            {"m", spec.m},
            {"z0", root.z0},
            {"rho", root.rho},
            {"residual", root.residual},
            {"truncation_terms", spec.truncation_terms}};
  r.csv.header = {"kind", "m", "z0", "rho", "residual", "truncation_terms"};
  r.csv.rows.push_back({cfg.kind, spec.m, root.z0, root.rho, root.residual, spec.truncation_terms});
  r.text = cfg.kind + " m=" + std::to_string(spec.m) + ": z0 = " + fmt_double(root.z0) +
           ", rho = " + fmt_double(root.rho) + " (residual " + fmt_double(root.residual) + ")\n";
  return r;
}

// ---- sample ----------------------------------------------------------------

inline Rendered run_sample(const RunConfig& cfg) {
  const std::vector<SampleReport> reports =
      sample_overlap_distribution(*cfg.m, cfg.samples, cfg.seed);
  Rendered r;
  r.json = {{"m", *cfg.m}, {"samples", cfg.samples}, {"seed", cfg.seed},
            {"reports", ordered_json::array()}};
  r.csv.header = {"m", "k", "exact_or_sampled", "fraction", "target", "std_err", "flag"};
  r.text = "overlap sampling m=" + std::to_string(*cfg.m) + ", " + std::to_string(cfg.samples) +
           " samples, seed " + std::to_string(cfg.seed) + "\n";
  for (const SampleReport& rep : reports) {
    r.json["reports"].push_back({{"k", rep.k},
                                 {"hits", rep.hits},
                                 {"fraction", rep.fraction},
                                 {"target", rep.target},
                                 {"std_err", rep.std_err},
                                 {"exact_target", rep.exact_target},
                                 {"within_3sigma", rep.within_3sigma}});
    r.csv.rows.push_back({rep.m, rep.k, "sampled", rep.fraction, rep.target, rep.std_err,
                          rep.within_3sigma});
    r.text += "k=" + std::to_string(rep.k) + ": fraction " + fmt_double(rep.fraction) +
              (rep.exact_target ? " vs exact " : " vs bound ") + fmt_double(rep.target) +
              (rep.within_3sigma ? " (within 3 sigma)" : " (OUTSIDE 3 sigma)") + "\n";
  }
  return r;
}

// ---- census ----------------------------------------------------------------

inline Rendered run_census(const RunConfig& cfg) {
  const MkCensusReport rep = mk_census(*cfg.m);
  Rendered r;
  r.json = {{"m", rep.m},
            {"non_overlapping_fraction", rep.non_overlapping_fraction},
            {"bona_interval", {rep.bona_lo, rep.bona_hi}},
            {"within_bona_interval", rep.within_bona_interval},
            {"m1_at_least_3_minus_e", rep.m1_at_least_3_minus_e},
            {"rows", ordered_json::array()}};
  r.csv.header = {"m", "k", "exact_or_sampled", "fraction", "target", "std_err", "flag"};
  r.text = "census m=" + std::to_string(rep.m) + ": non-overlapping fraction " +
           fmt_double(rep.non_overlapping_fraction) + "\n";
  for (const CensusRow& row : rep.rows) {
    r.json["rows"].push_back({{"k", row.k},
                              {"n_size", row.n_size},
                              {"m_size", row.m_size},
                              {"n_fraction", row.n_fraction},
                              {"m_fraction", row.m_fraction},
                              {"lemma_lower_bound", row.lemma_lower_bound},
                              {"lemma_vacuous", row.lemma_vacuous},
                              {"lemma_holds", row.lemma_holds}});
    r.csv.rows.push_back({rep.m, row.k, "exact", row.m_fraction, row.lemma_lower_bound, 0,
                          row.lemma_holds});
    r.text += "k=" + std::to_string(row.k) + ": |N_k|=" + std::to_string(row.n_size) +
              " |M_k|=" + std::to_string(row.m_size) + " M_k fraction " +
              fmt_double(row.m_fraction) +
              (row.lemma_vacuous ? " (bound vacuous)" : " vs bound " + fmt_double(row.lemma_lower_bound)) +
              "\n";
  }
  return r;
}

}  // namespace detail

// Executes a validated config. Exit codes: 0 success, 2 validation error,
// 3 capacity (size-budget) error.
inline int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    detail::Rendered r;
    switch (cfg.command) {
      case RunConfig::Command::count: r = detail::run_count(cfg, err); break;
      case RunConfig::Command::scan: r = detail::run_scan(cfg); break;
      case RunConfig::Command::overlap: r = detail::run_overlap(cfg); break;
      case RunConfig::Command::bounds: r = detail::run_bounds(cfg); break;
      case RunConfig::Command::rho: r = detail::run_rho(cfg); break;
      case RunConfig::Command::sample: r = detail::run_sample(cfg); break;
      case RunConfig::Command::census: r = detail::run_census(cfg); break;
    }
    detail::emit(out, cfg.output, r);
    return 0;
  } catch (const capacity_error& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

// Parses arguments (without the program name) and dispatches.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"consecutive pattern avoidance toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string pattern_str;
  int m_val = 0, n_val = 0, k_val = 0;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output", cfg.output, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--seed", cfg.seed, "RNG seed (default 0)");
    sub->add_option("--cache-dir", cfg.cache_dir,
                    "cache directory (overrides CPA_CACHE_DIR)");
  };

  CLI::App* count_cmd = app.add_subcommand("count", "exact avoider count alpha_n(pattern)");
  count_cmd->add_option("--pattern", pattern_str)->required();
  count_cmd->add_option("--n", n_val)->required();
  count_cmd->add_option("--mc-samples", cfg.mc_samples,
                        "Monte Carlo estimate of alpha_n/n! instead of exact count");
  add_common(count_cmd);

  CLI::App* scan_cmd = app.add_subcommand("scan", "alpha_n for every pattern in S_m");
  scan_cmd->add_option("--m", m_val)->required();
  scan_cmd->add_option("--n", n_val)->required();
  add_common(scan_cmd);

  CLI::App* overlap_cmd = app.add_subcommand("overlap", "overlap profile and joint counts");
  overlap_cmd->add_option("--pattern", pattern_str)->required();
  add_common(overlap_cmd);

  CLI::App* bounds_cmd = app.add_subcommand("bounds", "growth-rate bounds");
  bounds_cmd->add_option("--m", m_val)->required();
  bounds_cmd->add_option("--pattern", pattern_str, "adds the pattern-specific upper bound");
  bounds_cmd->add_option("--k", k_val, "adds the max-overlap-k upper bound");
  bounds_cmd->add_option("--n", n_val, "adds the non-asymptotic bound at this n");
  add_common(bounds_cmd);

  CLI::App* rho_cmd = app.add_subcommand("rho", "series-root growth rates");
  rho_cmd->add_option("--m", m_val)->required();
  rho_cmd->add_option("--kind", cfg.kind)
      ->check(CLI::IsMember({"monotone_g", "monotone_majorant_f", "nakamura_f", "quadratic"}));
  add_common(rho_cmd);

  CLI::App* sample_cmd = app.add_subcommand("sample", "random-pattern overlap frequencies");
  sample_cmd->add_option("--m", m_val)->required();
  sample_cmd->add_option("--samples", cfg.samples);
  add_common(sample_cmd);

  CLI::App* census_cmd = app.add_subcommand("census", "exact overlap census of S_m");
  census_cmd->add_option("--m", m_val)->required();
  add_common(census_cmd);

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("cpa");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(argv_store.size());
  for (const std::string& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(count_cmd)) {
      cfg.command = RunConfig::Command::count;
      cfg.pattern = parse_pattern(pattern_str);
      cfg.n = n_val;
    } else if (app.got_subcommand(scan_cmd)) {
      cfg.command = RunConfig::Command::scan;
      cfg.m = m_val;
      cfg.n = n_val;
    } else if (app.got_subcommand(overlap_cmd)) {
      cfg.command = RunConfig::Command::overlap;
      cfg.pattern = parse_pattern(pattern_str);
    } else if (app.got_subcommand(bounds_cmd)) {
      cfg.command = RunConfig::Command::bounds;
      cfg.m = m_val;
      if (bounds_cmd->count("--pattern")) cfg.pattern = parse_pattern(pattern_str);
      if (bounds_cmd->count("--k")) cfg.k = k_val;
      if (bounds_cmd->count("--n")) cfg.n = n_val;
    } else if (app.got_subcommand(rho_cmd)) {
      cfg.command = RunConfig::Command::rho;
      cfg.m = m_val;
    } else if (app.got_subcommand(sample_cmd)) {
      cfg.command = RunConfig::Command::sample;
      cfg.m = m_val;
    } else {
      cfg.command = RunConfig::Command::census;
      cfg.m = m_val;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  if (cfg.cache_dir.empty()) {
    if (const char* env = std::getenv("CPA_CACHE_DIR")) cfg.cache_dir = env;
  }

  return dispatch(cfg, out, err);
}

}  // namespace cpa
