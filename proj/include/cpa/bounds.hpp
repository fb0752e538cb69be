#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "cpa/numeric.hpp"
#include "cpa/overlap.hpp"
#include "cpa/pattern.hpp"

namespace cpa {

// Dependence parameters for the occurrence events A_0..A_{n-m} over the
// circulant dependency graph (edges between offsets at distance < m):
//   mu          expected number of occurrences, (n-m+1)/m!
//   delta       neighborhood weight, 2(m-1)/m!
//   Delta_exact sum of Pr(A_i and A_j) over graph edges, from exact joint counts
//   Delta_bound closed-form upper bound on Delta (contains sqrt(pi(m-k)),
//               hence irrational: kept as double, unlike the exact fields)
struct SuenParameters {
  int n = 0;
  int m = 0;
  BigRat mu;
  BigRat delta;
  BigRat Delta_exact;
  double Delta_bound = 0;
};

inline SuenParameters suen_parameters(const Pattern& sigma, int n) {
  const int m = sigma.size();
  if (m < 2) throw std::invalid_argument("suen_parameters: pattern length must be >= 2");
  if (n < m) throw std::invalid_argument("suen_parameters: n must be >= m");
  SuenParameters p;
  p.n = n;
  p.m = m;
  p.mu = BigRat(n - m + 1, factorial(static_cast<unsigned>(m)));
  p.delta = BigRat(2 * (m - 1), factorial(static_cast<unsigned>(m)));
  p.Delta_exact = 0;
  p.Delta_bound = 0;
  const OverlapProfile prof = overlap_profile(sigma);
  for (int k : prof.overlaps) {
    // Edges at gap m-k: offsets (i, i+m-k), both windows inside [0, n-m].
    const int pairs = n - 2 * m + k + 1;
    if (pairs > 0) {
      const JointCount jc = joint_count(sigma, k);
      p.Delta_exact += BigRat(pairs * jc.count, factorial(static_cast<unsigned>(2 * m - k)));
    }
    p.Delta_bound += std::pow(4.0, m - k) /
                     (std::sqrt(std::numbers::pi * (m - k)) *
                      to_double(factorial(static_cast<unsigned>(2 * m - k))));
  }
  p.Delta_bound *= n;
  return p;
}

// Per-position dependence ratio r = lim (Delta/n) / (mu/n)
//                                = m! * sum_k joint_count(k) / (2m-k)!.
inline BigRat suen_rate(const Pattern& sigma) {
  const int m = sigma.size();
  BigRat lambda = 0;
  for (int k : overlap_profile(sigma).overlaps)
    lambda += BigRat(joint_count(sigma, k).count, factorial(static_cast<unsigned>(2 * m - k)));
  return lambda * factorial(static_cast<unsigned>(m));
}

// Upper bound on the growth rate from the exponential avoidance-probability
//   bound: rho <= exp(-(1 - r e^{2 delta}) / m!), usable only when
// r e^{2 delta} < 1; otherwise reported vacuous (rho_upper = 1).
struct SuenBound {
  double rho_upper = 1.0;
  double r = 0;  // dependence ratio actually used
  bool valid = false;
};

inline SuenBound suen_upper(const Pattern& sigma) {
  const int m = sigma.size();
  if (m < 2) throw std::invalid_argument("suen_upper: pattern length must be >= 2");
  SuenBound b;
  b.r = to_double(suen_rate(sigma));
  const double two_delta = 4.0 * (m - 1) / to_double(factorial(static_cast<unsigned>(m)));
  const double factor = b.r * std::exp(two_delta);
  b.valid = factor < 1.0;
  b.rho_upper = b.valid
                    ? std::exp(-(1.0 - factor) / to_double(factorial(static_cast<unsigned>(m))))
                    : 1.0;
  return b;
}

// Block bound: splitting positions into n/m disjoint windows gives
// rho <= (1 - 1/m!)^{1/m} for every pattern of length m.
inline double block_upper(int m) {
  if (m < 2) throw std::invalid_argument("block_upper: m must be >= 2");
  const BigInt mf = factorial(static_cast<unsigned>(m));
  return std::pow(to_double(BigRat(mf - 1, mf)), 1.0 / m);
}

// One-sided local-lemma lower bound rho >= 1 - e^{(m-1)/m!}/m! (weight
// x = e^{(m-1)/m!}/m!). Valid whenever x < 1, which holds for all m >= 2.
struct LllBound {
  double value = 0;
  bool valid = false;
};

inline LllBound lll_lower(int m) {
  if (m < 2) throw std::invalid_argument("lll_lower: m must be >= 2");
  const double mf = to_double(factorial(static_cast<unsigned>(m)));
  const double x = std::exp((m - 1) / mf) / mf;
  LllBound b;
  b.valid = x < 1.0;
  b.value = 1.0 - x;
  return b;
}

// Refined upper bound for patterns in M_k (max overlap <= k): the dependence
// ratio is at most r = 4^{m-k} m!/(2m-k)!, giving the same exponential form.
struct MkBound {
  double rho_upper = 1.0;
  double r = 0;
  bool valid = false;
};

inline MkBound mk_upper(int m, int k) {
  if (m < 2) throw std::invalid_argument("mk_upper: m must be >= 2");
  if (k < 1 || k > m - 1) throw std::invalid_argument("mk_upper: k must be in [1, m-1]");
  MkBound b;
  BigInt num = factorial(static_cast<unsigned>(m));
  for (int i = 0; i < m - k; ++i) num *= 4;
  b.r = to_double(BigRat(num, factorial(static_cast<unsigned>(2 * m - k))));
  const double two_delta = 4.0 * (m - 1) / to_double(factorial(static_cast<unsigned>(m)));
  const double factor = b.r * std::exp(two_delta);
  b.valid = factor < 1.0;
  b.rho_upper = b.valid
                    ? std::exp(-(1.0 - factor) / to_double(factorial(static_cast<unsigned>(m))))
                    : 1.0;
  return b;
}

// Gap inequality 1 - rho_sigma >= (1 + 1/m)(1 - rho_monotone). Exploratory:
// asserted in the source material only for large m, so callers get the truth
// value, never an assertion.
inline bool gap_corollary(int m, double rho_mono, double rho_sigma) {
  if (m < 2) throw std::invalid_argument("gap_corollary: m must be >= 2");
  if (!(rho_mono > 0 && rho_mono < 1) || !(rho_sigma > 0 && rho_sigma < 1))
    throw std::invalid_argument("gap_corollary: rho values must lie in (0, 1)");
  return 1.0 - rho_sigma >= (1.0 + 1.0 / m) * (1.0 - rho_mono);
}

// Non-asymptotic form at finite n: Pr(no occurrence) <= exp(-mu (1 - t)) with
// t = Delta_exact e^{2 delta} / mu. Meaningful only when t < 1.
struct FiniteNSuen {
  double bound = 1.0;
  double t = 0;
  bool applies = false;
};

inline FiniteNSuen suen_finite_n(const Pattern& sigma, int n) {
  const SuenParameters p = suen_parameters(sigma, n);
  FiniteNSuen f;
  f.t = to_double(BigRat(p.Delta_exact / p.mu)) * std::exp(2.0 * to_double(p.delta));
  f.applies = f.t < 1.0;
  f.bound = f.applies ? std::exp(-to_double(p.mu) * (1.0 - f.t)) : 1.0;
  return f;
}

// Everything the CLI reports for one (m [, pattern] [, k] [, n]) query.
struct BoundReport {
  int m = 0;
  std::optional<int> k;
  std::optional<Pattern> pattern;
  std::optional<int> n_used;
  LllBound lower_lll;
  double upper_block = 1.0;
  std::optional<SuenBound> upper_suen;
  std::optional<MkBound> upper_mk;
  std::optional<FiniteNSuen> finite_n;
};

inline BoundReport make_bound_report(int m, const std::optional<Pattern>& pattern,
                                     std::optional<int> k, std::optional<int> n) {
  if (m < 2) throw std::invalid_argument("bounds: m must be >= 2");
  if (pattern && pattern->size() != m)
    throw std::invalid_argument("bounds: pattern length does not match m");
  BoundReport rep;
  rep.m = m;
  rep.k = k;
  rep.pattern = pattern;
  rep.lower_lll = lll_lower(m);
  rep.upper_block = block_upper(m);
  if (pattern) rep.upper_suen = suen_upper(*pattern);
  if (k) rep.upper_mk = mk_upper(m, *k);
  if (n) {
    if (!pattern) throw std::invalid_argument("bounds: --n requires --pattern");
    rep.n_used = n;
    rep.finite_n = suen_finite_n(*pattern, *n);
  }
  return rep;
}

}  // namespace cpa
