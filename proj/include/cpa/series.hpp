#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "cpa/numeric.hpp"

namespace cpa {

// The three growth-rate series. rho = 1/z0 with z0 the smallest positive root.
//   monotone_g          g(z) = sum_i z^{mi}/(mi)! - z^{mi+1}/(mi+1)!
//                       (exact generating-function root for (12...m))
//   monotone_majorant_f f(z) = 1 - z + z^m/m! - z^{m+1}/(m+1)! + z^{2m}/(2m)!
//                       (pointwise majorant of g: root gives a lower bound)
//   nakamura_f          f(z) = 1 - z + z^m/m! - m z^{2m+1}/(2m-1)!
//                       (implicit bound series for (12...m-2, m, m-1))
enum class SeriesKind { monotone_g, monotone_majorant_f, nakamura_f };

inline std::string to_string(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::monotone_g: return "monotone_g";
    case SeriesKind::monotone_majorant_f: return "monotone_majorant_f";
    case SeriesKind::nakamura_f: return "nakamura_f";
  }
  return "?";
}

// The nakamura_f tail term is implemented exactly as printed in the source
// statement ("m z^{2m+1}/(2m-1)!"), which may pair exponent and factorial
// unexpectedly; the two knobs below make the term adjustable without
// changing the default behavior.
struct SeriesSpec {
  SeriesKind kind = SeriesKind::monotone_g;
  int m = 0;
  int truncation_terms = 0;       // term pairs kept (monotone_g only)
  int nakamura_tail_exponent = 0;  // default 2m+1
  int nakamura_tail_factorial = 0; // default 2m-1
};

inline SeriesSpec make_series(SeriesKind kind, int m) {
  if (m < 2) throw std::invalid_argument("make_series: m must be >= 2");
  SeriesSpec spec;
  spec.kind = kind;
  spec.m = m;
  spec.nakamura_tail_exponent = 2 * m + 1;
  spec.nakamura_tail_factorial = 2 * m - 1;
  if (kind == SeriesKind::monotone_g) {
    // Keep term pairs until the first omitted one is below 1e-30 at z = 2,
    // the top of the root bracket: truncation then never moves a root.
    int i = 0;
    for (;;) {
      const double lead = std::pow(2.0, m * i) /
                          to_double(factorial(static_cast<unsigned>(m * i)));
      if (lead < 1e-30) break;
      ++i;
    }
    spec.truncation_terms = i;
  } else {
    spec.truncation_terms = kind == SeriesKind::monotone_majorant_f ? 5 : 4;  // exact polynomials
  }
  return spec;
}

inline double eval_series(const SeriesSpec& spec, double z) {
  if (!(z >= 0.0 && z <= 4.0)) throw std::invalid_argument("eval_series: z must be in [0, 4]");
  const int m = spec.m;
  switch (spec.kind) {
    case SeriesKind::monotone_g: {
      double sum = 0;
      for (int i = 0; i < spec.truncation_terms; ++i) {
        sum += std::pow(z, m * i) / to_double(factorial(static_cast<unsigned>(m * i)));
        sum -= std::pow(z, m * i + 1) / to_double(factorial(static_cast<unsigned>(m * i + 1)));
      }
      return sum;
    }
    case SeriesKind::monotone_majorant_f:
      return 1.0 - z + std::pow(z, m) / to_double(factorial(static_cast<unsigned>(m))) -
             std::pow(z, m + 1) / to_double(factorial(static_cast<unsigned>(m + 1))) +
             std::pow(z, 2 * m) / to_double(factorial(static_cast<unsigned>(2 * m)));
    case SeriesKind::nakamura_f:
      return 1.0 - z + std::pow(z, m) / to_double(factorial(static_cast<unsigned>(m))) -
             m * std::pow(z, spec.nakamura_tail_exponent) /
                 to_double(factorial(static_cast<unsigned>(spec.nakamura_tail_factorial)));
  }
  throw std::invalid_argument("eval_series: unknown kind");
}

struct RootResult {
  double z0 = 0;
  double rho = 0;  // 1/z0
  double bracket_lo = 0;
  double bracket_hi = 0;
  double residual = 0;
};

// Smallest root in (1, 2): scan upward from z = 1 in steps of 0.01 for the
// first sign change, then bisect the bracket down to width 1e-13.
inline RootResult smallest_root(const SeriesSpec& spec) {
  double lo = 1.0;
  double flo = eval_series(spec, lo);
  double hi = 0, fhi = 0;
  bool found = false;
  for (int step = 1; step <= 100; ++step) {
    hi = 1.0 + step * 0.01;
    fhi = eval_series(spec, hi);
    if ((flo > 0 && fhi <= 0) || (flo < 0 && fhi >= 0) || flo == 0) {
      found = true;
      break;
    }
    lo = hi;
    flo = fhi;
  }
  if (!found)
    throw std::runtime_error("smallest_root: no sign change in [1, 2] for " +
                             to_string(spec.kind) + ", m=" + std::to_string(spec.m));
  RootResult res;
  res.bracket_lo = lo;
  res.bracket_hi = hi;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = eval_series(spec, mid);
    if ((flo <= 0) == (fmid <= 0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  res.z0 = 0.5 * (lo + hi);
  res.rho = 1.0 / res.z0;
  res.residual = std::fabs(eval_series(spec, res.z0));
  return res;
}

// Explicit quadratic lower bound for the monotone growth rate: with
// z = (1-eps)^{-1}, the majorant root condition reduces to
// a eps^2 - b eps + c <= 0 with
//   a = 2m-1 + (m-1)(m^2+1)/(m+1)!,  b = 1 + (m^2+1)/(m+1)!,
//   c = m/(m+1)! + 1/(2m)!,
// and rho >= 1 - eps' for the smaller root eps'. The two-term expansion
// c/b + a c^2/b^3 is reported alongside for comparison.
//
// The discriminant is checked in exact rational arithmetic. It is negative
// at m = 3 (the quadratic has no real root there), so instead of asserting
// positivity the result carries a validity flag; it is positive for m >= 4.
struct QuadraticBound {
  double epsilon_prime = 0;
  double rho_lower = 0;
  double approx_epsilon = 0;
  bool valid = false;
};

inline QuadraticBound monotone_lb_quadratic(int m) {
  if (m < 3) throw std::invalid_argument("monotone_lb_quadratic: m must be >= 3");
  const BigInt m1f = factorial(static_cast<unsigned>(m + 1));
  const BigInt m2p1 = BigInt(m) * m + 1;
  const BigRat a = BigRat(2 * m - 1) + BigRat(BigInt(m - 1) * m2p1, m1f);
  const BigRat b = BigRat(1) + BigRat(m2p1, m1f);
  const BigRat c = BigRat(m, m1f) + BigRat(1, factorial(static_cast<unsigned>(2 * m)));
  const BigRat disc = b * b - 4 * a * c;

  QuadraticBound q;
  q.approx_epsilon = to_double(c / b + a * c * c / (b * b * b));
  q.valid = disc > 0;
  if (q.valid) {
    q.epsilon_prime =
        (to_double(b) - std::sqrt(to_double(disc))) / (2.0 * to_double(a));
    q.rho_lower = 1.0 - q.epsilon_prime;
  }
  return q;
}

}  // namespace cpa
