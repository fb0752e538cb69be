#pragma once

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace cpa {

// Exact big-integer / big-rational backend. Counting code never touches
// floating point; doubles appear only when a result is rendered for output.
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Thrown when a request exceeds a configured size budget (state space,
// exhaustive-scan limit, ...). Maps to a dedicated process exit code in the
// CLI, distinct from plain validation errors.
class capacity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;  // exact: r is a binomial prefix product
  }
  return r;
}

inline double to_double(const BigInt& x) { return x.convert_to<double>(); }
inline double to_double(const BigRat& q) { return q.convert_to<double>(); }

inline std::string to_string(const BigInt& x) { return x.str(); }

}  // namespace cpa
