#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "error.hpp"

namespace macq::bounds {

using BigCount = boost::multiprecision::cpp_int;

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::DomainError, what);
}

inline std::string args(long long a, long long b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

}  // namespace detail

inline BigCount binomial(long long n, long long k) {
  detail::require(n >= 0 && k >= 0 && k <= n, "binomial needs 0 <= k <= n, got " + detail::args(n, k));
  k = std::min(k, n - k);
  BigCount acc = 1;
  // acc stays C(n-k+i, i) after step i, so each division is exact
  for (long long i = 1; i <= k; ++i) {
    acc *= n - k + i;
    acc /= i;
  }
  return acc;
}

inline BigCount factorial(long long m) {
  detail::require(m >= 0, "factorial of a negative number");
  BigCount acc = 1;
  for (long long i = 2; i <= m; ++i) acc *= i;
  return acc;
}

inline BigCount power(long long base, long long exponent) {
  detail::require(exponent >= 0, "negative exponent");
  return boost::multiprecision::pow(BigCount(base), static_cast<unsigned>(exponent));
}

/// Smallest t with (d+2)^t >= C(n,d): a query has at most d+2 outcomes and
/// the C(n,d) live sets must all be told apart.
inline long long info_lower_bound(long long n, long long d) {
  detail::require(d >= 1 && d <= n, "info_lower_bound needs 1 <= d <= n, got " + detail::args(n, d));
  const BigCount target = binomial(n, d);
  BigCount reach = 1;
  long long t = 0;
  while (reach < target) {
    reach *= d + 2;
    ++t;
  }
  return t;
}

/// Upper bound on the number of root-to-leaf paths of length at most x with
/// exactly d Black edges: sum over h = d..x of C(h,d) * 2^(h-d) * d!.
inline BigCount path_count_bound(long long x, long long d) {
  detail::require(d >= 1 && x >= d, "path_count_bound needs x >= d >= 1, got " + detail::args(x, d));
  const BigCount orderings = factorial(d);
  BigCount total = 0;
  for (long long h = d; h <= x; ++h) total += binomial(h, d) * power(2, h - d) * orderings;
  return total;
}

enum class LabelFactor { Factorial, Power };

inline BigCount label_factor(long long d, LabelFactor factor) {
  return factor == LabelFactor::Factorial ? factorial(d) : power(d, d);
}

/// C(x,d) * 2^(x+1-d) * F, the closed-form path-count envelope at length x.
inline BigCount combinatorial_envelope(long long x, long long d, LabelFactor factor) {
  return binomial(x, d) * power(2, x + 1 - d) * label_factor(d, factor);
}

/// Smallest x >= d with C(x,d) * 2^(x+1-d) * F >= C(n,d), F = d! or d^d.
inline long long claimed_bound_combinatorial(long long n, long long d, LabelFactor factor) {
  detail::require(d >= 1 && d <= n, "claimed_bound_combinatorial needs 1 <= d <= n, got " + detail::args(n, d));
  const BigCount target = binomial(n, d);
  long long x = d;
  while (combinatorial_envelope(x, d, factor) < target) ++x;
  return x;
}

namespace detail {

/// Sign of (x + d lg x) - (d lg n - d lg d - d lg e - d + 1) at the precision
/// of Real; 0 when the difference is within the certified error.
template <typename Real>
int analytic_sign(long long x, long long n, long long d) {
  using boost::multiprecision::log;
  const Real ln2 = boost::math::constants::ln_two<Real>();
  const Real lg_e = 1 / ln2;
  auto lg = [&](long long v) { return Real(log(Real(v))) / ln2; };
  Real D(d);
  Real rhs = D * lg(n) - D * lg(d) - D * lg_e - D + 1;
  Real lhs = Real(x) + D * lg(x);
  Real diff = lhs - rhs;
  // each term carries a few ulps of error; anything smaller than this is a tie
  Real tolerance = std::numeric_limits<Real>::epsilon() * 64 * (abs(lhs) + abs(rhs) + 1);
  if (abs(diff) <= tolerance) return 0;
  return diff > 0 ? 1 : -1;
}

}  // namespace detail

using AnalyticReal = boost::multiprecision::cpp_bin_float_50;
using AnalyticRealWide = boost::multiprecision::cpp_bin_float_100;

/// Decimal digits used by claimed_bound_analytic; a comparison that cannot be
/// decided at this precision is redone with 100 digits.
inline constexpr int kAnalyticDigits = 50;

/// Smallest integer x >= 1 with x + d lg2 x >= d lg2 n - d lg2 d - d lg2 e - d + 1.
inline long long claimed_bound_analytic(long long n, long long d) {
  detail::require(n >= 2 && d >= 1 && d <= n, "claimed_bound_analytic needs n >= 2 and 1 <= d <= n, got " +
                                                  detail::args(n, d));
  for (long long x = 1;; ++x) {
    int sign = detail::analytic_sign<AnalyticReal>(x, n, d);
    if (sign == 0) sign = detail::analytic_sign<AnalyticRealWide>(x, n, d);
    // a tie that survives 100 digits is treated as equality, which satisfies >=
    if (sign >= 0) return x;
  }
}

}  // namespace macq::bounds
