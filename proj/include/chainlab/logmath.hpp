#ifndef CHAINLAB_LOGMATH_HPP
#define CHAINLAB_LOGMATH_HPP

#include <cmath>
#include <limits>
#include <stdexcept>

namespace chainlab {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(1 - exp(x)) for x <= 0, accurate near both ends.
inline double log1mexp(double x) {
  if (x > 0) throw std::domain_error("log1mexp requires x <= 0");
  if (x == 0) return kNegInf;
  return x > -M_LN2 ? std::log(-std::expm1(x)) : std::log1p(-std::exp(x));
}

/// Binomial coefficient C(k, i) as a double, zero for i > k or i < 0.
inline double binomial(long long k, long long i) {
  if (i < 0 || k < 0 || i > k) return 0.0;
  if (i > k - i) i = k - i;
  double c = 1.0;
  for (long long j = 1; j <= i; ++j) c = c * static_cast<double>(k - i + j) / static_cast<double>(j);
  return c < 0x1.0p53 ? std::round(c) : c;
}

/// log of the falling factorial n (n-1) ... (n-m+1). Returns -inf when n is
/// a non-negative integer below m (the product has a zero factor).
inline double log_falling_factorial(double n, long long m) {
  if (m < 0) throw std::invalid_argument("falling factorial of negative order");
  if (m == 0) return 0.0;
  if (n - static_cast<double>(m - 1) <= 0) {
    if (n >= 0 && std::floor(n) == n) return kNegInf;
    throw std::domain_error("falling factorial with non-integer n < m");
  }
  if (m <= 4096) {
    double acc = 0.0;
    for (long long j = 0; j < m; ++j) acc += std::log(n - static_cast<double>(j));
    return acc;
  }
  return std::lgamma(n + 1.0) - std::lgamma(n - static_cast<double>(m) + 1.0);
}

inline double log_binomial(double n, long long m) {
  return log_falling_factorial(n, m) - std::lgamma(static_cast<double>(m) + 1.0);
}

}  // namespace chainlab

#endif  // CHAINLAB_LOGMATH_HPP
