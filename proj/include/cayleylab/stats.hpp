#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "errors.hpp"

namespace cayleylab {

inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double low = 0.0;
  double high = 1.0;
  bool contains(double v) const noexcept { return low <= v && v <= high; }
};

/// Wilson score interval for a binomial proportion.
inline Interval wilson_interval(std::size_t successes, std::size_t trials, double z = kZ95) {
  if (trials == 0) throw ParameterError("wilson_interval needs at least one trial");
  if (successes > trials) throw ParameterError("successes exceed trials");
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  // Pin the endpoints at the extremes, where rounding can push them past phat.
  Interval out{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  if (successes == 0) out.low = 0.0;
  if (successes == trials) out.high = 1.0;
  out.low = std::min(out.low, phat);
  out.high = std::max(out.high, phat);
  return out;
}

/// Standard error of a mean from the running sums of x and x^2.
inline double standard_error(double sum, double sum_sq, std::size_t trials) {
  const double n = static_cast<double>(trials);
  const double mean = sum / n;
  const double var = std::max(0.0, sum_sq / n - mean * mean) * n / std::max(1.0, n - 1.0);
  return std::sqrt(var / n);
}

}  // namespace cayleylab
