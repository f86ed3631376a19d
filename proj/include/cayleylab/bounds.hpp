#pragma once

/**
 * Closed-form probability expressions and bounds, evaluated on a log scale.
 * Powers (1 - q)^m are formed as exp(m * log1p(-q)) so that m in the
 * millions neither underflows early nor loses precision.
 */

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "errors.hpp"

namespace cayleylab {

struct BoundReport {
  double value = 0.0;
  double log_value = 0.0;  // natural log; -inf when value == 0
  std::string formula_id;
};

namespace detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline BoundReport from_log(double log_value, std::string id) {
  return {std::exp(log_value), log_value, std::move(id)};
}

inline void require_unit(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("probability must lie in [0, 1]");
}

/// m * log(1 - q), with the conventions 0 * log 0 = 0 and m > 0 => -inf at q = 1.
inline double log_pow1m(double m, double q) {
  if (m == 0.0) return 0.0;
  if (q >= 1.0) return kNegInf;
  return m * std::log1p(-q);
}

inline double safe_log(double v) { return v > 0.0 ? std::log(v) : kNegInf; }

inline bool is_power_of_two(long long v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace detail

/// sqrt(c ln n / n).
inline double threshold_p(double c, long long n) {
  if (!(c >= 0.0)) throw ParameterError("threshold constant must be nonnegative");
  if (n < 2) throw ParameterError("threshold_p needs n >= 2");
  const double nn = static_cast<double>(n);
  const double sq = c * std::log(nn) / nn;
  if (sq > 1.0) throw ParameterError("c ln(n)/n exceeds 1; p would not be a probability");
  return std::sqrt(sq);
}

/// Expected number of vertices at distance > 2 from 1 in the random Cayley
/// graph on Z2^k, N = 2^k: (N-1)(1-p)(1-p^2)^((N-2)/2).
inline BoundReport expected_far_vertices_Z2(long long N, double p) {
  if (N < 4 || !detail::is_power_of_two(N)) throw ParameterError("N must be a power of two >= 4");
  detail::require_unit(p);
  const double n = static_cast<double>(N);
  const double lv = std::log(n - 1.0) + detail::log_pow1m(1.0, p) + detail::log_pow1m((n - 2.0) / 2.0, p * p);
  return detail::from_log(lv, "ex-z2");
}

/// E X(X-1) for the same count, where for two far vertices x, y the remaining
/// N-4 elements pair into (N-4)/4 four-cycles {z, zx, zy, zxy}; each must
/// avoid containing both endpoints of some path, the C4 independence
/// probability q^4 + 4pq^3 + 2p^2q^2.
inline BoundReport second_factorial_moment_Z2(long long N, double p) {
  if (N < 8 || !detail::is_power_of_two(N)) throw ParameterError("N must be a power of two >= 8");
  detail::require_unit(p);
  const double n = static_cast<double>(N);
  const double q = 1.0 - p;
  const double base = q * q * q * q + 4.0 * p * q * q * q + 2.0 * p * p * q * q;
  const double lv = std::log(n - 1.0) + std::log(n - 2.0) + detail::log_pow1m(2.0, p) +
                    ((n - 4.0) / 4.0) * detail::safe_log(base);
  return detail::from_log(lv, "exx-z2");
}

/// E X(X-1)/(E X)^2 - 1 + 1/E X; reported signed.
inline BoundReport chebyshev_prob_zero_upper(double ex, double exx1) {
  if (!(ex > 0.0)) throw ParameterError("chebyshev_prob_zero_upper needs E X > 0");
  if (!(exx1 >= 0.0)) throw ParameterError("E X(X-1) must be nonnegative");
  const double v = exx1 / (ex * ex) - 1.0 + 1.0 / ex;
  return {v, v > 0.0 ? std::log(v) : detail::kNegInf, "chebyshev"};
}

/// (1-p)^2 (1-p^2)^edge_count. Edges must be loopless; a loop of Gamma_x
/// (a square root of x) is hit with probability p and costs a factor 1-p.
inline BoundReport kleitman_lower_Bx(double edge_count, double p) {
  if (!(edge_count >= 0.0)) throw ParameterError("edge count must be nonnegative");
  if (!(p >= 0.0 && p < 1.0)) throw ParameterError("kleitman_lower_Bx needs 0 <= p < 1");
  const double lv = detail::log_pow1m(2.0, p) + detail::log_pow1m(edge_count, p * p);
  return detail::from_log(lv, "kleitman");
}

/// exp{-|I| r^2 + d |I| r^3}, r = 2p - p^2, d the number of dependent
/// neighbours per event (4 in the group setting).
inline BoundReport janson_upper(double i_size, double p, double neighbours = 4.0) {
  if (!(i_size >= 0.0)) throw ParameterError("|I| must be nonnegative");
  if (!(neighbours >= 0.0)) throw ParameterError("neighbour count must be nonnegative");
  detail::require_unit(p);
  const double r = 2.0 * p - p * p;
  const double lv = -i_size * r * r + neighbours * i_size * r * r * r;
  return detail::from_log(lv, "janson");
}

/// n (1-p^2)^((n-2)/divisor), times n again when pairs_mode counts all pairs
/// rather than pairs anchored at one vertex.
inline BoundReport union_bound_diam2(long long n, double p, long long divisor, bool pairs_mode = false) {
  if (n < 1) throw ParameterError("n must be positive");
  if (divisor < 1) throw ParameterError("divisor must be positive");
  detail::require_unit(p);
  const double nn = static_cast<double>(n);
  double lv = std::log(nn) + detail::log_pow1m((nn - 2.0) / static_cast<double>(divisor), p * p);
  if (pairs_mode) lv += std::log(nn);
  return detail::from_log(lv, pairs_mode ? "union-pairs" : "union");
}

struct RefinedExponent {
  BoundReport intermediate;  // exp{-p^2 (b1/2 + (2-p) b2 + (2/p - 1) b3 + (4 - 4p + p^2) b4)}
  BoundReport simplified;    // exp{-p^2 (n-2)/2 + 4 n p^3}

  bool ordered() const { return intermediate.log_value <= simplified.log_value + 1e-12; }
};

inline RefinedExponent refined_exponent_bound(double b1, double b2, double b3, double b4, double p, long long n) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("refined_exponent_bound needs 0 < p < 1");
  const double nn = static_cast<double>(n);
  const double inner = b1 / 2.0 + (2.0 - p) * b2 + (2.0 / p - 1.0) * b3 + (4.0 - 4.0 * p + p * p) * b4;
  RefinedExponent r;
  r.intermediate = detail::from_log(-p * p * inner, "refined-intermediate");
  r.simplified = detail::from_log(-p * p * (nn - 2.0) / 2.0 + 4.0 * nn * p * p * p, "refined-simplified");
  return r;
}

}  // namespace cayleylab
