// Copyright 2026 The shgaunt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Spherical harmonics, associated Legendre functions and Wigner 3-j symbols.
//
// Conventions:
//  * Complex SHs carry the Condon-Shortley phase (-1)^m,
//      Y_{n,m} = (-1)^m sqrt((2n+1)(n-m)!/(4pi(n+m)!)) P_{n,m}(cos theta) e^{im phi},
//    with P_{n,m} the associated Legendre function WITHOUT that phase.
//  * Real SHs have no Condon-Shortley phase,
//      R_{n,m} = Theta_{n,|m|}(theta) Phi_m(phi),
//    Phi_m = sqrt2 cos(m phi) (m > 0), 1 (m = 0), sqrt2 sin(|m| phi) (m < 0).
//  * Both families are orthonormal over the full sphere and stacked in ACN
//    order, q = n^2 + n + m (0-based).

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

namespace shg {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kFourPi = 4.0 * std::numbers::pi;

using BigInt = boost::multiprecision::cpp_int;

enum class Basis : std::uint8_t { complex = 0, real = 1 };

inline const char* to_string(Basis basis) {
  return basis == Basis::complex ? "complex" : "real";
}

/// Direction on the unit sphere: inclination theta in [0, pi], azimuth phi
/// reduced to [0, 2pi).
class Direction {
 public:
  Direction() = default;
  Direction(double theta, double phi) : theta_(theta), phi_(reduce_azimuth(phi)) {
    if (!(theta >= 0.0 && theta <= kPi)) {
      throw std::invalid_argument("Direction: inclination outside [0, pi]");
    }
  }

  /// Direction of a (not necessarily unit) cartesian vector. The zero vector
  /// maps to +z.
  static Direction from_cartesian(const Eigen::Vector3d& v) {
    const double norm = v.norm();
    if (norm == 0.0) return Direction(0.0, 0.0);
    const double z = std::clamp(v.z() / norm, -1.0, 1.0);
    return Direction(std::acos(z), std::atan2(v.y(), v.x()));
  }

  double theta() const { return theta_; }
  double phi() const { return phi_; }

  Eigen::Vector3d unit_vector() const {
    const double s = std::sin(theta_);
    return {s * std::cos(phi_), s * std::sin(phi_), std::cos(theta_)};
  }

 private:
  static double reduce_azimuth(double phi) {
    constexpr double two_pi = 2.0 * kPi;
    double r = std::fmod(phi, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
  }

  double theta_ = 0.0;
  double phi_ = 0.0;
};

/// Order n and degree m of a spherical harmonic, |m| <= n.
struct ShIndex {
  int n = 0;
  int m = 0;

  constexpr ShIndex() = default;
  constexpr ShIndex(int order, int degree) : n(order), m(degree) {
    if (order < 0 || degree < -order || degree > order) {
      throw std::invalid_argument("ShIndex: requires n >= 0 and |m| <= n");
    }
  }

  friend constexpr bool operator==(const ShIndex&, const ShIndex&) = default;
};

/// Number of coefficients of an order-N expansion.
constexpr std::size_t coeff_count(int order) {
  return static_cast<std::size_t>(order + 1) * static_cast<std::size_t>(order + 1);
}

constexpr std::size_t acn(int n, int m) {
  return static_cast<std::size_t>(n * n + n + m);
}
constexpr std::size_t acn(const ShIndex& idx) { return acn(idx.n, idx.m); }

constexpr ShIndex from_acn(std::size_t q) {
  int n = 0;
  while (static_cast<std::size_t>((n + 1) * (n + 1)) <= q) ++n;
  return ShIndex(n, static_cast<int>(q) - n * n - n);
}

/// Order N of a coefficient vector of the given length, or -1 if the length
/// is not a perfect square.
inline int order_from_size(std::size_t size) {
  if (size == 0) return -1;
  auto root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(size))));
  return coeff_count(root - 1) == size ? root - 1 : -1;
}

constexpr double parity_sign(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

// ---------------------------------------------------------------------------
// Factorials

inline BigInt factorial_exact(unsigned n) {
  BigInt result = 1;
  for (unsigned k = 2; k <= n; ++k) result *= k;
  return result;
}

namespace detail {

// Product lo+1 ... hi (empty product is 1).
inline BigInt range_product(long lo, long hi) {
  BigInt result = 1;
  for (long k = lo + 1; k <= hi; ++k) result *= static_cast<unsigned long>(k);
  return result;
}

inline const std::array<double, 21>& small_log_factorials() {
  static const std::array<double, 21> table = [] {
    std::array<double, 21> t{};
    long double acc = 1.0L;
    t[0] = 0.0;
    for (int k = 1; k <= 20; ++k) {
      acc *= k;  // exact in long double up to 20!
      t[k] = static_cast<double>(std::log(acc));
    }
    return t;
  }();
  return table;
}

}  // namespace detail

/// ln(n!). Exact table below 21, corrected Stirling series above; relative
/// error stays below 1e-15 across the range used by the Gaunt tables.
inline double log_factorial(int n) {
  if (n < 0) throw std::invalid_argument("log_factorial: negative argument");
  if (n <= 20) return detail::small_log_factorials()[n];
  // ln Gamma(x+1) with x = n:
  // x ln x - x + ln(2 pi x)/2 + 1/(12x) - 1/(360x^3) + 1/(1260x^5) - 1/(1680x^7)
  const long double x = n;
  const long double inv = 1.0L / x;
  const long double inv2 = inv * inv;
  const long double series =
      inv * (1.0L / 12 - inv2 * (1.0L / 360 - inv2 * (1.0L / 1260 - inv2 * (1.0L / 1680))));
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  return static_cast<double>(x * std::log(x) - x + 0.5L * std::log(two_pi * x) + series);
}

// ---------------------------------------------------------------------------
// Legendre functions

/// Unnormalized associated Legendre function P_{n,m}(x), 0 <= m <= n, without
/// the Condon-Shortley phase. Computed by upward recursion in n.
inline double assoc_legendre(int n, int m, double x) {
  if (m < 0 || m > n) throw std::invalid_argument("assoc_legendre: requires 0 <= m <= n");
  if (!(std::abs(x) <= 1.0)) throw std::domain_error("assoc_legendre: |x| > 1");
  const double s = std::sqrt((1.0 - x) * (1.0 + x));
  double pmm = 1.0;
  for (int k = 1; k <= m; ++k) pmm *= (2.0 * k - 1.0) * s;
  if (n == m) return pmm;
  double p1 = x * (2.0 * m + 1.0) * pmm;
  double p0 = pmm;
  for (int l = m + 2; l <= n; ++l) {
    const double next = (x * (2.0 * l - 1.0) * p1 - (l + m - 1.0) * p0) / (l - m);
    p0 = p1;
    p1 = next;
  }
  return p1;
}

/// Index of Theta_{n,m} (m >= 0) in a triangular Legendre table.
constexpr std::size_t tri_index(int n, int m) {
  return static_cast<std::size_t>(n * (n + 1) / 2 + m);
}

/// All normalized Legendre factors
///   Theta_{n,m}(theta) = sqrt((2n+1)(n-m)!/(4pi(n+m)!)) P_{n,m}(cos theta)
/// for 0 <= m <= n <= order, in tri_index layout. Uses the normalized
/// three-term recursion, stable well past order 60.
inline std::vector<double> normalized_legendre_table(int order, double theta) {
  if (order < 0) throw std::invalid_argument("normalized_legendre_table: negative order");
  std::vector<double> out(tri_index(order, order) + 1, 0.0);
  const double x = std::cos(theta);
  const double s = std::sin(theta);
  double diag = 1.0 / std::sqrt(kFourPi);
  for (int m = 0; m <= order; ++m) {
    if (m > 0) diag *= std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s;
    out[tri_index(m, m)] = diag;
    if (m == order) break;
    double prev2 = diag;
    double prev1 = std::sqrt(2.0 * m + 3.0) * x * diag;
    out[tri_index(m + 1, m)] = prev1;
    for (int n = m + 2; n <= order; ++n) {
      const double nn = static_cast<double>(n) * n;
      const double mm = static_cast<double>(m) * m;
      const double a = std::sqrt((4.0 * nn - 1.0) / (nn - mm));
      const double b = std::sqrt(((n - 1.0) * (n - 1.0) - mm) / (4.0 * (n - 1.0) * (n - 1.0) - 1.0));
      const double cur = a * (x * prev1 - b * prev2);
      out[tri_index(n, m)] = cur;
      prev2 = prev1;
      prev1 = cur;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spherical harmonics

inline std::complex<double> sh_complex(const ShIndex& idx, const Direction& dir) {
  const auto table = normalized_legendre_table(idx.n, dir.theta());
  const int am = std::abs(idx.m);
  const double theta_part = table[tri_index(idx.n, am)];
  // m >= 0: (-1)^m Theta e^{im phi}; m < 0 follows from Y*_{n,m} = (-1)^m Y_{n,-m}
  // and reduces to Theta_{n,|m|} e^{im phi}.
  const double sign = idx.m > 0 ? parity_sign(idx.m) : 1.0;
  return std::polar(sign * theta_part, idx.m * dir.phi());
}

inline double sh_real(const ShIndex& idx, const Direction& dir) {
  const auto table = normalized_legendre_table(idx.n, dir.theta());
  const int am = std::abs(idx.m);
  const double theta_part = table[tri_index(idx.n, am)];
  if (idx.m > 0) return theta_part * std::numbers::sqrt2 * std::cos(idx.m * dir.phi());
  if (idx.m < 0) return theta_part * std::numbers::sqrt2 * std::sin(am * dir.phi());
  return theta_part;
}

/// Real SHs r_N(dir) in ACN order.
inline Eigen::VectorXd sh_vector_real(int order, const Direction& dir) {
  const auto table = normalized_legendre_table(order, dir.theta());
  Eigen::VectorXd out(static_cast<Eigen::Index>(coeff_count(order)));
  for (int n = 0; n <= order; ++n) {
    out(static_cast<Eigen::Index>(acn(n, 0))) = table[tri_index(n, 0)];
    for (int m = 1; m <= n; ++m) {
      const double t = table[tri_index(n, m)] * std::numbers::sqrt2;
      out(static_cast<Eigen::Index>(acn(n, m))) = t * std::cos(m * dir.phi());
      out(static_cast<Eigen::Index>(acn(n, -m))) = t * std::sin(m * dir.phi());
    }
  }
  return out;
}

/// Complex SHs y_N(dir) in ACN order.
inline Eigen::VectorXcd sh_vector_complex(int order, const Direction& dir) {
  const auto table = normalized_legendre_table(order, dir.theta());
  Eigen::VectorXcd out(static_cast<Eigen::Index>(coeff_count(order)));
  for (int n = 0; n <= order; ++n) {
    out(static_cast<Eigen::Index>(acn(n, 0))) = table[tri_index(n, 0)];
    for (int m = 1; m <= n; ++m) {
      const double t = table[tri_index(n, m)];
      const std::complex<double> e = std::polar(1.0, m * dir.phi());
      out(static_cast<Eigen::Index>(acn(n, m))) = parity_sign(m) * t * e;
      out(static_cast<Eigen::Index>(acn(n, -m))) = t * std::conj(e);
    }
  }
  return out;
}

inline Eigen::VectorXcd sh_vector(Basis basis, int order, const Direction& dir) {
  if (basis == Basis::complex) return sh_vector_complex(order, dir);
  return sh_vector_real(order, dir).cast<std::complex<double>>();
}

// ---------------------------------------------------------------------------
// Wigner 3-j symbols

/// Columns (n1 n2 n3; m1 m2 m3).
struct Wigner3jArgs {
  int n1 = 0, n2 = 0, n3 = 0;
  int m1 = 0, m2 = 0, m3 = 0;
};

enum class FactorialPath : std::uint8_t { exact, fast };

inline const char* to_string(FactorialPath path) {
  return path == FactorialPath::exact ? "exact" : "fast";
}

/// True when the symbol is structurally zero: invalid degrees, nonzero degree
/// sum, broken triangle rule, or all-zero degrees with odd order sum.
constexpr bool wigner3j_vanishes(const Wigner3jArgs& a) {
  if (a.n1 < 0 || a.n2 < 0 || a.n3 < 0) return true;
  if (a.m1 < -a.n1 || a.m1 > a.n1 || a.m2 < -a.n2 || a.m2 > a.n2 || a.m3 < -a.n3 || a.m3 > a.n3) {
    return true;
  }
  if (a.m1 + a.m2 + a.m3 != 0) return true;
  if (a.n3 < std::abs(a.n1 - a.n2) || a.n3 > a.n1 + a.n2) return true;
  if (a.m1 == 0 && a.m2 == 0 && a.m3 == 0 && (a.n1 + a.n2 + a.n3) % 2 != 0) return true;
  return false;
}

namespace detail {

struct RacahLimits {
  // Denominator factorials are s!, (A_i - s)!, (B_j + s)!.
  std::array<long, 3> a;
  std::array<long, 2> b;
  long s_min;
  long s_max;
};

inline RacahLimits racah_limits(const Wigner3jArgs& w) {
  RacahLimits r{};
  r.a = {w.n1 + w.n2 - w.n3, w.n1 - w.m1, w.n2 + w.m2};
  r.b = {w.n3 - w.n2 + w.m1, w.n3 - w.n1 - w.m2};
  r.s_min = std::max({0L, -r.b[0], -r.b[1]});
  r.s_max = std::min({r.a[0], r.a[1], r.a[2]});
  return r;
}

// Ratio num/den of two positive integers, rounded to double.
inline double big_ratio(const BigInt& num, const BigInt& den) {
  if (num == 0) return 0.0;
  const long e = static_cast<long>(boost::multiprecision::msb(num)) -
                 static_cast<long>(boost::multiprecision::msb(den));
  const long shift = 80 - e;
  BigInt q;
  if (shift >= 0) {
    q = (num << static_cast<unsigned>(shift)) / den;
  } else {
    q = num / (den << static_cast<unsigned>(-shift));
  }
  return std::ldexp(q.convert_to<double>(), static_cast<int>(-shift));
}

inline double wigner3j_exact(const Wigner3jArgs& w) {
  const RacahLimits r = racah_limits(w);
  if (r.s_min > r.s_max) return 0.0;
  // Common multiple of all denominators, so every term is an integer.
  BigInt common = factorial_exact(static_cast<unsigned>(r.s_max));
  for (long ai : r.a) common *= factorial_exact(static_cast<unsigned>(ai - r.s_min));
  for (long bj : r.b) common *= factorial_exact(static_cast<unsigned>(bj + r.s_max));

  BigInt sum = 0;
  for (long s = r.s_min; s <= r.s_max; ++s) {
    BigInt term = range_product(s, r.s_max);
    for (long ai : r.a) term *= range_product(ai - s, ai - r.s_min);
    for (long bj : r.b) term *= range_product(bj + s, bj + r.s_max);
    if (s % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  if (sum == 0) return 0.0;
  const bool negative_sum = sum < 0;
  if (negative_sum) sum = -sum;

  // value^2 = triangle * prod (n +- m)! * sum^2 / ((n1+n2+n3+1)! common^2)
  BigInt num = factorial_exact(static_cast<unsigned>(w.n1 + w.n2 - w.n3)) *
               factorial_exact(static_cast<unsigned>(w.n1 - w.n2 + w.n3)) *
               factorial_exact(static_cast<unsigned>(-w.n1 + w.n2 + w.n3));
  num *= factorial_exact(static_cast<unsigned>(w.n1 + w.m1)) *
         factorial_exact(static_cast<unsigned>(w.n1 - w.m1));
  num *= factorial_exact(static_cast<unsigned>(w.n2 + w.m2)) *
         factorial_exact(static_cast<unsigned>(w.n2 - w.m2));
  num *= factorial_exact(static_cast<unsigned>(w.n3 + w.m3)) *
         factorial_exact(static_cast<unsigned>(w.n3 - w.m3));
  num *= sum * sum;
  BigInt den = factorial_exact(static_cast<unsigned>(w.n1 + w.n2 + w.n3 + 1)) * common * common;

  const double magnitude = std::sqrt(big_ratio(num, den));
  double sign = parity_sign(std::abs(w.n1 - w.n2 - w.m3));
  if (negative_sum) sign = -sign;
  return sign * magnitude;
}

/// Relative cancellation level below which the fast-path sum is reported as
/// an exact zero. Non-trivial zeros land near 1e-15, genuine values far above.
inline constexpr long double kFastPathZeroFloor = 1e-12L;

inline double wigner3j_fast(const Wigner3jArgs& w) {
  const RacahLimits r = racah_limits(w);
  if (r.s_min > r.s_max) return 0.0;
  const long double half_log_prefactor =
      0.5L * (static_cast<long double>(log_factorial(w.n1 + w.n2 - w.n3)) +
              log_factorial(w.n1 - w.n2 + w.n3) + log_factorial(-w.n1 + w.n2 + w.n3) -
              log_factorial(w.n1 + w.n2 + w.n3 + 1) + log_factorial(w.n1 + w.m1) +
              log_factorial(w.n1 - w.m1) + log_factorial(w.n2 + w.m2) + log_factorial(w.n2 - w.m2) +
              log_factorial(w.n3 + w.m3) + log_factorial(w.n3 - w.m3));
  long double sum = 0.0L;
  long double magnitude = 0.0L;
  for (long s = r.s_min; s <= r.s_max; ++s) {
    long double log_den = log_factorial(static_cast<int>(s));
    for (long ai : r.a) log_den += log_factorial(static_cast<int>(ai - s));
    for (long bj : r.b) log_den += log_factorial(static_cast<int>(bj + s));
    const long double term = std::exp(half_log_prefactor - log_den);
    sum += (s % 2 == 0) ? term : -term;
    magnitude += term;
  }
  // Cancellation below the rounding floor of the terms is a non-trivial zero.
  if (std::abs(sum) <= kFastPathZeroFloor * magnitude) return 0.0;
  return static_cast<double>(parity_sign(std::abs(w.n1 - w.n2 - w.m3)) * sum);
}

}  // namespace detail

/// Wigner 3-j symbol by Racah's formula. Structurally vanishing arguments
/// (including invalid quantum numbers) return 0 without evaluating the sum.
/// The exact path sums in arbitrary-precision integers and rounds once; the
/// fast path works in log-factorials.
inline double wigner3j(const Wigner3jArgs& args, FactorialPath path = FactorialPath::exact) {
  if (wigner3j_vanishes(args)) return 0.0;
  return path == FactorialPath::exact ? detail::wigner3j_exact(args) : detail::wigner3j_fast(args);
}

}  // namespace shg
