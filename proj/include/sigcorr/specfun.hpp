#ifndef SIGCORR_SPECFUN_HPP
#define SIGCORR_SPECFUN_HPP

// Scalar special functions: probabilists' Hermite polynomials, arcsin
// Maclaurin coefficients, inverse hyperbolic sine and the Bessel J0.

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sigcorr {

/// Probabilists' Hermite polynomial He_m(x), e.g. He_2 = x^2 - 1.
template <typename Scalar>
Scalar hermite_prob(unsigned m, Scalar x) {
  Scalar prev = Scalar(1);
  if (m == 0) return prev;
  Scalar cur = x;
  for (unsigned k = 1; k < m; ++k) {
    const Scalar next = x * cur - Scalar(k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

inline constexpr unsigned kMaxArcsinIndex = 64;

/// Coefficient a_j of u^(2j+1) in arcsin(u) = sum_j a_j u^(2j+1).
template <typename Scalar = double>
Scalar arcsin_coeff(unsigned j) {
  if (j > kMaxArcsinIndex)
    throw std::out_of_range("arcsin_coeff: index beyond supported range (64)");
  Scalar a = Scalar(1);
  for (unsigned i = 0; i < j; ++i) {
    const Scalar odd = Scalar(2 * i + 1);
    a *= odd * odd / (Scalar(2 * i + 2) * Scalar(2 * i + 3));
  }
  return a;
}

/// ln(x + sqrt(x^2 + 1)), evaluated on |x| and mirrored so that large
/// negative arguments do not cancel.
template <typename Scalar>
Scalar argsinh(Scalar x) {
  using std::log;
  using std::log1p;
  using std::sqrt;
  if (x < Scalar(0)) return -argsinh(-x);
  if (x > Scalar(1e8)) return log(x) + std::numbers::ln2_v<Scalar>;
  const Scalar x2 = x * x;
  return log1p(x + x2 / (Scalar(1) + sqrt(Scalar(1) + x2)));
}

namespace detail {

// Power series sum_k (-1)^k (x/2)^(2k) / (k!)^2. Terms reach ~4e3 at x = 12,
// so the sum is carried in long double.
inline long double j0_series(long double x) {
  const long double q = x * x / 4.0L;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<long double>(k) * k);
    sum += term;
    if (std::fabs(term) < 1e-22L) break;
  }
  return sum;
}

// Hankel expansion J0 = sqrt(2/(pi x)) (P cos(x - pi/4) - Q sin(x - pi/4)),
// truncated at the smallest term. Only used where that term is < 1e-18.
inline long double j0_hankel(long double x) {
  const long double mu = 0.0L;
  const long double z8 = 8.0L * x;
  long double p = 1.0L;
  long double q = 0.0L;
  long double term = 1.0L;
  long double last = 1.0L;
  for (int k = 1; k < 200; ++k) {
    const long double odd = 2.0L * k - 1.0L;
    const long double next = term * (mu - odd * odd) / (k * z8);
    if (std::fabs(next) > std::fabs(last)) break;
    term = next;
    last = std::fabs(next);
    if (k % 2 == 1)
      q += (k % 4 == 1 ? 1.0L : -1.0L) * term;
    else
      p += (k % 4 == 2 ? -1.0L : 1.0L) * term;
    if (last < 1e-22L) break;
  }
  const long double phase = x - std::numbers::pi_v<long double> / 4.0L;
  return std::sqrt(2.0L / (std::numbers::pi_v<long double> * x)) *
         (p * std::cos(phase) - q * std::sin(phase));
}

// Miller's backward recurrence normalised by J0 + 2 sum_k J_2k = 1.
inline long double j0_miller(long double x) {
  int start = static_cast<int>(x) + 60;
  if (start % 2) ++start;
  long double above = 0.0L;
  long double cur = 1e-30L;
  long double even_sum = 0.0L;
  for (int k = start; k > 0; --k) {
    const long double below = 2.0L * k / x * cur - above;
    above = cur;
    cur = below;
    if ((k - 1) % 2 == 0 && k - 1 > 0) even_sum += cur;
    if (std::fabs(cur) > 1e250L) {
      above *= 1e-250L;
      cur *= 1e-250L;
      even_sum *= 1e-250L;
    }
  }
  return cur / (cur + 2.0L * even_sum);
}

}  // namespace detail

inline constexpr double kBesselSeriesLimit = 12.0;

/// Bessel function of the first kind of order zero. Absolute error below
/// 1e-14 on [0, 200]; even in x.
template <typename Scalar>
Scalar bessel_j0(Scalar x) {
  const long double ax = std::fabs(static_cast<long double>(x));
  if (ax < kBesselSeriesLimit) return static_cast<Scalar>(detail::j0_series(ax));
  // The Hankel form only reaches 1e-18 beyond x ~ 22.
  if (ax < 25.0L) return static_cast<Scalar>(detail::j0_miller(ax));
  return static_cast<Scalar>(detail::j0_hankel(ax));
}

}  // namespace sigcorr

#endif  // SIGCORR_SPECFUN_HPP
