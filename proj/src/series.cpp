#include "sigcorr/series.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sigcorr/quad.hpp"
#include "sigcorr/specfun.hpp"

namespace sigcorr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMomentHalfWidth = 14.0;

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

double conditional_bound(double v) {
  if (!(v > 0.0)) throw std::invalid_argument("conditional_bound: need v > 0");
  return 1.0 / v;
}

std::complex<double> hermite_chirp_moment(unsigned m, double beta, double tol) {
  if (m % 2 == 1) return {0.0, 0.0};
  const double norm = 1.0 / std::sqrt(2.0 * kPi);
  auto weight = [=](double x) { return hermite_prob(m, x) * std::exp(-x * x / 2.0) * norm; };
  auto re = [&](double x) { return weight(x) * std::cos(beta * (x * x - 1.0)); };
  auto im = [&](double x) { return weight(x) * std::sin(beta * (x * x - 1.0)); };
  QuadOptions opts;
  opts.min_panels = 8;
  // Even integrand: fold onto [0, L].
  const double half_tol = tol / 2.0;
  const auto r = integrate_1d(re, 0.0, kMomentHalfWidth, half_tol, opts);
  const auto i = integrate_1d(im, 0.0, kMomentHalfWidth, half_tol, opts);
  return {2.0 * r.value, 2.0 * i.value};
}

OddSeries<double> mehler_coefficients(const RotationFamily& family, int max_order, double tol) {
  if (max_order < 1 || max_order % 2 == 0)
    throw std::invalid_argument("mehler_coefficients: order must be a positive odd integer");
  if (max_order > kMaxMehlerOrder)
    throw std::invalid_argument("mehler_coefficients: order above 15 is not supported");
  if (!(tol > 0.0)) throw std::invalid_argument("mehler_coefficients: tol must be > 0");

  const double eps = family.epsilon();
  const int max_j = (max_order - 1) / 2;

  // moments[m][q] = I_m((2q + 1) eps), even m only.
  std::vector<std::vector<std::complex<double>>> moments(max_order);
  for (int m = 0; m < max_order; m += 2) {
    moments[m].resize(max_j + 1);
    for (int q = 0; q <= max_j; ++q)
      moments[m][q] = hermite_chirp_moment(m, (2 * q + 1) * eps, tol);
  }

  // A_{j,m} = 4^{-j} sum_q C(2j+1, j-q) Re[I_m((2q+1) eps)^2]  from
  // cos^{2j+1} u = 4^{-j} sum_q C(2j+1, j-q) cos((2q+1) u).
  auto mixed_moment = [&](int j, int m) {
    double sum = 0.0;
    for (int q = 0; q <= j; ++q) sum += binomial(2 * j + 1, j - q) * std::real(moments[m][q] * moments[m][q]);
    return std::ldexp(sum, -2 * j);
  };

  OddSeries<double>::Vector c = OddSeries<double>::Vector::Zero(max_j + 1);
  for (int k = 1; k <= max_order; k += 2) {
    double sum = 0.0;
    for (int j = 0; 2 * j + 1 <= k; ++j) {
      const int m = k - 2 * j - 1;  // always even
      sum += arcsin_coeff(j) * mixed_moment(j, m) / factorial(m);
    }
    c((k - 1) / 2) = 2.0 / kPi * sum;
  }
  return OddSeries<double>(std::move(c));
}

}  // namespace sigcorr
