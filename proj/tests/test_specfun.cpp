#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "sigcorr/quad.hpp"
#include "sigcorr/specfun.hpp"

using namespace sigcorr;

namespace {

// Defining series of J0, kept separate from the library evaluator.
long double j0_defining_series(long double x) {
  long double sum = 0.0L, term = 1.0L;
  for (int k = 0; k < 80; ++k) {
    if (k > 0) term *= -(x * x / 4.0L) / (static_cast<long double>(k) * k);
    sum += term;
  }
  return sum;
}

}  // namespace

TEST_CASE("hermite_prob matches the printed polynomials") {
  CHECK(hermite_prob(0, 7.3) == 1.0);
  CHECK(hermite_prob(2, 2.0) == doctest::Approx(3.0));
  CHECK(hermite_prob(5, 2.0) == doctest::Approx(-18.0));
  for (double x : {-1.7, 0.0, 0.3, 2.5}) {
    CHECK(hermite_prob(2, x) == doctest::Approx(x * x - 1.0));
    CHECK(hermite_prob(5, x) == doctest::Approx(std::pow(x, 5) - 10 * std::pow(x, 3) + 15 * x));
  }
}

TEST_CASE("hermite_prob parity He_m(-x) = (-1)^m He_m(x)") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double x = dist(gen);
    for (unsigned m = 0; m <= 12; ++m) {
      const double pos = hermite_prob(m, x);
      const double neg = hermite_prob(m, -x);
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      CHECK(std::abs(neg - sign * pos) <= 1e-10 * std::max(1.0, std::abs(pos)));
    }
  }
}

TEST_CASE("arcsin_coeff") {
  CHECK(arcsin_coeff(0) == 1.0);
  CHECK(arcsin_coeff(1) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(arcsin_coeff(2) == doctest::Approx(3.0 / 40.0).epsilon(1e-15));
  CHECK(arcsin_coeff(3) == doctest::Approx(15.0 / 336.0).epsilon(1e-15));
  CHECK_THROWS_AS(arcsin_coeff(65), std::out_of_range);

  double prev = 2.0;
  for (unsigned j = 0; j <= kMaxArcsinIndex; ++j) {
    const double a = arcsin_coeff(j);
    CHECK(a > 0.0);
    CHECK(a <= 1.0);
    CHECK(a < prev);
    prev = a;
  }
}

TEST_CASE("arcsin partial sums converge monotonically for |u| <= 0.9") {
  for (double u : {-0.9, -0.5, 0.1, 0.6, 0.9}) {
    const double target = std::asin(u);
    double sum = 0.0, prev_err = INFINITY;
    for (unsigned j = 0; j <= 40; ++j) {
      sum += arcsin_coeff(j) * std::pow(u, 2 * j + 1);
      const double err = std::abs(sum - target);
      if (err < 1e-15) break;
      CHECK(err < prev_err);
      prev_err = err;
    }
  }
}

TEST_CASE("argsinh") {
  CHECK(argsinh(0.0) == 0.0);
  CHECK(argsinh(1.0) == doctest::Approx(0.8813735870195430).epsilon(1e-15));
  CHECK(argsinh(-1.0) == doctest::Approx(-0.8813735870195430).epsilon(1e-15));
  CHECK(argsinh(1.0) == doctest::Approx(std::log(1.0 + std::sqrt(2.0))).epsilon(1e-15));
  for (double x = -5.0; x <= 5.0; x += 0.0625) CHECK(std::abs(argsinh(std::sinh(x)) - x) <= 1e-12);
  // Large negative arguments stay finite and odd.
  CHECK(argsinh(-1e300) == doctest::Approx(-argsinh(1e300)));
  CHECK(std::isfinite(argsinh(-1e300)));
  CHECK(argsinh(-1e-12) == doctest::Approx(-1e-12).epsilon(1e-12));
}

TEST_CASE("bessel_j0 anchors") {
  CHECK(bessel_j0(0.0) == 1.0);
  CHECK(std::abs(bessel_j0(1.0) - static_cast<double>(j0_defining_series(1.0L))) <= 1e-15);
  CHECK(bessel_j0(1.0) == doctest::Approx(0.7651976865579666).epsilon(1e-15));

  // First zero by bisection on the defining series.
  long double lo = 2.0L, hi = 3.0L;
  for (int it = 0; it < 100; ++it) {
    const long double mid = (lo + hi) / 2.0L;
    (j0_defining_series(mid) > 0.0L ? lo : hi) = mid;
  }
  const double zero = static_cast<double>(lo);
  CHECK(zero == doctest::Approx(2.404825557695773).epsilon(1e-14));
  CHECK(std::abs(bessel_j0(2.404825557695773)) <= 1e-12);
}

TEST_CASE("bessel_j0 against high-precision reference values") {
  // 40-digit reference values.
  const struct { double x, j0; } table[] = {
      {0.5, 0.93846980724081290423},    {3, -0.26005195490193343762},
      {7.5, 0.26633965788037839687},    {11.99, 0.045451560352858556046},
      {12, 0.047689310796833536624},    {12.01, 0.049920430319825401734},
      {17.3, -0.13370064707576429494},  {24.99, 0.095008236967548321198},
      {25, 0.096266783275958116174},    {25.01, 0.097515201593195513016},
      {50, 0.055812327669251815005},    {100.7, 0.064822099717294883064},
      {150, -0.00077409037539429124695}, {199.9, -0.02078306756563417742},
      {200, -0.015437439930565091592},
  };
  for (const auto& row : table) {
    INFO("x = " << row.x);
    CHECK(std::abs(bessel_j0(row.x) - row.j0) <= 1e-14);
  }
  CHECK(bessel_j0(-3.0) == bessel_j0(3.0));
}

TEST_CASE("bessel_j0 matches its angular integral") {
  for (double x : {0.0, 0.5, 1.0, 5.0, 20.0}) {
    auto f = [x](double theta) { return std::cos(x * std::sin(theta)); };
    const auto r = integrate_1d(f, 0.0, std::numbers::pi, 1e-13, QuadOptions{8});
    CHECK(std::abs(r.value / std::numbers::pi - bessel_j0(x)) <= 1e-10);
  }
}
