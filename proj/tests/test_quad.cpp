#include "doctest.h"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sigcorr/quad.hpp"
#include "sigcorr/specfun.hpp"

using namespace sigcorr;

namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

double laplace_j0(double x) { return std::exp(-x) * bessel_j0(x); }

}  // namespace

TEST_CASE("integrate_1d examples") {
  auto r = integrate_1d([](double x) { return x; }, 0.0, 1.0, 1e-12);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.error_estimate >= 0.0);
  CHECK(r.evaluations > 0);
  CHECK(r.method == QuadMethod::Adaptive1d);

  r = integrate_1d([](double x) { return std::cos(x); }, 0.0, kPi, 1e-12);
  CHECK(std::abs(r.value) <= 1e-12);

  r = integrate_1d(laplace_j0, 0.0, 100.0, 1e-12);
  CHECK(std::abs(r.value - kInvSqrt2) <= 1e-12);
}

TEST_CASE("integrate_1d error contract on smooth integrands") {
  const struct {
    std::function<double(double)> f;
    double a, b, exact;
  } cases[] = {
      {[](double x) { return std::exp(x); }, 0.0, 1.0, std::exp(1.0) - 1.0},
      {[](double x) { return 1.0 / (1.0 + x * x); }, -5.0, 5.0, 2.0 * std::atan(5.0)},
      {[](double x) { return std::sin(10.0 * x); }, 0.0, 3.0, (1.0 - std::cos(30.0)) / 10.0},
      {laplace_j0, 0.0, 100.0, kInvSqrt2},
  };
  for (const auto& c : cases) {
    for (double tol : {1e-6, 1e-9, 1e-12}) {
      const auto r = integrate_1d(c.f, c.a, c.b, tol);
      CHECK(std::abs(r.value - c.exact) <= std::max(r.error_estimate, tol) + 1e-15);
    }
  }
}

TEST_CASE("halving tol moves the value by at most twice the reported error") {
  const std::function<double(double)> fs[] = {
      [](double x) { return std::exp(x); },
      [](double x) { return std::sin(10.0 * x); },
      laplace_j0,
  };
  for (const auto& f : fs) {
    for (double tol = 1e-4; tol > 1e-12; tol /= 2.0) {
      const auto coarse = integrate_1d(f, 0.0, 3.0, tol);
      const auto fine = integrate_1d(f, 0.0, 3.0, tol / 2.0);
      CHECK(std::abs(fine.value - coarse.value) <= 2.0 * coarse.error_estimate + 1e-15);
    }
  }
}

TEST_CASE("integrate_1d is deterministic and additive") {
  auto f = [](double x) { return std::cos(3.0 * x) * std::exp(-x / 4.0); };
  const auto r1 = integrate_1d(f, 0.0, 7.0, 1e-11);
  const auto r2 = integrate_1d(f, 0.0, 7.0, 1e-11);
  CHECK(r1.value == r2.value);
  CHECK(r1.error_estimate == r2.error_estimate);
  CHECK(r1.evaluations == r2.evaluations);

  const auto left = integrate_1d(f, 0.0, 2.5, 1e-11);
  const auto right = integrate_1d(f, 2.5, 7.0, 1e-11);
  CHECK(std::abs(left.value + right.value - r1.value) <=
        left.error_estimate + right.error_estimate + r1.error_estimate + 1e-15);
}

TEST_CASE("integrate_1d rejects bad input and reports non-convergence") {
  auto f = [](double x) { return x; };
  CHECK_THROWS_AS(integrate_1d(f, 1.0, 0.0, 1e-9), std::invalid_argument);
  CHECK_THROWS_AS(integrate_1d(f, 0.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(integrate_1d(f, 0.0, static_cast<double>(INFINITY), 1e-9), std::invalid_argument);

  // A kink needs more than a handful of panels.
  auto kink = [](double x) { return std::abs(x - 0.3); };
  QuadOptions tight;
  tight.max_evaluations = 60;
  CHECK_THROWS_AS(integrate_1d(kink, 0.0, 1.0, 1e-14, tight), NonConvergence);
  CHECK_NOTHROW(integrate_1d(kink, 0.0, 1.0, 1e-10));
}

TEST_CASE("integrate_semi_inf examples") {
  const TruncationPolicy<double> policy{100.0, 0.0};
  auto r = integrate_semi_inf([](double x) { return std::exp(-x); }, 1.0, 1e-12, policy);
  CHECK(std::abs(r.value - 1.0) <= 1e-12);
  CHECK(r.method == QuadMethod::SemiInfinite);
  CHECK(r.error_estimate >= std::exp(-100.0));

  r = integrate_semi_inf([](double x) { return std::exp(-x) * x; }, 0.5, 1e-12, policy);
  CHECK(std::abs(r.value - 1.0) <= 1e-12);
  CHECK(r.error_estimate >= 2.0 * std::exp(-50.0));

  r = integrate_semi_inf(laplace_j0, 1.0, 1e-12, policy);
  CHECK(std::abs(r.value - kInvSqrt2) <= 1e-11);

  CHECK_THROWS_AS(integrate_semi_inf(laplace_j0, 0.0, 1e-12, policy), std::invalid_argument);
}

TEST_CASE("integrate_2d examples") {
  auto r = integrate_2d([](double, double) { return 1.0; }, Range<double>{0, 1}, Range<double>{0, 1}, 1e-12);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.method == QuadMethod::Tensor2d);

  r = integrate_2d([](double x, double y) { return std::exp(-x - y); }, Range<double>{0, 100, 10},
                   Range<double>{0, 100, 10}, 1e-10);
  CHECK(std::abs(r.value - 1.0) <= 1e-10);

  r = integrate_2d([](double rho, double theta) { return std::exp(-rho) * std::cos(rho * std::sin(theta)); },
                   Range<double>{0, 100, 20}, Range<double>{0, kPi, 8}, 1e-10);
  CHECK(std::abs(r.value - kPi * kInvSqrt2) <= std::max(r.error_estimate, 1e-10));
  CHECK(r.value == doctest::Approx(2.221441469).epsilon(1e-9));
}

TEST_CASE("integrate_2d is deterministic") {
  auto f = [](double x, double y) { return std::sin(x * y) * std::exp(-x * x - y * y); };
  const auto a = integrate_2d(f, Range<double>{-3, 3, 4}, Range<double>{-3, 3, 4}, 1e-10);
  const auto b = integrate_2d(f, Range<double>{-3, 3, 4}, Range<double>{-3, 3, 4}, 1e-10);
  CHECK(a.value == b.value);
  CHECK(a.error_estimate == b.error_estimate);
  CHECK(a.evaluations == b.evaluations);
}
