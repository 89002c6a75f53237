#include "sigcorr/phi.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sigcorr/specfun.hpp"

namespace sigcorr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

void require_tol(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be > 0");
}

// Quadrature tolerance for the raw integral so that prefactor * error <= tol.
double raw_tol(double tol, double prefactor) { return tol / prefactor; }

QuadResult<double> scaled(QuadResult<double> r, double prefactor, double tail) {
  r.value *= prefactor;
  r.error_estimate = (r.error_estimate + tail) * prefactor;
  return r;
}

}  // namespace

RotationFamily::RotationFamily(double eta) : eta_(eta) {
  if (!std::isfinite(eta)) throw std::invalid_argument("eta must be finite");
}

double Constants::threshold() { return 2.0 / kPi * argsinh(1.0); }

double Constants::krivine_bound() { return kPi / (2.0 * argsinh(1.0)); }

const char* to_string(PhiMethod m) {
  switch (m) {
    case PhiMethod::Polar: return "polar";
    case PhiMethod::Cartesian: return "cartesian";
    case PhiMethod::Bessel: return "bessel";
  }
  return "unknown";
}

PhiMethod parse_phi_method(std::string_view name) {
  if (name == "polar") return PhiMethod::Polar;
  if (name == "cartesian") return PhiMethod::Cartesian;
  if (name == "bessel") return PhiMethod::Bessel;
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

double integrand_polar(double eta, double rho, double theta) {
  return argsinh(std::cos(eta * (2.0 * rho - 1.0))) * std::exp(-rho) *
         std::cos(rho * std::sin(theta));
}

QuadResult<double> phi_i_polar(const RotationFamily& family, double tol) {
  require_tol(tol);
  const double prefactor = 2.0 * kSqrt2 / (kPi * kPi);
  const double eta = family.eta();
  auto f = [eta](double rho, double theta) { return integrand_polar(eta, rho, theta); };
  const Range<double> rho{0.0, kPolarCutoff, 20};
  const Range<double> theta{0.0, kPi, 8};
  auto r = integrate_2d(f, rho, theta, raw_tol(tol, prefactor));
  // |integrand| <= argsinh(1) e^{-rho}; the theta axis has length pi.
  const double tail = kPi * argsinh(1.0) * std::exp(-kPolarCutoff);
  return scaled(r, prefactor, tail);
}

QuadResult<double> phi_i_cartesian(const RotationFamily& family, double tol) {
  require_tol(tol);
  const double prefactor = 1.0 / (kPi * kPi * kSqrt2);
  const double eps = family.epsilon();
  auto f = [eps](double x, double y) {
    const double r2 = x * x + y * y;
    return argsinh(std::cos(eps * (r2 - 2.0))) * std::exp(-r2 / 4.0) * std::cos(x * y / 2.0);
  };
  const double half = kCartesianHalfWidth;
  const Range<double> axis{-half, half, 8};
  auto r = integrate_2d(f, axis, axis, raw_tol(tol, prefactor));
  // Outside the square lies outside the disc of radius L, where the
  // Gaussian envelope integrates to 4 pi e^{-L^2/4}.
  const double tail = argsinh(1.0) * 4.0 * kPi * std::exp(-half * half / 4.0);
  return scaled(r, prefactor, tail);
}

QuadResult<double> phi_i_bessel(const RotationFamily& family, double tol) {
  require_tol(tol);
  const double prefactor = 2.0 * kSqrt2 / kPi;
  const double eta = family.eta();
  auto f = [eta](double rho) {
    return argsinh(std::cos(eta * (2.0 * rho - 1.0))) * std::exp(-rho) * bessel_j0(rho);
  };
  QuadOptions opts;
  opts.min_panels = 20;
  auto r = integrate_semi_inf(f, 1.0, raw_tol(tol, prefactor),
                              TruncationPolicy<double>{kPolarCutoff, 0.0}, opts);
  return scaled(r, prefactor, 0.0);
}

QuadResult<double> phi_i(const RotationFamily& family, PhiMethod method, double tol) {
  switch (method) {
    case PhiMethod::Polar: return phi_i_polar(family, tol);
    case PhiMethod::Cartesian: return phi_i_cartesian(family, tol);
    case PhiMethod::Bessel: return phi_i_bessel(family, tol);
  }
  throw std::invalid_argument("unknown method");
}

QuadResult<double> phi_real_t(const RotationFamily& family, double t, double tol) {
  require_tol(tol);
  if (!(std::abs(t) < 1.0)) throw std::invalid_argument("phi_real_t: need |t| < 1");
  // With u = (x + y)/sqrt2 = sqrt(1+t) p and v = (x - y)/sqrt2 = sqrt(1-t) q
  // the correlated density factorises into standard normals in (p, q) and
  // x^2 + y^2 = (1+t) p^2 + (1-t) q^2.
  constexpr double kHalf = 12.0;
  const double eps = family.epsilon();
  const double inv_norm = 1.0 / (2.0 * kPi);
  auto f = [=](double p, double q) {
    const double r2 = (1.0 + t) * p * p + (1.0 - t) * q * q;
    return std::asin(t * std::cos(eps * (r2 - 2.0))) * std::exp(-(p * p + q * q) / 2.0) *
           inv_norm;
  };
  const Range<double> axis{-kHalf, kHalf, 8};
  const double prefactor = 2.0 / kPi;
  auto r = integrate_2d(f, axis, axis, raw_tol(tol, prefactor));
  // |asin| <= pi/2 and P(max(|p|, |q|) > L) <= 2 erfc(L / sqrt 2).
  const double tail = kPi / 2.0 * 2.0 * std::erfc(kHalf / kSqrt2);
  return scaled(r, prefactor, tail);
}

VerificationReport verify_theorem(const RotationFamily& family, PhiMethod method,
                                  double tol) {
  const auto r = phi_i(family, method, tol);
  const double threshold = Constants::threshold();
  const double margin = r.value - threshold;
  return {family.eta(), r.value, method, r.error_estimate, threshold, margin,
          margin > r.error_estimate};
}

}  // namespace sigcorr
