#ifndef SIGCORR_PHI_HPP
#define SIGCORR_PHI_HPP

// Sign-correlation functional of the three-dimensional rotation family
//   F(X) = X1 cos(eps He2(X0)) + X2 sin(eps He2(X0))
//   G(Y) = Y1 cos(eps He2(Y0)) - Y2 sin(eps He2(Y0)),  eta = 2 eps,
// evaluated at real correlation t and at the imaginary point t = i.

#include <string>
#include <string_view>

#include "sigcorr/quad.hpp"

namespace sigcorr {

class RotationFamily {
 public:
  explicit RotationFamily(double eta);
  double eta() const { return eta_; }
  double epsilon() const { return eta_ / 2.0; }

 private:
  double eta_;
};

struct Constants {
  /// (2/pi) ln(1 + sqrt 2), the value of Phi(i)/i for F = G = x.
  static double threshold();
  /// pi / (2 ln(1 + sqrt 2)).
  static double krivine_bound();
};

enum class PhiMethod { Polar, Cartesian, Bessel };

const char* to_string(PhiMethod m);
/// Parses "polar", "cartesian" or "bessel"; throws std::invalid_argument.
PhiMethod parse_phi_method(std::string_view name);

struct VerificationReport {
  double eta;
  double phi_i_value;
  PhiMethod method;
  double error_estimate;
  double threshold;
  double margin;
  bool pass;
};

inline constexpr double kPolarCutoff = 100.0;
inline constexpr double kCartesianHalfWidth = 14.0;

/// argsinh(cos(eta (2 rho - 1))) e^{-rho} cos(rho sin theta)
double integrand_polar(double eta, double rho, double theta);

/// Phi(i)/i from the (rho, theta) double integral, rho cut at 100.
QuadResult<double> phi_i_polar(const RotationFamily& family, double tol);
/// Phi(i)/i from the Cartesian double integral over [-14, 14]^2.
QuadResult<double> phi_i_cartesian(const RotationFamily& family, double tol);
/// Phi(i)/i after the angular integral is folded into J0(rho).
QuadResult<double> phi_i_bessel(const RotationFamily& family, double tol);
QuadResult<double> phi_i(const RotationFamily& family, PhiMethod method, double tol);

/// Phi(t) for real |t| < 1.
QuadResult<double> phi_real_t(const RotationFamily& family, double t, double tol);

VerificationReport verify_theorem(const RotationFamily& family, PhiMethod method,
                                  double tol);

}  // namespace sigcorr

#endif  // SIGCORR_PHI_HPP
