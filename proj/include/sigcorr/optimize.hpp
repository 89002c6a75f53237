#ifndef SIGCORR_OPTIMIZE_HPP
#define SIGCORR_OPTIMIZE_HPP

#include <vector>

namespace sigcorr {

struct ScanPoint {
  double eta;
  double value;
  double error_estimate;
};

struct ScanResult {
  std::vector<ScanPoint> points;  // increasing eta
  double best_eta;
  double best_value;
};

/// V(eta) = Phi(i)/i (Bessel form) at steps + 1 equispaced points of
/// [lo, hi]; a single point when lo == hi.
ScanResult grid_scan(double lo, double hi, int steps, double tol);

struct EtaOptimum {
  double eta_star;
  double value_star;
  double error_estimate;
  bool unimodal_precheck;  // false means the fallback bracket was used
  int evaluations;
};

inline constexpr int kPrecheckPoints = 16;

/// Golden-section maximisation of V on [lo, hi], preceded by a 16-point
/// unimodality scan. If the scan is not unimodal within its error bars the
/// search is restricted to the grid cells around the scan maximum.
EtaOptimum maximize_eta(double lo, double hi, double xtol, double quad_tol);

}  // namespace sigcorr

#endif  // SIGCORR_OPTIMIZE_HPP
