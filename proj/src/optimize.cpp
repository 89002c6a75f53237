#include "sigcorr/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sigcorr/phi.hpp"

namespace sigcorr {

namespace {

ScanPoint evaluate(double eta, double tol) {
  const auto r = phi_i_bessel(RotationFamily(eta), tol);
  return {eta, r.value, r.error_estimate};
}

std::size_t argmax(const std::vector<ScanPoint>& pts) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].value > pts[best].value) best = i;
  return best;
}

// Rises up to the maximum and falls after it, allowing steps that are
// within the combined error bars.
bool is_unimodal(const std::vector<ScanPoint>& pts, std::size_t peak) {
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double slack = pts[i].error_estimate + pts[i + 1].error_estimate;
    const double step = pts[i + 1].value - pts[i].value;
    if (i < peak && step < -slack) return false;
    if (i >= peak && step > slack) return false;
  }
  return true;
}

}  // namespace

ScanResult grid_scan(double lo, double hi, int steps, double tol) {
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("grid_scan: need finite lo <= hi");
  if (!(tol > 0.0)) throw std::invalid_argument("grid_scan: tol must be > 0");
  if (lo == hi) steps = 0;
  else if (steps < 1) throw std::invalid_argument("grid_scan: need steps >= 1");

  ScanResult out;
  out.points.reserve(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) {
    const double eta = (k == steps) ? hi : lo + (hi - lo) * k / std::max(steps, 1);
    out.points.push_back(evaluate(eta, tol));
  }
  const auto& best = out.points[argmax(out.points)];
  out.best_eta = best.eta;
  out.best_value = best.value;
  return out;
}

EtaOptimum maximize_eta(double lo, double hi, double xtol, double quad_tol) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("maximize_eta: need finite lo < hi");
  if (!(xtol > 0.0)) throw std::invalid_argument("maximize_eta: xtol must be > 0");
  if (!(quad_tol > 0.0)) throw std::invalid_argument("maximize_eta: quad_tol must be > 0");

  int evaluations = 0;
  auto value_at = [&](double eta) {
    ++evaluations;
    return evaluate(eta, quad_tol);
  };

  if (hi - lo <= xtol) {
    const auto a = value_at(lo);
    const auto b = value_at(hi);
    const auto& best = (b.value > a.value) ? b : a;
    return {best.eta, best.value, best.error_estimate, true, evaluations};
  }

  std::vector<ScanPoint> scan;
  scan.reserve(kPrecheckPoints);
  for (int k = 0; k < kPrecheckPoints; ++k) {
    const double eta = (k + 1 == kPrecheckPoints) ? hi : lo + (hi - lo) * k / (kPrecheckPoints - 1);
    scan.push_back(value_at(eta));
  }
  const std::size_t peak = argmax(scan);
  const bool unimodal = is_unimodal(scan, peak);

  double a = lo;
  double b = hi;
  if (!unimodal) {
    a = scan[peak == 0 ? 0 : peak - 1].eta;
    b = scan[std::min(peak + 1, scan.size() - 1)].eta;
  }

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  ScanPoint fc = value_at(c);
  ScanPoint fd = value_at(d);
  while (b - a > xtol) {
    if (fc.value >= fd.value) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = value_at(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = value_at(d);
    }
  }
  ScanPoint best = (fc.value >= fd.value) ? fc : fd;
  if (scan[peak].value > best.value) best = scan[peak];
  return {best.eta, best.value, best.error_estimate, unimodal, evaluations};
}

}  // namespace sigcorr
