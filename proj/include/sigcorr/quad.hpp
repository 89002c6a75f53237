#ifndef SIGCORR_QUAD_HPP
#define SIGCORR_QUAD_HPP

// Deterministic adaptive quadrature built on the nested Gauss 7 / Kronrod 15
// pair. Panels are refined depth-first and accumulated strictly left to
// right, so identical inputs give bit-identical results.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sigcorr {

enum class QuadMethod { Adaptive1d, Tensor2d, SemiInfinite };

inline const char* to_string(QuadMethod m) {
  switch (m) {
    case QuadMethod::Adaptive1d: return "adaptive-1d";
    case QuadMethod::Tensor2d: return "tensor-2d";
    case QuadMethod::SemiInfinite: return "semi-infinite";
  }
  return "unknown";
}

template <typename Scalar = double>
struct QuadResult {
  Scalar value{0};
  Scalar error_estimate{0};
  std::size_t evaluations{0};
  QuadMethod method{QuadMethod::Adaptive1d};
};

/// Thrown when adaptive refinement exhausts its evaluation budget.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadOptions {
  int min_panels = 1;
  std::size_t max_evaluations = 1'000'000;
};

template <typename Scalar = double>
struct TruncationPolicy {
  Scalar cutoff{100};
  Scalar tail_bound{0};
};

/// Closed integration interval together with the number of equal panels it
/// is split into before adaptive refinement starts.
template <typename Scalar = double>
struct Range {
  Scalar lo{0};
  Scalar hi{1};
  int min_panels = 1;
};

namespace detail {

// Kronrod abscissae (positive half, descending) and weights for the 15-point
// rule; odd entries coincide with the 7-point Gauss nodes.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename Scalar>
struct PanelRule {
  Scalar kronrod;
  Scalar gauss;
  Scalar abs_kronrod;
};

template <typename Scalar, typename F>
PanelRule<Scalar> gauss_kronrod_15(F& f, Scalar a, Scalar b) {
  const Scalar center = (a + b) / Scalar(2);
  const Scalar half = (b - a) / Scalar(2);
  const Scalar fc = f(center);
  Scalar rk = fc * Scalar(kWgk[7]);
  Scalar rg = fc * Scalar(kWg[3]);
  Scalar ra = std::abs(rk);
  for (int i = 0; i < 7; ++i) {
    const Scalar dx = half * Scalar(kXgk[i]);
    const Scalar f1 = f(center - dx);
    const Scalar f2 = f(center + dx);
    rk += Scalar(kWgk[i]) * (f1 + f2);
    ra += Scalar(kWgk[i]) * (std::abs(f1) + std::abs(f2));
    if (i % 2 == 1) rg += Scalar(kWg[i / 2]) * (f1 + f2);
  }
  return {rk * half, rg * half, ra * std::abs(half)};
}

}  // namespace detail

/// Adaptive G7/K15 quadrature of f over [a, b]. A panel of width w is
/// accepted once |K15 - G7| <= tol * w / (b - a), or when that discrepancy
/// is at the rounding level of the panel. error_estimate is the sum of the
/// accepted discrepancies.
template <typename Scalar, typename F>
QuadResult<Scalar> integrate_1d(F&& f, Scalar a, Scalar b, Scalar tol,
                                const QuadOptions& opts = {}) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("integrate_1d: need finite a < b");
  if (!(tol > Scalar(0))) throw std::invalid_argument("integrate_1d: tol must be > 0");

  constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar width = b - a;
  const int initial = std::max(1, opts.min_panels);

  QuadResult<Scalar> out;
  out.method = QuadMethod::Adaptive1d;

  // Depth-first stack of pending panels; the left half is always on top so
  // that accepted panels arrive in increasing order.
  std::vector<std::pair<Scalar, Scalar>> stack;
  stack.reserve(64);
  for (int i = initial - 1; i >= 0; --i) {
    const Scalar lo = a + width * Scalar(i) / Scalar(initial);
    const Scalar hi = (i + 1 == initial) ? b : a + width * Scalar(i + 1) / Scalar(initial);
    stack.emplace_back(lo, hi);
  }

  while (!stack.empty()) {
    const auto [lo, hi] = stack.back();
    stack.pop_back();
    if (out.evaluations + 15 > opts.max_evaluations)
      throw NonConvergence("integrate_1d: evaluation budget of " +
                           std::to_string(opts.max_evaluations) + " exhausted");
    const auto rule = detail::gauss_kronrod_15(f, lo, hi);
    out.evaluations += 15;
    const Scalar err = std::abs(rule.kronrod - rule.gauss);
    const Scalar mid = (lo + hi) / Scalar(2);
    const bool converged = err <= tol * (hi - lo) / width;
    const bool at_rounding = err <= Scalar(50) * eps * rule.abs_kronrod;
    const bool unsplittable = !(lo < mid && mid < hi);
    if (!std::isfinite(rule.kronrod))
      throw NonConvergence("integrate_1d: non-finite integrand value");
    if (converged || at_rounding || unsplittable) {
      out.value += rule.kronrod;
      out.error_estimate += err;
    } else {
      stack.emplace_back(mid, hi);
      stack.emplace_back(lo, mid);
    }
  }
  return out;
}

/// Integral over [0, inf) of f, assumed bounded by exp(-rate x) beyond
/// policy.cutoff. The discarded tail envelope exp(-rate R)/rate is added to
/// the error estimate.
template <typename Scalar, typename F>
QuadResult<Scalar> integrate_semi_inf(F&& f, Scalar envelope_rate, Scalar tol,
                                      const TruncationPolicy<Scalar>& policy = {},
                                      const QuadOptions& opts = {}) {
  if (!(envelope_rate > Scalar(0)))
    throw std::invalid_argument("integrate_semi_inf: envelope rate must be > 0");
  if (!(policy.cutoff > Scalar(0)))
    throw std::invalid_argument("integrate_semi_inf: cutoff must be > 0");
  auto res = integrate_1d(std::forward<F>(f), Scalar(0), policy.cutoff, tol, opts);
  const Scalar tail = std::exp(-envelope_rate * policy.cutoff) / envelope_rate;
  res.error_estimate += std::max(tail, policy.tail_bound);
  res.method = QuadMethod::SemiInfinite;
  return res;
}

/// Iterated integral  int_x int_y f(x, y) dy dx  over a rectangle. Inner
/// integrals are run at a tenth of tol spread over the outer width; the
/// reported error is the outer estimate plus outer width times the largest
/// inner estimate.
template <typename Scalar, typename F>
QuadResult<Scalar> integrate_2d(F&& f, const Range<Scalar>& x_range,
                                const Range<Scalar>& y_range, Scalar tol,
                                const QuadOptions& opts = {}) {
  if (!(tol > Scalar(0))) throw std::invalid_argument("integrate_2d: tol must be > 0");
  const Scalar outer_width = x_range.hi - x_range.lo;
  if (!(outer_width > Scalar(0)) || !(y_range.hi > y_range.lo))
    throw std::invalid_argument("integrate_2d: empty rectangle");

  const Scalar inner_tol = Scalar(0.1) * tol / outer_width;
  QuadOptions inner_opts = opts;
  inner_opts.min_panels = y_range.min_panels;

  std::size_t inner_evaluations = 0;
  Scalar worst_inner = 0;
  auto outer = [&](Scalar x) {
    auto slice = [&](Scalar y) { return f(x, y); };
    const auto r = integrate_1d(slice, y_range.lo, y_range.hi, inner_tol, inner_opts);
    inner_evaluations += r.evaluations;
    worst_inner = std::max(worst_inner, r.error_estimate);
    return r.value;
  };
  QuadOptions outer_opts = opts;
  outer_opts.min_panels = x_range.min_panels;
  auto res = integrate_1d(outer, x_range.lo, x_range.hi, Scalar(0.9) * tol, outer_opts);
  res.error_estimate += outer_width * worst_inner;
  res.evaluations = inner_evaluations;
  res.method = QuadMethod::Tensor2d;
  return res;
}

}  // namespace sigcorr

#endif  // SIGCORR_QUAD_HPP
