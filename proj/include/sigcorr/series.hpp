#ifndef SIGCORR_SERIES_HPP
#define SIGCORR_SERIES_HPP

// Odd power series s = c_1 t + c_3 t^3 + ... + c_K t^K: composition,
// compositional inverse and sign-alternation analysis, plus the Taylor
// coefficients of Phi(t) for the rotation family.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sigcorr/phi.hpp"

namespace sigcorr {

template <typename Scalar = double>
class OddSeries {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  /// coeffs(i) is the coefficient of t^(2i+1).
  explicit OddSeries(Vector coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() == 0) throw std::invalid_argument("OddSeries: empty coefficient list");
    if (!coeffs_.allFinite()) throw std::invalid_argument("OddSeries: non-finite coefficient");
  }

  int max_order() const { return 2 * static_cast<int>(coeffs_.size()) - 1; }
  const Vector& coeffs() const { return coeffs_; }

  /// Coefficient of t^k; zero for even k or k beyond max_order.
  Scalar coeff(int k) const {
    if (k < 1 || k % 2 == 0 || k > max_order()) return Scalar(0);
    return coeffs_((k - 1) / 2);
  }

  /// Dense coefficient vector indexed by power, length max_order + 1.
  Vector dense() const {
    Vector d = Vector::Zero(max_order() + 1);
    for (Eigen::Index i = 0; i < coeffs_.size(); ++i) d(2 * i + 1) = coeffs_(i);
    return d;
  }

  Scalar operator()(Scalar t) const {
    const Scalar t2 = t * t;
    Scalar acc = 0;
    for (Eigen::Index i = coeffs_.size() - 1; i >= 0; --i) acc = acc * t2 + coeffs_(i);
    return acc * t;
  }

  static OddSeries from_dense(const Vector& d) {
    Vector c((d.size()) / 2);
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = d(2 * i + 1);
    return OddSeries(std::move(c));
  }

 private:
  Vector coeffs_;
};

namespace detail {

// Product of two dense series truncated after power `order`.
template <typename Vector>
Vector truncated_product(const Vector& a, const Vector& b, Eigen::Index order) {
  Vector out = Vector::Zero(order + 1);
  for (Eigen::Index i = 0; i < a.size() && i <= order; ++i) {
    if (a(i) == 0) continue;
    for (Eigen::Index j = 0; j < b.size() && i + j <= order; ++j) out(i + j) += a(i) * b(j);
  }
  return out;
}

}  // namespace detail

/// outer(inner(s)) through order min(K_outer, K_inner).
template <typename Scalar>
OddSeries<Scalar> compose(const OddSeries<Scalar>& outer, const OddSeries<Scalar>& inner) {
  using Vector = typename OddSeries<Scalar>::Vector;
  const int order = std::min(outer.max_order(), inner.max_order());
  const Vector in = inner.dense().head(order + 1);
  const Vector in2 = detail::truncated_product(in, in, order);
  Vector power = in;
  Vector out = Vector::Zero(order + 1);
  for (int k = 1; k <= order; k += 2) {
    out += outer.coeff(k) * power;
    power = detail::truncated_product(power, in2, order);
  }
  return OddSeries<Scalar>::from_dense(out);
}

/// Compositional inverse: returns b with c(b(s)) = s through max_order.
template <typename Scalar>
OddSeries<Scalar> revert_odd_series(const OddSeries<Scalar>& c) {
  using Vector = typename OddSeries<Scalar>::Vector;
  const Scalar c1 = c.coeff(1);
  if (c1 == Scalar(0)) throw std::invalid_argument("revert_odd_series: c_1 = 0 is not invertible");
  const Eigen::Index n = c.coeffs().size();
  Vector b = Vector::Zero(n);
  b(0) = Scalar(1) / c1;
  // With b_k unknown and all lower terms fixed, the t^k coefficient of
  // c(b(s)) is c_1 b_k + (terms already known).
  for (Eigen::Index i = 1; i < n; ++i) {
    const auto partial = compose(c, OddSeries<Scalar>(b));
    b(i) = -partial.coeffs()(i) / c1;
  }
  return OddSeries<Scalar>(std::move(b));
}

struct AlternationVerdict {
  bool alternating;
  std::optional<int> first_violation;
  std::vector<int> signs;  // -1, 0, +1 per odd order
};

/// Checks sign(b_{2k+1}) == (-1)^k. Coefficients within tau of zero count
/// as violations; tau defaults to 1e-12 * max|b_k|.
template <typename Scalar>
AlternationVerdict alternation_check(const OddSeries<Scalar>& b,
                                     std::optional<Scalar> tau = std::nullopt) {
  if (b.coeff(1) == Scalar(0)) throw std::invalid_argument("alternation_check: b_1 = 0");
  const Scalar zero_band = tau.value_or(Scalar(1e-12) * b.coeffs().cwiseAbs().maxCoeff());
  AlternationVerdict v{true, std::nullopt, {}};
  for (Eigen::Index i = 0; i < b.coeffs().size(); ++i) {
    const Scalar x = b.coeffs()(i);
    const int sign = std::abs(x) <= zero_band ? 0 : (x > 0 ? 1 : -1);
    v.signs.push_back(sign);
    const int expected = (i % 2 == 0) ? 1 : -1;
    if (sign != expected && !v.first_violation) {
      v.first_violation = static_cast<int>(2 * i + 1);
      v.alternating = false;
    }
  }
  return v;
}

/// 1/v: the bound on the Grothendieck constant that an alternating inverse
/// series would have produced.
double conditional_bound(double v);

inline constexpr int kMaxMehlerOrder = 15;

/// I_m(beta) = int He_m(x) exp(i beta (x^2 - 1)) phi(x) dx by quadrature.
std::complex<double> hermite_chirp_moment(unsigned m, double beta, double tol);

/// Taylor coefficients c_1 ... c_K of Phi(t) for the rotation family,
/// through the Mehler expansion of the correlated Gaussian density.
OddSeries<double> mehler_coefficients(const RotationFamily& family, int max_order, double tol);

}  // namespace sigcorr

#endif  // SIGCORR_SERIES_HPP
