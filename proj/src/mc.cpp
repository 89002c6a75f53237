#include "sigcorr/mc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "sigcorr/specfun.hpp"

namespace sigcorr {

namespace {

double sign(double x) { return static_cast<double>((x > 0.0) - (x < 0.0)); }

// Running mean and centred sum of squares for one batch.
struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double n = static_cast<double>(count + o.count);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.count) / n;
    m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) / n;
    count += o.count;
  }
};

// Runs `draw(stream, out_value)` once per sample, batch by batch.
template <typename Draw>
McEstimate run_batches(std::uint64_t samples, std::uint64_t seed, const McOptions& opts,
                       const Draw& draw) {
  if (samples < 1) throw std::invalid_argument("Monte Carlo needs at least one sample");
  const std::uint64_t batches = (samples + kBatchSize - 1) / kBatchSize;
  std::vector<Moments> partial(batches);

  auto work = [&](std::uint64_t first, std::uint64_t stride) {
    for (std::uint64_t b = first; b < batches; b += stride) {
      NormalStream stream(batch_state(seed, b));
      const std::uint64_t begin = b * kBatchSize;
      const std::uint64_t count = std::min(kBatchSize, samples - begin);
      Moments m;
      for (std::uint64_t s = 0; s < count; ++s) m.push(draw(stream));
      partial[b] = m;
    }
  };

  const unsigned threads =
      static_cast<unsigned>(std::clamp<std::uint64_t>(opts.threads, 1, batches));
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w, threads);
    for (auto& th : pool) th.join();
  }

  Moments total;
  for (const auto& m : partial) total.merge(m);
  const double n = static_cast<double>(total.count);
  const double variance = total.count > 1 ? total.m2 / (n - 1.0) : 0.0;
  return {total.mean, std::sqrt(variance / n), samples, seed};
}

}  // namespace

double NormalStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = rng_.uniform();
  const double u2 = rng_.uniform();
  const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(angle);
  has_spare_ = true;
  return r * std::cos(angle);
}

std::uint64_t batch_state(std::uint64_t seed, std::uint64_t batch) {
  // (batch+1)-th output of SplitMix64(seed) without stepping through the
  // earlier ones.
  SplitMix64 jump(seed + batch * 0x9E3779B97F4A7C15ULL);
  return jump.next();
}

const char* to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::Identity1: return "identity1";
    case FamilyKind::Rotation3: return "rotation3";
    case FamilyKind::Hermite5: return "hermite5";
  }
  return "unknown";
}

FamilyKind parse_family_kind(std::string_view name) {
  if (name == "identity1") return FamilyKind::Identity1;
  if (name == "rotation3") return FamilyKind::Rotation3;
  if (name == "hermite5") return FamilyKind::Hermite5;
  throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

Family identity1() {
  auto id = [](const Eigen::VectorXd& x) { return x(0); };
  return {FamilyKind::Identity1, 1, 0.0, id, id};
}

Family rotation3(double eta) {
  if (!std::isfinite(eta)) throw std::invalid_argument("rotation3: eta must be finite");
  const double eps = eta / 2.0;
  auto f = [eps](const Eigen::VectorXd& x) {
    const double angle = eps * hermite_prob(2, x(0));
    return x(1) * std::cos(angle) + x(2) * std::sin(angle);
  };
  auto g = [eps](const Eigen::VectorXd& y) {
    const double angle = eps * hermite_prob(2, y(0));
    return y(1) * std::cos(angle) - y(2) * std::sin(angle);
  };
  return {FamilyKind::Rotation3, 3, eta, f, g};
}

Family hermite5(double epsilon) {
  if (!std::isfinite(epsilon)) throw std::invalid_argument("hermite5: epsilon must be finite");
  auto f = [epsilon](const Eigen::VectorXd& x) { return x(0) + epsilon * hermite_prob(5, x(1)); };
  return {FamilyKind::Hermite5, 2, epsilon, f, f};
}

Family negate_f(Family family) {
  family.f = [inner = family.f](const Eigen::VectorXd& x) { return -inner(x); };
  return family;
}

McEstimate estimate_phi_t(const Family& family, double t, std::uint64_t samples,
                          std::uint64_t seed, const McOptions& opts) {
  if (!(std::abs(t) <= 1.0)) throw std::invalid_argument("estimate_phi_t: need |t| <= 1");
  const int n = family.dimension;
  const double s = std::sqrt(1.0 - t * t);
  auto draw = [&, n](NormalStream& stream) {
    thread_local Eigen::VectorXd x, y;
    x.resize(n);
    y.resize(n);
    for (int k = 0; k < n; ++k) x(k) = stream.next();
    for (int k = 0; k < n; ++k) y(k) = t * x(k) + s * stream.next();
    return sign(family.f(x)) * sign(family.g(y));
  };
  return run_batches(samples, seed, opts, draw);
}

McEstimate estimate_phi_i(const Family& family, std::uint64_t samples, std::uint64_t seed,
                          const McOptions& opts) {
  const int n = family.dimension;
  // N(0, 2) coordinates; 2^{n/2} converts the (4 pi)^{-n} density into the
  // (2 pi sqrt 2)^{-n} prefactor.
  const double weight = std::pow(2.0, n / 2.0);
  auto draw = [&, n, weight](NormalStream& stream) {
    thread_local Eigen::VectorXd xi, zeta;
    xi.resize(n);
    zeta.resize(n);
    for (int k = 0; k < n; ++k) xi(k) = std::numbers::sqrt2 * stream.next();
    for (int k = 0; k < n; ++k) zeta(k) = std::numbers::sqrt2 * stream.next();
    return weight * sign(family.f(xi)) * sign(family.g(zeta)) * std::sin(xi.dot(zeta) / 2.0);
  };
  return run_batches(samples, seed, opts, draw);
}

std::vector<std::pair<double, McEstimate>> sweep_hermite5(const std::vector<double>& epsilons,
                                                          std::uint64_t samples,
                                                          std::uint64_t seed,
                                                          const McOptions& opts) {
  std::vector<std::pair<double, McEstimate>> out;
  out.reserve(epsilons.size());
  for (double eps : epsilons) {
    if (!(eps >= 0.0)) throw std::invalid_argument("sweep_hermite5: epsilon must be >= 0");
    out.emplace_back(eps, estimate_phi_i(hermite5(eps), samples, seed, opts));
  }
  return out;
}

}  // namespace sigcorr
