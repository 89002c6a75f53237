#ifndef SIGCORR_MC_HPP
#define SIGCORR_MC_HPP

// Seeded Monte Carlo estimators of Phi(t) and Phi(i)/i for arbitrary odd
// F, G : R^n -> R.
//
// Random stream contract (reproducible in any language):
//   * SplitMix64: state += 0x9E3779B97F4A7C15; z = state;
//       z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
//       z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
//       return z ^ (z >> 31).
//   * Samples are processed in batches of kBatchSize. Batch b uses a fresh
//     SplitMix64 whose state is the (b+1)-th output of SplitMix64(seed).
//   * Uniform u = (x >> 11) * 2^-53 in [0, 1).
//   * Box-Muller on a pair (u1, u2): r = sqrt(-2 ln(1 - u1)),
//     z0 = r cos(2 pi u2), z1 = r sin(2 pi u2); z0 is returned first.
//   * Per sample the estimator draws X_0..X_{n-1} then Z_0..Z_{n-1}
//     (Phi(t)), or xi_0..xi_{n-1} then zeta_0..zeta_{n-1} (Phi(i)/i).
//     A pending Box-Muller partner carries over to the next draw.
// Batch partial sums are merged in batch order, so the result does not
// depend on the worker count.

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sigcorr {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

class NormalStream {
 public:
  explicit NormalStream(std::uint64_t state) : rng_(state) {}
  double next();

 private:
  SplitMix64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline constexpr std::uint64_t kBatchSize = 1ULL << 16;

/// State of the generator used for batch `batch` under `seed`.
std::uint64_t batch_state(std::uint64_t seed, std::uint64_t batch);

enum class FamilyKind { Identity1, Rotation3, Hermite5 };

const char* to_string(FamilyKind k);
/// Parses "identity1", "rotation3" or "hermite5"; throws std::invalid_argument.
FamilyKind parse_family_kind(std::string_view name);

struct Family {
  using Map = std::function<double(const Eigen::VectorXd&)>;
  FamilyKind kind;
  int dimension;
  double param;  // eta for rotation3, epsilon for hermite5
  Map f;
  Map g;
};

/// F = G = x_0 on R^1.
Family identity1();
/// The rotation family on R^3 with angle (eta/2) He_2(x_0).
Family rotation3(double eta);
/// F = G = x_0 + epsilon He_5(x_1) on R^2.
Family hermite5(double epsilon);
/// Same family with F replaced by -F.
Family negate_f(Family family);

struct McEstimate {
  double mean;
  double std_error;  // sample standard deviation / sqrt(samples)
  std::uint64_t samples;
  std::uint64_t seed;
};

struct McOptions {
  unsigned threads = 1;
};

McEstimate estimate_phi_t(const Family& family, double t, std::uint64_t samples,
                          std::uint64_t seed, const McOptions& opts = {});
McEstimate estimate_phi_i(const Family& family, std::uint64_t samples, std::uint64_t seed,
                          const McOptions& opts = {});
std::vector<std::pair<double, McEstimate>> sweep_hermite5(const std::vector<double>& epsilons,
                                                          std::uint64_t samples,
                                                          std::uint64_t seed,
                                                          const McOptions& opts = {});

}  // namespace sigcorr

#endif  // SIGCORR_MC_HPP
