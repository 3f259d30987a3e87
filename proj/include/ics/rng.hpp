#ifndef ICS_RNG_HPP
#define ICS_RNG_HPP

#include <cmath>
#include <cstdint>

namespace ics {

/// Counter-based 64-bit generator with splittable streams.
///
/// Output i of stream (seed, stream) is mix64(key + i * GAMMA) where
/// mix64 is the splitmix64 finalizer and key = mix64(seed ^ mix64(stream)).
/// There is no hidden state beyond the counter, so any (seed, stream,
/// position) triple yields the same value on every platform, and distinct
/// streams are statistically independent.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix64(seed ^ mix64(stream ^ 0x9e3779b97f4a7c15ull))) {}

  static std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t next_u64() { return mix64(key_ + ++counter_ * kGamma); }

  /// Uniform on [0, 1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1), both endpoints excluded; safe under log().
  double next_open_double() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; pairs are cached.
  double next_normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = next_open_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * kPi * u2;
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
  }

  /// Student t with 5 degrees of freedom, scaled to unit variance.
  double next_student_t5_unit() {
    const double z = next_normal();
    double chi2 = 0.0;
    for (int i = 0; i < 5; ++i) {
      const double g = next_normal();
      chi2 += g * g;
    }
    const double t = z / std::sqrt(chi2 / 5.0);
    return t / std::sqrt(5.0 / 3.0);  // Var(t_5) = 5/3
  }

  /// Uniform on [-sqrt(3), sqrt(3)]: mean 0, variance 1.
  double next_uniform_unit() {
    return (2.0 * next_double() - 1.0) * kSqrt3;
  }

  /// Laplace with scale 1/sqrt(2): mean 0, variance 1.
  double next_laplace_unit() {
    const double u = next_open_double();
    const double b = 1.0 / kSqrt2;
    return (u < 0.5) ? b * std::log(2.0 * u) : -b * std::log(2.0 * (1.0 - u));
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;
  static constexpr double kPi = 3.14159265358979323846;
  static constexpr double kSqrt3 = 1.7320508075688772;
  static constexpr double kSqrt2 = 1.4142135623730951;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

/// Stream identifiers, one per generator purpose.
namespace rng_stream {
inline constexpr std::uint64_t kMixtureLabels = 1;
inline constexpr std::uint64_t kMixtureNoise = 2;
inline constexpr std::uint64_t kBenchData = 3;
inline constexpr std::uint64_t kIcaSourceBase = 100;  // + source row
}  // namespace rng_stream

}  // namespace ics

#endif  // ICS_RNG_HPP
