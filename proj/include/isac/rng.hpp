#ifndef ISAC_RNG_HPP
#define ISAC_RNG_HPP

#include <cstdint>
#include <random>

namespace isac {

// Seeded generator with a platform-independent normal sampler.
// std::mt19937_64 output is fixed by the standard; std::normal_distribution
// is not, so Gaussian draws are produced here with Box-Muller.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal draw. Pairs are generated together; the second value
  /// is cached for the next call.
  double normal();

  /// N(0, sigma^2) draw; sigma == 0 still consumes a draw so that the
  /// stream layout does not depend on the noise settings.
  double normal(double sigma) { return sigma * normal(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace isac

#endif  // ISAC_RNG_HPP
