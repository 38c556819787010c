#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace doe {

// The toolkit's single deterministic random source. Every randomized
// operation (run-order shuffling, noise simulation) draws from this class so
// that any artifact is reproducible from config + seed alone.
//
// Engine: std::mt19937_64, whose output sequence is fixed by the C++
// standard and therefore identical on every platform. The transforms on top
// of it are implemented here rather than taken from <random> distributions,
// whose algorithms are implementation-defined:
//   - uniform doubles in [0,1): top 53 bits of a draw, scaled by 2^-53
//   - Gaussian variates: Marsaglia polar method (pairs generated, one cached)
//   - bounded integers: rejection sampling, no modulo bias
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal variate via the Marsaglia polar method.
  double next_gaussian();

  // Uniform integer in [0, bound); bound must be nonzero.
  std::uint64_t next_below(std::uint64_t bound);

  // In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace doe
