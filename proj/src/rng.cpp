#include "doe/rng.hpp"

#include <cmath>

namespace doe {

double Rng::next_gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Marsaglia polar: draw (u, v) uniform on (-1,1)^2 until inside the unit
  // disk, then scale. Produces two variates; one is cached.
  double u, v, s;
  do {
    u = 2.0 * next_unit() - 1.0;
    v = 2.0 * next_unit() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  has_spare_ = true;
  return u * factor;
}

std::uint64_t Rng::next_below(std::uint64_t bound) {
  // Rejection below 2^64 mod bound keeps the result exactly uniform.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t raw = next_u64();
    if (raw >= threshold) return raw % bound;
  }
}

}  // namespace doe
