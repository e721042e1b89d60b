#include "dpdo/rng.hpp"

#include <cmath>

namespace dpdo {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer (Steele, Lea, Flood 2014). Bijective with full
// avalanche; chaining it over the key fields separates the streams.
std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t absorb(std::uint64_t state, std::uint64_t word) {
  return mix(state ^ (word + kGolden));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t run,
                           std::uint64_t node, std::uint64_t t,
                           StreamPurpose purpose) {
  std::uint64_t s = mix(seed + kGolden);
  s = absorb(s, static_cast<std::uint64_t>(purpose));
  s = absorb(s, run);
  s = absorb(s, node);
  s = absorb(s, t);
  state_ = s;
}

double RandomStream::uniform01() {
  state_ += kGolden;
  const std::uint64_t x = mix(state_);
  // 53-bit mantissa, shifted to the cell midpoint so 0 and 1 are unreachable.
  return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

double RandomStream::laplace(double scale) {
  if (scale < 0.0) throw ParameterError("laplace: scale must be >= 0");
  const double u = uniform01() - 0.5;  // (-1/2, 1/2)
  if (scale == 0.0) return 0.0;
  const double sign = (u < 0.0) ? -1.0 : 1.0;
  return -scale * sign * std::log(1.0 - 2.0 * std::abs(u));
}

Vec RandomStream::laplace_vector(double scale, int dim) {
  if (dim <= 0) throw ParameterError("laplace_vector: dim must be positive");
  Vec out(dim);
  for (int k = 0; k < dim; ++k) out[k] = laplace(scale);
  return out;
}

double RandomStream::normal() {
  const double u1 = uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
}

int RandomStream::bernoulli_half() { return uniform01() < 0.5 ? 1 : 0; }

}  // namespace dpdo
