#pragma once

#include <cstdint>

#include "dpdo/types.hpp"

namespace dpdo {

// Counter-based random streams. A stream is fully determined by the key
// (seed, run, node, t, purpose), so draws do not depend on scheduling or
// execution order. Monte Carlo runs fanned out over any number of worker
// threads therefore produce identical results.
enum class StreamPurpose : std::uint64_t {
  kLaplace = 1,
  kMeasurement = 2,
  kBernoulli = 3,
  kGeneric = 4,
};

class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t run, std::uint64_t node,
               std::uint64_t t, StreamPurpose purpose);

  // Uniform on the open interval (0,1); never returns 0 or 1.
  double uniform01();

  // Uniform on [lo, hi).
  double uniform(double lo, double hi);

  // Laplace(0, scale). scale = 0 returns 0 so "noise off" shares the code path.
  double laplace(double scale);

  Vec laplace_vector(double scale, int dim);

  // Standard normal via Box-Muller.
  double normal();

  // Bernoulli(1/2) draw in {0,1}.
  int bernoulli_half();

 private:
  std::uint64_t state_;
};

}  // namespace dpdo
