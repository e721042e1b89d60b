#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dpdo/rng.hpp"
#include "dpdo/types.hpp"

namespace dpdo {

// Step size alpha_t = c / sqrt(t); the default coefficient is 1/N.
struct StepRule {
  double coefficient = 1.0;

  double alpha(int t) const {
    if (t < 1) throw ParameterError("step rule: t must be >= 1");
    return coefficient / std::sqrt(static_cast<double>(t));
  }
};

// Worst-case l1 sensitivity bound 2 sqrt(d) alpha_t theta / omega. alpha = 0
// is accepted as the degenerate limit and yields 0.
double sensitivity_bound(double alpha_t, double theta, double omega, int d);

// Per-step Laplace scale sigma_t = Delta(t) / eps = 2 sqrt(d) alpha_t theta /
// (omega eps). A disabled schedule keeps sigma_t = 0 so the noise-free
// baseline shares the execution path.
class NoiseSchedule {
 public:
  static NoiseSchedule disabled(double theta, double omega, int d, StepRule step);
  NoiseSchedule(double eps, double theta, double omega, int d, StepRule step);

  bool enabled() const { return eps_.has_value(); }
  std::optional<double> epsilon() const { return eps_; }
  double theta() const { return theta_; }
  double omega() const { return omega_; }
  int dim() const { return d_; }
  const StepRule& step() const { return step_; }

  double sigma(int t) const;
  double sensitivity(int t) const;

 private:
  NoiseSchedule() = default;
  std::optional<double> eps_;
  double theta_ = 0.0;
  double omega_ = 1.0;
  int d_ = 0;
  StepRule step_;
};

// Running privacy-loss sum eps_hat = sum_t Delta(t) / sigma_t. Single-owner
// per run. Uses the analytic sensitivity bound, never a measured value.
class PrivacyAccountant {
 public:
  void update(double delta_t, double sigma_t);

  const std::vector<double>& per_step() const { return per_step_; }
  double cumulative() const { return cumulative_; }
  int steps() const { return static_cast<int>(per_step_.size()); }

 private:
  std::vector<double> per_step_;
  double cumulative_ = 0.0;
};

// d iid Laplace(0, sigma) coordinates from the (seed, run, node, t) stream.
Vec sample_laplace(double sigma, int d, std::uint64_t seed, std::uint64_t run,
                   std::uint64_t node, std::uint64_t t);

}  // namespace dpdo
