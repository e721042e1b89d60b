#include "dpdo/privacy.hpp"

#include <cmath>

namespace dpdo {

double sensitivity_bound(double alpha_t, double theta, double omega, int d) {
  if (alpha_t < 0.0) throw ParameterError("sensitivity: alpha must be >= 0");
  if (!(theta > 0.0)) throw ParameterError("sensitivity: theta must be positive");
  if (!(omega > 0.0)) throw ParameterError("sensitivity: omega must be positive");
  if (d < 1) throw ParameterError("sensitivity: d must be positive");
  return 2.0 * std::sqrt(static_cast<double>(d)) * alpha_t * theta / omega;
}

NoiseSchedule NoiseSchedule::disabled(double theta, double omega, int d,
                                      StepRule step) {
  NoiseSchedule s;
  s.theta_ = theta;
  s.omega_ = omega;
  s.d_ = d;
  s.step_ = step;
  return s;
}

NoiseSchedule::NoiseSchedule(double eps, double theta, double omega, int d,
                             StepRule step)
    : eps_(eps), theta_(theta), omega_(omega), d_(d), step_(step) {
  if (!(eps > 0.0)) throw ParameterError("noise schedule: eps must be positive");
  if (!(theta > 0.0)) throw ParameterError("noise schedule: theta must be positive");
  if (!(omega > 0.0)) throw ParameterError("noise schedule: omega must be positive");
  if (d < 1) throw ParameterError("noise schedule: d must be positive");
}

double NoiseSchedule::sensitivity(int t) const {
  return sensitivity_bound(step_.alpha(t), theta_, omega_, d_);
}

double NoiseSchedule::sigma(int t) const {
  if (!eps_) return 0.0;
  return sensitivity(t) / *eps_;
}

void PrivacyAccountant::update(double delta_t, double sigma_t) {
  if (!(sigma_t > 0.0)) {
    throw ParameterError("accountant: sigma must be positive");
  }
  const double loss = delta_t / sigma_t;
  per_step_.push_back(loss);
  cumulative_ += loss;
}

Vec sample_laplace(double sigma, int d, std::uint64_t seed, std::uint64_t run,
                   std::uint64_t node, std::uint64_t t) {
  if (!(sigma > 0.0)) throw ParameterError("sample_laplace: sigma must be positive");
  RandomStream stream(seed, run, node, t, StreamPurpose::kLaplace);
  return stream.laplace_vector(sigma, d);
}

}  // namespace dpdo
