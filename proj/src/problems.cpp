#include "dpdo/problems.hpp"

#include <atomic>
#include <cmath>

#include "dpdo/rng.hpp"

namespace dpdo {

namespace {
std::atomic<std::uint64_t> g_singularity_events{0};
}

std::uint64_t localization_singularity_events() {
  return g_singularity_events.load();
}

void reset_localization_singularity_events() { g_singularity_events.store(0); }

void OnlineProblem::check_args(int t, int i, const Vec& x) const {
  if (t < 1 || t > horizon_) {
    throw ParameterError("problem: t out of range [1," +
                         std::to_string(horizon_) + "]");
  }
  if (i < 0 || i >= n_) throw ParameterError("problem: node out of range");
  if (static_cast<int>(x.size()) != d_) {
    throw ParameterError("problem: point has wrong dimension");
  }
}

Vec evolve_target(const Vec& x, int t, int q) {
  if (t < 1) throw ParameterError("evolve_target: t must be >= 1");
  if (q != 0 && q != 1) throw ParameterError("evolve_target: q must be 0 or 1");
  if (x.size() != 2) throw ParameterError("evolve_target: target is planar");
  const double td = static_cast<double>(t);
  Vec out = x;
  out[0] += (q ? -1.0 : 1.0) * std::sin(td / 50.0) / (10.0 * td);
  out[1] += -q * std::cos(td / 70.0) / (40.0 * td);
  return out;
}

std::vector<Vec> sensors_paper_layout(int n) {
  std::vector<Vec> s(n, Vec(2));
  for (auto& v : s) v << 0.8, 0.95;
  return s;
}

std::vector<Vec> sensors_spread_layout(int n) {
  std::vector<Vec> s(n, Vec(2));
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * M_PI * k / n;
    s[k] << 2.0 * std::cos(angle), 2.0 * std::sin(angle);
  }
  return s;
}

LocalizationScenario make_localization_scenario(std::vector<Vec> sensors,
                                                int horizon, std::uint64_t seed,
                                                const ConstraintSet& domain,
                                                Vec initial_target) {
  if (sensors.empty()) throw ParameterError("scenario: needs >= 1 sensor");
  if (horizon < 1) throw ParameterError("scenario: horizon must be >= 1");
  if (domain.dim() != 2) throw ParameterError("scenario: domain must be planar");
  if (initial_target.size() == 0) {
    initial_target = Vec(2);
    initial_target << 0.8, 0.95;
  }
  const int n = static_cast<int>(sensors.size());

  LocalizationScenario sc;
  sc.sensors = std::move(sensors);
  sc.seed = seed;
  sc.target.reserve(horizon);
  sc.target.push_back(initial_target);
  for (int t = 1; t < horizon; ++t) {
    RandomStream coin(seed, 0, 0, t, StreamPurpose::kBernoulli);
    const int q = coin.bernoulli_half();
    sc.coin.push_back(q);
    sc.target.push_back(evolve_target(sc.target.back(), t, q));
  }
  for (int t = 0; t < horizon; ++t) {
    if (!domain.contains(sc.target[t])) {
      throw ParameterError("scenario: target left the constraint set at t=" +
                           std::to_string(t + 1));
    }
  }

  sc.measurements = Mat(horizon, n);
  for (int t = 1; t <= horizon; ++t) {
    for (int i = 0; i < n; ++i) {
      RandomStream meas(seed, 0, static_cast<std::uint64_t>(i), t,
                        StreamPurpose::kMeasurement);
      sc.measurements(t - 1, i) =
          (sc.sensors[i] - sc.target[t - 1]).norm() + meas.uniform(0.0, 0.001);
    }
  }
  return sc;
}

LocalizationProblem::LocalizationProblem(LocalizationScenario scenario,
                                         const ConstraintSet& domain)
    : OnlineProblem(static_cast<int>(scenario.sensors.size()), 2,
                    static_cast<int>(scenario.target.size())),
      scenario_(std::move(scenario)) {
  compute_constants(domain);
}

void LocalizationProblem::compute_constants(const ConstraintSet& domain) {
  // ||grad f_t^i(x)|| = | ||s_i - x|| - d_t^i |, bounded by the larger of the
  // worst in-set distance and the largest measurement.
  double theta = 0.0;
  double d_max = 0.0;
  for (int i = 0; i < n_; ++i) {
    theta = std::max(theta, domain.support_distance(scenario_.sensors[i]));
  }
  d_max = scenario_.measurements.maxCoeff();
  theta_ = std::max(theta, d_max);
  // Hessian norm away from the sensors is at most 1 + d/r; declared on the
  // set minus 1e-3 balls around each sensor.
  beta_ = 1.0 + d_max / 1e-3;
}

double LocalizationProblem::cost(int t, int i, const Vec& x) const {
  check_args(t, i, x);
  const double gap =
      (scenario_.sensors[i] - x).norm() - scenario_.measurements(t - 1, i);
  return 0.5 * gap * gap;
}

Vec LocalizationProblem::gradient(int t, int i, const Vec& x) const {
  check_args(t, i, x);
  const Vec diff = x - scenario_.sensors[i];
  const double dist = diff.norm();
  if (dist < kSingularityRadius) {
    // Zero is the Clarke-minimal choice at the sensor location.
    g_singularity_events.fetch_add(1);
    return Vec::Zero(d_);
  }
  return (1.0 - scenario_.measurements(t - 1, i) / dist) * diff;
}

LocalizationProblem LocalizationProblem::with_replaced_measurements(
    int node, const Vec& sequence, const ConstraintSet& domain) const {
  if (node < 0 || node >= n_) throw ParameterError("adjacent copy: bad node");
  if (static_cast<int>(sequence.size()) != horizon_) {
    throw ParameterError("adjacent copy: sequence length must equal horizon");
  }
  if (sequence.minCoeff() < 0.0) {
    throw ParameterError("adjacent copy: measurements must be nonnegative");
  }
  LocalizationScenario sc = scenario_;
  sc.measurements.col(node) = sequence;
  return LocalizationProblem(std::move(sc), domain);
}

QuadraticProblem::QuadraticProblem(int n, int d, int horizon,
                                   std::uint64_t seed,
                                   const ConstraintSet& domain)
    : OnlineProblem(n, d, horizon) {
  if (n < 1 || d < 1 || horizon < 1) {
    throw ParameterError("quadratic problem: parameters must be positive");
  }
  if (domain.dim() != d) throw ParameterError("quadratic problem: domain dim");
  centers_.reserve(static_cast<std::size_t>(n) * horizon);
  double theta = 0.0;
  for (int t = 1; t <= horizon; ++t) {
    RandomStream base_stream(seed, 0, 0, t, StreamPurpose::kGeneric);
    Vec base(d);
    for (int k = 0; k < d; ++k) base[k] = base_stream.uniform(-0.5, 0.5);
    for (int i = 0; i < n; ++i) {
      RandomStream node_stream(seed, 1, static_cast<std::uint64_t>(i), t,
                               StreamPurpose::kGeneric);
      Vec c = base;
      for (int k = 0; k < d; ++k) c[k] += node_stream.uniform(-0.2, 0.2);
      theta = std::max(theta, domain.support_distance(c));
      centers_.push_back(std::move(c));
    }
  }
  theta_ = theta;  // exact: sup_x ||x - c|| maximized over all centers
  beta_ = 1.0;     // identity Hessian
}

const Vec& QuadraticProblem::center(int t, int i) const {
  if (t < 1 || t > horizon_ || i < 0 || i >= n_) {
    throw ParameterError("quadratic problem: center index out of range");
  }
  return centers_[static_cast<std::size_t>(t - 1) * n_ + i];
}

double QuadraticProblem::cost(int t, int i, const Vec& x) const {
  check_args(t, i, x);
  return 0.5 * (x - center(t, i)).squaredNorm();
}

Vec QuadraticProblem::gradient(int t, int i, const Vec& x) const {
  check_args(t, i, x);
  return x - center(t, i);
}

}  // namespace dpdo
