#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "dpdo/geometry.hpp"
#include "dpdo/types.hpp"

namespace dpdo {

// Family of time-varying local costs f_t^i. Steps t are 1-based, nodes i are
// 0-based. theta bounds ||grad f_t^i|| over the constraint set; beta is the
// declared smoothness constant. Evaluation is pure and thread-safe.
class OnlineProblem {
 public:
  virtual ~OnlineProblem() = default;

  int nodes() const { return n_; }
  int dim() const { return d_; }
  int horizon() const { return horizon_; }
  double theta() const { return theta_; }
  double beta() const { return beta_; }

  virtual double cost(int t, int i, const Vec& x) const = 0;
  virtual Vec gradient(int t, int i, const Vec& x) const = 0;

 protected:
  OnlineProblem(int n, int d, int horizon) : n_(n), d_(d), horizon_(horizon) {}
  void check_args(int t, int i, const Vec& x) const;

  int n_, d_, horizon_;
  double theta_ = 0.0, beta_ = 0.0;
};

// One displacement of the moving target:
// x_{t+1} = x_t + [ (-1)^q sin(t/50)/(10t), -q cos(t/70)/(40t) ].
Vec evolve_target(const Vec& x, int t, int q);

// Frozen draw of the moving-target tracking instance: sensor positions, the
// target path, and noisy range measurements d_t^i = ||s_i - x_t|| + theta_t^i
// with theta ~ U[0, 0.001]. Deterministic in the seed; one Bernoulli coin per
// step drives the whole path.
struct LocalizationScenario {
  std::vector<Vec> sensors;   // N positions, d = 2
  std::vector<Vec> target;    // target[t-1] = x_t^0, t = 1..T
  Mat measurements;           // T x N
  std::vector<int> coin;      // q_t for t = 1..T-1
  std::uint64_t seed = 0;
};

LocalizationScenario make_localization_scenario(std::vector<Vec> sensors,
                                                int horizon, std::uint64_t seed,
                                                const ConstraintSet& domain,
                                                Vec initial_target = Vec());

std::vector<Vec> sensors_paper_layout(int n);   // all at (0.8, 0.95)
std::vector<Vec> sensors_spread_layout(int n);  // circle of radius 2

// f_t^i(x) = 1/2 (||s_i - x|| - d_t^i)^2; nonconvex in x. The gradient is
// undefined at x = s_i; within kSingularityRadius of a sensor it returns the
// zero vector and counts the event.
class LocalizationProblem : public OnlineProblem {
 public:
  static constexpr double kSingularityRadius = 1e-9;

  LocalizationProblem(LocalizationScenario scenario, const ConstraintSet& domain);

  double cost(int t, int i, const Vec& x) const override;
  Vec gradient(int t, int i, const Vec& x) const override;

  const LocalizationScenario& scenario() const { return scenario_; }

  // Adjacent copy: node i's measurement sequence replaced (everything else,
  // including the target path, untouched).
  LocalizationProblem with_replaced_measurements(int node,
                                                 const Vec& sequence,
                                                 const ConstraintSet& domain) const;

 private:
  void compute_constants(const ConstraintSet& domain);

  LocalizationScenario scenario_;
};

std::uint64_t localization_singularity_events();
void reset_localization_singularity_events();

// Convex control family for oracle tests: f_t^i(x) = 1/2 ||x - c_t^i||^2 with
// centers c_t^i = base_t + u_t^i, base uniform in [-1/2,1/2]^d and u uniform
// in [-1/5,1/5]^d. beta = 1 exactly.
class QuadraticProblem : public OnlineProblem {
 public:
  QuadraticProblem(int n, int d, int horizon, std::uint64_t seed,
                   const ConstraintSet& domain);

  double cost(int t, int i, const Vec& x) const override;
  Vec gradient(int t, int i, const Vec& x) const override;

  const Vec& center(int t, int i) const;

 private:
  std::vector<Vec> centers_;  // (t-1) * n + i
};

}  // namespace dpdo
