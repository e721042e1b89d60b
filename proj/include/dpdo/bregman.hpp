#pragma once

#include "dpdo/geometry.hpp"
#include "dpdo/rng.hpp"
#include "dpdo/types.hpp"

namespace dpdo {

struct Assumption4Report {
  int samples = 0;
  double worst_jensen_violation = 0.0;  // positive means the convexity-in-y check failed
  double smallest_M = 0.0;              // smallest smoothness constant passing all samples
  double declared_M = 0.0;
  bool passed = false;
};

// Bregman generator phi together with its strong-convexity modulus omega and
// the smoothness constant M of D_phi(x, .). Three generators are supported:
//   squared_euclidean  phi = 1/2 ||x||^2        omega = 1, M = 1
//   mahalanobis(Q)     phi = x^T Q x, Q SPD     omega = 2 lambda_min(Q), M = 2 lambda_max(Q)
//   neg_entropy        phi = sum x_k log x_k    omega = 1 on the simplex (Pinsker)
class BregmanGeometry {
 public:
  enum class Kind { kSquaredEuclidean, kMahalanobis, kNegEntropy };

  // Consensus points can leave the entropy domain once Laplace noise is in
  // the loop; coordinates are clamped to this floor before an entropy step.
  static constexpr double kNegEntropyFloor = 1e-12;

  static BregmanGeometry squared_euclidean();
  static BregmanGeometry mahalanobis(Mat Q);
  static BregmanGeometry neg_entropy();

  Kind kind() const { return kind_; }
  double omega() const { return omega_; }
  double smoothness() const { return M_; }
  const Mat& Q() const { return Q_; }

  double phi(const Vec& x) const;
  Vec grad_phi(const Vec& x) const;

  // D_phi(x, y) = phi(x) - phi(y) - <grad phi(y), x - y>, evaluated in closed
  // form per kind. neg_entropy requires strictly positive coordinates.
  double divergence(const Vec& x, const Vec& y) const;

  // Gradient of D_phi(x, y) in its second argument.
  Vec grad_y_divergence(const Vec& x, const Vec& y) const;

  // argmin_{x in set} { D_phi(x, z) + <alpha g, x> }. z may lie outside the
  // set. squared_euclidean and neg_entropy-on-simplex use closed forms;
  // everything else runs the projected-gradient inner solver.
  Vec mirror_step(const ConstraintSet& set, const Vec& z, const Vec& g,
                  double alpha) const;

  // The inner solver on its own, usable as an independent oracle against the
  // closed forms. Projected gradient descent with fixed step 1/L for
  // quadratic generators and Armijo backtracking for neg_entropy; stops at
  // gradient-mapping norm <= 1e-12 or 1e5 iterations (then throws
  // NumericError carrying the residual).
  Vec mirror_step_numeric(const ConstraintSet& set, const Vec& z, const Vec& g,
                          double alpha) const;

  // Sample-based check of the two Assumption-4 conditions (convexity in y,
  // M-smoothness in y) over random draws from the set.
  Assumption4Report verify_assumption4(const ConstraintSet& set, int samples,
                                       std::uint64_t seed = 0) const;

  // Upper bound on the Hessian of phi over the relevant domain; the inner
  // solver's step is 1/L.
  double hessian_bound() const;

 private:
  BregmanGeometry() = default;

  Kind kind_ = Kind::kSquaredEuclidean;
  double omega_ = 1.0;
  double M_ = 1.0;
  Mat Q_;  // mahalanobis only
};

// Uniform-ish random point inside a constraint set; used by the sample-based
// verification routines.
Vec random_point(const ConstraintSet& set, RandomStream& stream);

std::string to_string(BregmanGeometry::Kind kind);

}  // namespace dpdo
