#pragma once

#include <string>

#include "dpdo/types.hpp"

namespace dpdo {

// Compact convex constraint set with the oracles the mirror descent loop and
// the regret evaluation need: membership, exact Euclidean projection, exact
// linear minimization, and the Euclidean diameter. All operations are pure.
class ConstraintSet {
 public:
  enum class Kind { kBox, kL1Ball, kL2Ball, kSimplex };

  static ConstraintSet box(Vec lower, Vec upper);
  static ConstraintSet l1_ball(double radius, int dim);
  static ConstraintSet l2_ball(double radius, Vec center);
  static ConstraintSet simplex(int dim);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }

  // Membership within absolute tolerance 1e-9.
  bool contains(const Vec& x, double tol = 1e-9) const;

  // argmin_{x in set} ||x - y||^2. Exact: coordinate clamp for boxes, sorted
  // thresholding for the simplex and the l1 ball, radial scaling for l2.
  Vec project(const Vec& y) const;

  struct LinearMin {
    Vec point;
    double value;
  };

  // argmin_{x in set} <g, x> and the attained value. Ties are broken toward
  // the lowest coordinate index; g = 0 on an l2 ball returns the center.
  LinearMin linear_minimizer(const Vec& g) const;

  // Exact Euclidean diameter.
  double diameter() const;

  // max_{x in set} ||p - x||; used for analytic gradient bounds.
  double support_distance(const Vec& p) const;

  const Vec& lower() const { return lower_; }
  const Vec& upper() const { return upper_; }
  double radius() const { return radius_; }
  const Vec& center() const { return center_; }

 private:
  ConstraintSet() = default;
  void check_dim(const Vec& x, const char* op) const;

  Kind kind_ = Kind::kBox;
  int dim_ = 0;
  Vec lower_, upper_;   // box
  double radius_ = 0.0; // balls
  Vec center_;          // l2 ball
};

std::string to_string(ConstraintSet::Kind kind);

}  // namespace dpdo
