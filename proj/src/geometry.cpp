#include "dpdo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace dpdo {
namespace {

// Threshold tau such that sum_k max(v_k - tau, 0) = mass, for v with
// sum(v) > mass > 0. Sort-based, exact in O(d log d) (Held/Michelot form).
double simplex_threshold(const Vec& v, double mass) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumulative = 0.0;
  double tau = 0.0;
  int support = 0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cumulative += u[k];
    const double candidate = (cumulative - mass) / static_cast<double>(k + 1);
    if (u[k] - candidate > 0.0) {
      tau = candidate;
      support = static_cast<int>(k + 1);
    }
  }
  (void)support;
  return tau;
}

}  // namespace

ConstraintSet ConstraintSet::box(Vec lower, Vec upper) {
  if (lower.size() != upper.size() || lower.size() == 0) {
    throw ParameterError("box: lower/upper dimension mismatch");
  }
  for (int k = 0; k < lower.size(); ++k) {
    if (!(lower[k] <= upper[k])) throw ParameterError("box: lower > upper");
  }
  ConstraintSet s;
  s.kind_ = Kind::kBox;
  s.dim_ = static_cast<int>(lower.size());
  s.lower_ = std::move(lower);
  s.upper_ = std::move(upper);
  return s;
}

ConstraintSet ConstraintSet::l1_ball(double radius, int dim) {
  if (radius <= 0.0) throw ParameterError("l1_ball: radius must be positive");
  if (dim <= 0) throw ParameterError("l1_ball: dim must be positive");
  ConstraintSet s;
  s.kind_ = Kind::kL1Ball;
  s.dim_ = dim;
  s.radius_ = radius;
  return s;
}

ConstraintSet ConstraintSet::l2_ball(double radius, Vec center) {
  if (radius <= 0.0) throw ParameterError("l2_ball: radius must be positive");
  if (center.size() == 0) throw ParameterError("l2_ball: empty center");
  ConstraintSet s;
  s.kind_ = Kind::kL2Ball;
  s.dim_ = static_cast<int>(center.size());
  s.radius_ = radius;
  s.center_ = std::move(center);
  return s;
}

ConstraintSet ConstraintSet::simplex(int dim) {
  if (dim <= 0) throw ParameterError("simplex: dim must be positive");
  ConstraintSet s;
  s.kind_ = Kind::kSimplex;
  s.dim_ = dim;
  return s;
}

void ConstraintSet::check_dim(const Vec& x, const char* op) const {
  if (static_cast<int>(x.size()) != dim_) {
    throw ParameterError(std::string(op) + ": expected dimension " +
                         std::to_string(dim_) + ", got " +
                         std::to_string(x.size()));
  }
}

bool ConstraintSet::contains(const Vec& x, double tol) const {
  check_dim(x, "contains");
  switch (kind_) {
    case Kind::kBox:
      for (int k = 0; k < dim_; ++k) {
        if (x[k] < lower_[k] - tol || x[k] > upper_[k] + tol) return false;
      }
      return true;
    case Kind::kL1Ball:
      return x.lpNorm<1>() <= radius_ + tol;
    case Kind::kL2Ball:
      return (x - center_).norm() <= radius_ + tol;
    case Kind::kSimplex:
      if (x.minCoeff() < -tol) return false;
      return std::abs(x.sum() - 1.0) <= tol;
  }
  return false;
}

Vec ConstraintSet::project(const Vec& y) const {
  check_dim(y, "project");
  switch (kind_) {
    case Kind::kBox:
      return y.cwiseMax(lower_).cwiseMin(upper_);
    case Kind::kL1Ball: {
      if (y.lpNorm<1>() <= radius_) return y;
      const double tau = simplex_threshold(y.cwiseAbs(), radius_);
      Vec out(dim_);
      for (int k = 0; k < dim_; ++k) {
        const double mag = std::max(std::abs(y[k]) - tau, 0.0);
        out[k] = (y[k] < 0.0) ? -mag : mag;
      }
      return out;
    }
    case Kind::kL2Ball: {
      const Vec delta = y - center_;
      const double norm = delta.norm();
      if (norm <= radius_) return y;
      return center_ + delta * (radius_ / norm);
    }
    case Kind::kSimplex: {
      const double tau = simplex_threshold(y, 1.0);
      return (y.array() - tau).max(0.0).matrix();
    }
  }
  throw NumericError("project: unreachable");
}

ConstraintSet::LinearMin ConstraintSet::linear_minimizer(const Vec& g) const {
  check_dim(g, "linear_minimizer");
  LinearMin lm;
  switch (kind_) {
    case Kind::kBox: {
      lm.point = Vec(dim_);
      for (int k = 0; k < dim_; ++k) {
        lm.point[k] = (g[k] >= 0.0) ? lower_[k] : upper_[k];
      }
      break;
    }
    case Kind::kL1Ball: {
      int best = 0;
      for (int k = 1; k < dim_; ++k) {
        if (std::abs(g[k]) > std::abs(g[best])) best = k;  // ties keep lowest index
      }
      lm.point = Vec::Zero(dim_);
      if (g[best] != 0.0) {
        lm.point[best] = (g[best] > 0.0) ? -radius_ : radius_;
      }
      break;
    }
    case Kind::kL2Ball: {
      const double norm = g.norm();
      if (norm == 0.0) {
        lm.point = center_;  // documented tie break: any point attains <g,c>
      } else {
        lm.point = center_ - g * (radius_ / norm);
      }
      break;
    }
    case Kind::kSimplex: {
      int best = 0;
      for (int k = 1; k < dim_; ++k) {
        if (g[k] < g[best]) best = k;
      }
      lm.point = Vec::Zero(dim_);
      lm.point[best] = 1.0;
      break;
    }
  }
  lm.value = g.dot(lm.point);
  return lm;
}

double ConstraintSet::diameter() const {
  switch (kind_) {
    case Kind::kBox:
      return (upper_ - lower_).norm();
    case Kind::kL1Ball:
    case Kind::kL2Ball:
      return 2.0 * radius_;
    case Kind::kSimplex:
      return dim_ >= 2 ? std::sqrt(2.0) : 0.0;
  }
  return 0.0;
}

double ConstraintSet::support_distance(const Vec& p) const {
  check_dim(p, "support_distance");
  switch (kind_) {
    case Kind::kBox: {
      // ||p - x|| is convex in x, so the max over a box sits at a corner;
      // separable, handled per coordinate.
      double sq = 0.0;
      for (int k = 0; k < dim_; ++k) {
        const double d = std::max(std::abs(p[k] - lower_[k]),
                                  std::abs(p[k] - upper_[k]));
        sq += d * d;
      }
      return std::sqrt(sq);
    }
    case Kind::kL1Ball: {
      double best = 0.0;
      for (int k = 0; k < dim_; ++k) {
        Vec v = Vec::Zero(dim_);
        v[k] = radius_;
        best = std::max(best, (p - v).norm());
        v[k] = -radius_;
        best = std::max(best, (p - v).norm());
      }
      return best;
    }
    case Kind::kL2Ball:
      return (p - center_).norm() + radius_;
    case Kind::kSimplex: {
      double best = 0.0;
      for (int k = 0; k < dim_; ++k) {
        Vec v = Vec::Zero(dim_);
        v[k] = 1.0;
        best = std::max(best, (p - v).norm());
      }
      return best;
    }
  }
  return 0.0;
}

std::string to_string(ConstraintSet::Kind kind) {
  switch (kind) {
    case ConstraintSet::Kind::kBox: return "box";
    case ConstraintSet::Kind::kL1Ball: return "l1_ball";
    case ConstraintSet::Kind::kL2Ball: return "l2_ball";
    case ConstraintSet::Kind::kSimplex: return "simplex";
  }
  return "?";
}

}  // namespace dpdo
