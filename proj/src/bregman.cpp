#include "dpdo/bregman.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace dpdo {
namespace {

void check_same_dim(const Vec& x, const Vec& y, const char* op) {
  if (x.size() != y.size()) {
    throw ParameterError(std::string(op) + ": dimension mismatch " +
                         std::to_string(x.size()) + " vs " +
                         std::to_string(y.size()));
  }
}

void check_positive(const Vec& x, const char* op) {
  for (int k = 0; k < x.size(); ++k) {
    if (!(x[k] > 0.0)) {
      throw ParameterError(std::string(op) +
                           ": neg_entropy needs strictly positive coordinates");
    }
  }
}

// Projection onto { x >= floor, sum x = 1 }: shift, project onto the scaled
// simplex, shift back.
Vec project_truncated_simplex(const Vec& y, double floor) {
  const int d = static_cast<int>(y.size());
  const double mass = 1.0 - floor * d;
  Vec w = y.array() - floor;
  // sorted thresholding with target mass
  std::vector<double> u(w.data(), w.data() + d);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumulative = 0.0, tau = 0.0;
  for (int k = 0; k < d; ++k) {
    cumulative += u[k];
    const double candidate = (cumulative - mass) / static_cast<double>(k + 1);
    if (u[k] - candidate > 0.0) tau = candidate;
  }
  return ((w.array() - tau).max(0.0) + floor).matrix();
}

}  // namespace

BregmanGeometry BregmanGeometry::squared_euclidean() {
  BregmanGeometry g;
  g.kind_ = Kind::kSquaredEuclidean;
  g.omega_ = 1.0;
  g.M_ = 1.0;
  return g;
}

BregmanGeometry BregmanGeometry::mahalanobis(Mat Q) {
  if (Q.rows() != Q.cols() || Q.rows() == 0) {
    throw ParameterError("mahalanobis: Q must be square");
  }
  if (!Q.isApprox(Q.transpose(), 1e-12)) {
    throw ParameterError("mahalanobis: Q must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat> eig(Q);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0)) throw ParameterError("mahalanobis: Q must be positive definite");
  BregmanGeometry g;
  g.kind_ = Kind::kMahalanobis;
  g.Q_ = std::move(Q);
  g.omega_ = 2.0 * lo;
  g.M_ = 2.0 * hi;
  return g;
}

BregmanGeometry BregmanGeometry::neg_entropy() {
  BregmanGeometry g;
  g.kind_ = Kind::kNegEntropy;
  g.omega_ = 1.0;              // Pinsker, valid on the probability simplex
  g.M_ = 1.0 / kNegEntropyFloor;  // only finite on the clamped domain
  return g;
}

double BregmanGeometry::phi(const Vec& x) const {
  switch (kind_) {
    case Kind::kSquaredEuclidean:
      return 0.5 * x.squaredNorm();
    case Kind::kMahalanobis:
      return x.dot(Q_ * x);
    case Kind::kNegEntropy: {
      check_positive(x, "phi");
      double s = 0.0;
      for (int k = 0; k < x.size(); ++k) s += x[k] * std::log(x[k]);
      return s;
    }
  }
  return 0.0;
}

Vec BregmanGeometry::grad_phi(const Vec& x) const {
  switch (kind_) {
    case Kind::kSquaredEuclidean:
      return x;
    case Kind::kMahalanobis:
      return 2.0 * (Q_ * x);
    case Kind::kNegEntropy: {
      check_positive(x, "grad_phi");
      return (x.array().log() + 1.0).matrix();
    }
  }
  return x;
}

double BregmanGeometry::divergence(const Vec& x, const Vec& y) const {
  check_same_dim(x, y, "divergence");
  switch (kind_) {
    case Kind::kSquaredEuclidean:
      return 0.5 * (x - y).squaredNorm();
    case Kind::kMahalanobis: {
      const Vec d = x - y;
      return d.dot(Q_ * d);
    }
    case Kind::kNegEntropy: {
      check_positive(x, "divergence");
      check_positive(y, "divergence");
      double s = 0.0;
      for (int k = 0; k < x.size(); ++k) {
        s += x[k] * std::log(x[k] / y[k]);
      }
      return s - x.sum() + y.sum();
    }
  }
  return 0.0;
}

Vec BregmanGeometry::grad_y_divergence(const Vec& x, const Vec& y) const {
  check_same_dim(x, y, "grad_y_divergence");
  switch (kind_) {
    case Kind::kSquaredEuclidean:
      return y - x;
    case Kind::kMahalanobis:
      return 2.0 * (Q_ * (y - x));
    case Kind::kNegEntropy: {
      check_positive(y, "grad_y_divergence");
      return (1.0 - x.array() / y.array()).matrix();
    }
  }
  return y - x;
}

double BregmanGeometry::hessian_bound() const {
  switch (kind_) {
    case Kind::kSquaredEuclidean:
      return 1.0;
    case Kind::kMahalanobis:
      return M_;  // Hessian of x^T Q x is 2Q
    case Kind::kNegEntropy:
      return 1.0 / kNegEntropyFloor;
  }
  return 1.0;
}

Vec BregmanGeometry::mirror_step(const ConstraintSet& set, const Vec& z,
                                 const Vec& g, double alpha) const {
  check_same_dim(z, g, "mirror_step");
  if (!(alpha > 0.0)) throw ParameterError("mirror_step: alpha must be positive");
  switch (kind_) {
    case Kind::kSquaredEuclidean:
      // D = 1/2||x-z||^2, so the step is a plain Euclidean projection.
      return set.project(z - alpha * g);
    case Kind::kNegEntropy: {
      if (set.kind() != ConstraintSet::Kind::kSimplex) {
        throw ParameterError(
            "mirror_step: neg_entropy is only supported on the simplex");
      }
      // Multiplicative-weights closed form, log domain to dodge overflow.
      Vec logits(z.size());
      for (int k = 0; k < z.size(); ++k) {
        logits[k] = std::log(std::max(z[k], kNegEntropyFloor)) - alpha * g[k];
      }
      const double m = logits.maxCoeff();
      Vec w = (logits.array() - m).exp();
      return w / w.sum();
    }
    case Kind::kMahalanobis:
      return mirror_step_numeric(set, z, g, alpha);
  }
  throw NumericError("mirror_step: unreachable");
}

Vec BregmanGeometry::mirror_step_numeric(const ConstraintSet& set,
                                         const Vec& z, const Vec& g,
                                         double alpha) const {
  check_same_dim(z, g, "mirror_step_numeric");
  if (!(alpha > 0.0)) throw ParameterError("mirror_step_numeric: alpha must be positive");
  if (kind_ == Kind::kNegEntropy &&
      set.kind() != ConstraintSet::Kind::kSimplex) {
    throw ParameterError(
        "mirror_step_numeric: neg_entropy is only supported on the simplex");
  }
  const bool entropy = (kind_ == Kind::kNegEntropy);
  const double floor = kNegEntropyFloor;

  // Objective h(x) = D_phi(x, z_dom) + alpha <g, x>.
  Vec z_dom = z;
  if (entropy) z_dom = z.cwiseMax(floor);
  const Vec grad_shift = alpha * g - grad_phi(z_dom);

  auto project = [&](const Vec& y) {
    return entropy ? project_truncated_simplex(y, floor) : set.project(y);
  };
  auto value = [&](const Vec& x) { return divergence(x, z_dom) + alpha * g.dot(x); };
  auto grad = [&](const Vec& x) { return (grad_phi(x) + grad_shift).eval(); };

  Vec x = project(entropy ? Vec(Vec::Constant(z.size(), 1.0 / z.size())) : z);
  constexpr int kMaxIter = 100000;
  constexpr double kTol = 1e-12;

  if (!entropy) {
    const double step = 1.0 / hessian_bound();
    double residual = 0.0;
    for (int it = 0; it < kMaxIter; ++it) {
      Vec next = project(x - step * grad(x));
      residual = (x - next).norm() / step;  // gradient-mapping norm
      x = next;
      if (residual <= kTol) return x;
    }
    std::ostringstream os;
    os << "mirror_step_numeric: no convergence, gradient-mapping residual "
       << residual;
    throw NumericError(os.str());
  }

  // Entropy branch: the Hessian of phi is unbounded near the boundary, so a
  // global fixed step is useless; Armijo backtracking instead.
  double step = 1.0;
  double residual = 0.0;
  for (int it = 0; it < kMaxIter; ++it) {
    const double hx = value(x);
    const Vec gx = grad(x);
    Vec next;
    while (true) {
      next = project(x - step * gx);
      const Vec delta = next - x;
      if (value(next) <= hx + gx.dot(delta) + delta.squaredNorm() / (2.0 * step)) {
        break;
      }
      step *= 0.5;
      if (step < 1e-18) throw NumericError("mirror_step_numeric: line search underflow");
    }
    residual = (x - next).norm() / step;
    x = next;
    if (residual <= kTol) return x;
    step = std::min(step * 1.5, 1.0);
  }
  std::ostringstream os;
  os << "mirror_step_numeric: no convergence, gradient-mapping residual "
     << residual;
  throw NumericError(os.str());
}

Vec random_point(const ConstraintSet& set, RandomStream& stream) {
  const int d = set.dim();
  switch (set.kind()) {
    case ConstraintSet::Kind::kBox: {
      Vec x(d);
      for (int k = 0; k < d; ++k) {
        x[k] = stream.uniform(set.lower()[k], set.upper()[k]);
      }
      return x;
    }
    case ConstraintSet::Kind::kSimplex: {
      // Normalized exponentials are uniform on the simplex.
      Vec x(d);
      for (int k = 0; k < d; ++k) x[k] = -std::log(stream.uniform01());
      return x / x.sum();
    }
    case ConstraintSet::Kind::kL1Ball: {
      Vec x(d);
      for (int k = 0; k < d; ++k) {
        x[k] = -std::log(stream.uniform01());
        if (stream.bernoulli_half()) x[k] = -x[k];
      }
      const double scale =
          set.radius() * std::pow(stream.uniform01(), 1.0 / d) / x.lpNorm<1>();
      return x * scale;
    }
    case ConstraintSet::Kind::kL2Ball: {
      Vec x(d);
      for (int k = 0; k < d; ++k) x[k] = stream.normal();
      const double scale =
          set.radius() * std::pow(stream.uniform01(), 1.0 / d) / x.norm();
      return set.center() + x * scale;
    }
  }
  throw NumericError("random_point: unreachable");
}

Assumption4Report BregmanGeometry::verify_assumption4(const ConstraintSet& set,
                                                      int samples,
                                                      std::uint64_t seed) const {
  if (samples < 1) throw ParameterError("verify_assumption4: samples >= 1");
  const bool entropy = (kind_ == Kind::kNegEntropy);
  const int d = set.dim();
  RandomStream stream(seed, 0, 0, 0, StreamPurpose::kGeneric);

  auto draw_domain = [&]() {
    Vec y = random_point(set, stream);
    if (entropy) {
      // keep clear of the boundary so divergences stay finite
      y = y.cwiseMax(1e-3);
      y /= y.sum();
    }
    return y;
  };

  Assumption4Report rep;
  rep.samples = samples;
  rep.declared_M = M_;
  double worst_jensen = -std::numeric_limits<double>::infinity();
  double needed_M = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Vec x = draw_domain();
    // (i) Jensen: D(x, sum r_i y_i) <= sum r_i D(x, y_i), three-point mix.
    Vec y1 = draw_domain(), y2 = draw_domain(), y3 = draw_domain();
    double r1 = stream.uniform01(), r2 = stream.uniform01(), r3 = stream.uniform01();
    const double rs = r1 + r2 + r3;
    r1 /= rs; r2 /= rs; r3 /= rs;
    const Vec mixed = r1 * y1 + r2 * y2 + r3 * y3;
    const double lhs = divergence(x, mixed);
    const double rhs = r1 * divergence(x, y1) + r2 * divergence(x, y2) +
                       r3 * divergence(x, y3);
    worst_jensen = std::max(worst_jensen, lhs - rhs);

    // (ii) smoothness in y: smallest M with
    // D(x,y1) - D(x,y2) <= <grad_y D(x,y2), y1-y2> + (M/2)||y1-y2||^2.
    const Vec dy = y1 - y2;
    const double nsq = dy.squaredNorm();
    if (nsq > 1e-16) {
      const double gap =
          divergence(x, y1) - divergence(x, y2) - grad_y_divergence(x, y2).dot(dy);
      needed_M = std::max(needed_M, 2.0 * gap / nsq);
    }
  }
  rep.worst_jensen_violation = worst_jensen;
  rep.smallest_M = needed_M;
  rep.passed = (worst_jensen <= 1e-9) && (needed_M <= M_ * (1.0 + 1e-9) + 1e-12);
  return rep;
}

std::string to_string(BregmanGeometry::Kind kind) {
  switch (kind) {
    case BregmanGeometry::Kind::kSquaredEuclidean: return "squared_euclidean";
    case BregmanGeometry::Kind::kMahalanobis: return "mahalanobis";
    case BregmanGeometry::Kind::kNegEntropy: return "neg_entropy";
  }
  return "?";
}

}  // namespace dpdo
