#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <Eigen/Dense>

#include "da2/rng.hpp"

namespace da2 {

// 2-D halfspace learner on the unit circle. theta is the angle between the
// current weight vector and the target direction; under the uniform disk the
// disagreement mass is exactly theta / pi.
struct PerceptronState {
  Eigen::Vector2d v;
  Eigen::Vector2d mu;  // unit target direction
  long updates = 0;
  double theta = 0.0;
};

inline double angle_between(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0)
    throw std::invalid_argument("angle undefined for zero vector");
  const double c = std::clamp(a.dot(b) / (na * nb), -1.0, 1.0);
  return std::acos(c);
}

inline PerceptronState make_perceptron(const Eigen::Vector2d& v,
                                       const Eigen::Vector2d& mu) {
  PerceptronState s;
  s.v = v;
  s.mu = mu.normalized();
  s.theta = angle_between(v, s.mu);
  return s;
}

inline double angle_error(const PerceptronState& s) {
  if (s.v.norm() == 0.0)
    throw std::invalid_argument("angle_error: zero weight vector");
  return s.theta / M_PI;
}

// Mistake-driven update v <- v + y x. sign(0) counts as -1 here so boundary
// points trigger updates.
inline PerceptronState perceptron_step(const PerceptronState& s,
                                       const Eigen::Vector2d& x, int y) {
  const int predicted = s.v.dot(x) > 0.0 ? 1 : -1;
  if (predicted == y) return s;
  PerceptronState next = s;
  next.v = s.v + static_cast<double>(y) * x;
  next.updates = s.updates + 1;
  next.theta = angle_between(next.v, next.mu);
  return next;
}

// Empirical fraction of mistake-driven updates for which the angle to the
// target (hence the error) did not decrease. Strictly between 0 and 1 for
// any nontrivial run, which is the assertable shape of the non-monotonicity
// claim.
inline double monotonicity_experiment(int steps, int trials,
                                      std::uint64_t seed) {
  if (steps < 1 || trials < 1)
    throw std::invalid_argument(
        "monotonicity_experiment: steps and trials must be >= 1");
  long total = 0, nondecreasing = 0;
  for (int t = 0; t < trials; ++t) {
    auto rng = make_rng(seed, SeedDomain::perceptron, t);
    const Eigen::Vector2d mu = random_unit_vector(rng);
    PerceptronState s = make_perceptron(random_unit_vector(rng), mu);
    for (int i = 0; i < steps; ++i) {
      const Eigen::Vector2d x = uniform_disk_point(rng);
      const int y = mu.dot(x) >= 0.0 ? 1 : -1;
      const double before = s.theta;
      PerceptronState next = perceptron_step(s, x, y);
      if (next.updates != s.updates) {
        ++total;
        if (next.theta >= before) ++nondecreasing;
      }
      s = next;
    }
  }
  if (total == 0) return 0.0;
  return static_cast<double>(nondecreasing) / static_cast<double>(total);
}

struct DensityIdentity {
  double lhs = 0.0;  // err_t - err_{t+1}
  double rhs = 0.0;  // (theta_{t+1} - theta_t) * Den(B) / n
  double gap = 0.0;  // | |lhs| - |rhs| |
};

// err difference vs. angle difference scaled by the unit-circle number
// density Den(B) = n / pi. The identity is exact; the two sides differ only
// in the stated sign convention, so the gap compares magnitudes.
inline DensityIdentity density_identity(double theta_t, double theta_next,
                                        long n) {
  if (theta_t < 0.0 || theta_t > M_PI || theta_next < 0.0 || theta_next > M_PI)
    throw std::invalid_argument("density_identity: angles must lie in [0, pi]");
  if (n < 1) throw std::invalid_argument("density_identity: n must be >= 1");
  DensityIdentity r;
  const double density = static_cast<double>(n) / M_PI;
  r.lhs = theta_t / M_PI - theta_next / M_PI;
  r.rhs = (theta_next - theta_t) * density / static_cast<double>(n);
  r.gap = std::abs(std::abs(r.lhs) - std::abs(r.rhs));
  return r;
}

struct BoundQuery {
  double eps = 0.1;    // target error, in (0,1)
  double delta = 0.05;  // failure probability, in (0,1)
  long m = 2;          // unlabeled-pool count, >= 2
};

// Label-complexity value of the halved hypothesis class:
//   (64/eps^2) * (1/sqrt(2)^(m-2)) * ln(12/eps) + ln(4/delta)
inline double label_complexity_bound(const BoundQuery& q) {
  if (q.eps <= 0.0 || q.eps >= 1.0)
    throw std::invalid_argument("label_complexity_bound: eps must be in (0,1)");
  if (q.delta <= 0.0 || q.delta >= 1.0)
    throw std::invalid_argument("label_complexity_bound: delta must be in (0,1)");
  if (q.m < 2) throw std::invalid_argument("label_complexity_bound: m must be >= 2");
  const double shrink = std::pow(std::sqrt(2.0), -static_cast<double>(q.m - 2));
  return (64.0 / (q.eps * q.eps)) * (shrink * std::log(12.0 / q.eps)) +
         std::log(4.0 / q.delta);
}

}  // namespace da2
