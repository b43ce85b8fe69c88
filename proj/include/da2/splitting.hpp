#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "da2/rng.hpp"

namespace da2 {

struct Ball {
  Eigen::VectorXd center;
  double radius = 0.0;
  Eigen::VectorXd mean;
  double sigma = 1.0;
  std::vector<int> members;  // row indices into the point set being split
  double density = 0.0;
};

struct ConstraintReport {
  bool volume_each = false;    // (1) Vol(B_i) < Vol(B_D) for all i
  bool volume_sum = false;     // (2) sum Vol(B_i) < Vol(B_D)
  bool radius_each = false;    // (3) r(B_i) < r(B_D) for all i
  bool center_distance = false;  // (4) l(c_i, c*) < 2 r(B_D) for all i

  bool all() const {
    return volume_each && volume_sum && radius_each && center_distance;
  }
};

struct BallPartition {
  std::vector<Ball> balls;
  double objective = 0.0;  // sum of ball densities
  Ball enclosing;          // B_D over the whole point set
  double eps = 0.01;
  ConstraintReport report;
  bool validation_warning = false;  // set when no restart satisfied 4.2
};

enum class SplitObjective { minimize, maximize };

struct SplitOptions {
  double tol = 1e-6;
  int max_iters = 100;
  double sigma_floor = 1e-6;
  SplitObjective objective = SplitObjective::minimize;
};

// Den = sum over all ordered pairs (x_j, x_l), self-pairs included, of
// exp(-(|x_j-m|^2 + |x_l-m|^2) / (2 sigma^2)). The pair sum factorizes into
// the square of the single-point weight sum.
inline double number_density(const Eigen::MatrixXd& points,
                             const Eigen::VectorXd& mean, double sigma) {
  if (sigma <= 0.0)
    throw std::invalid_argument("number_density: sigma must be > 0");
  if (points.rows() == 0)
    throw std::invalid_argument("number_density: empty point set");
  const double inv = 1.0 / (2.0 * sigma * sigma);
  double s = 0.0;
  for (int i = 0; i < points.rows(); ++i)
    s += std::exp(-(points.row(i).transpose() - mean).squaredNorm() * inv);
  return s * s;
}

// (1+eps)-approximate minimum enclosing ball, Frank-Wolfe style: the center
// is a convex combination of the points, updated by exact line search toward
// the farthest point. The dual value g = S - |c|^2 is a certified lower
// bound on r_opt^2, so the loop stops as soon as R <= (1+eps) sqrt(g).
inline Ball min_enclosing_ball(const Eigen::MatrixXd& points, double eps) {
  if (points.rows() == 0)
    throw std::invalid_argument("min_enclosing_ball: empty point set");
  if (eps <= 0.0)
    throw std::invalid_argument("min_enclosing_ball: eps must be > 0");
  const int n = static_cast<int>(points.rows());
  Ball b;
  if (n == 1) {
    b.center = points.row(0).transpose();
    b.radius = 0.0;
    return b;
  }
  Eigen::VectorXd c = points.colwise().mean().transpose();
  double weighted_sq = points.rowwise().squaredNorm().mean();  // S under uniform weights

  auto farthest = [&](const Eigen::VectorXd& center, double& dist_sq) {
    int best = 0;
    dist_sq = -1.0;
    for (int i = 0; i < n; ++i) {
      const double d = (points.row(i).transpose() - center).squaredNorm();
      if (d > dist_sq) {
        dist_sq = d;
        best = i;
      }
    }
    return best;
  };

  const double cover_sq = (1.0 + eps) * (1.0 + eps);
  const long max_iters = 100000;
  for (long it = 0; it < max_iters; ++it) {
    double e_sq;
    const int q = farthest(c, e_sq);
    const double g = std::max(weighted_sq - c.squaredNorm(), 0.0);
    if (e_sq <= cover_sq * g) break;
    const double lambda = (e_sq - g) / (2.0 * e_sq);
    if (lambda <= 0.0) break;
    weighted_sq = (1.0 - lambda) * weighted_sq +
                  lambda * points.row(q).squaredNorm();
    c = (1.0 - lambda) * c + lambda * points.row(q).transpose();
  }
  double r_sq;
  farthest(c, r_sq);
  b.center = c;
  b.radius = std::sqrt(r_sq);
  return b;
}

// 4.2 splitting constraints, with Vol(B) = r^d up to the shared dimensional
// constant (which cancels in every comparison).
inline ConstraintReport validate_partition(const BallPartition& p) {
  ConstraintReport rep;
  const double rd = p.enclosing.radius;
  const double d = static_cast<double>(p.enclosing.center.size());
  const double vol_d = std::pow(rd, d);
  rep.volume_each = true;
  rep.radius_each = true;
  rep.center_distance = true;
  double vol_sum = 0.0;
  for (const Ball& b : p.balls) {
    const double vol = std::pow(b.radius, d);
    vol_sum += vol;
    if (!(vol < vol_d)) rep.volume_each = false;
    if (!(b.radius < rd)) rep.radius_each = false;
    if (!((b.center - p.enclosing.center).norm() < 2.0 * rd))
      rep.center_distance = false;
  }
  rep.volume_sum = vol_sum < vol_d;
  return rep;
}

namespace detail {

// Assignment weight f(x, x, mu, sigma) = exp(-|x-mu|^2 / sigma^2); argmax
// over balls reduces to argmin of the scaled squared distance.
inline int assign_point(const Eigen::VectorXd& x,
                        const std::vector<Eigen::VectorXd>& means,
                        const std::vector<double>& sigmas) {
  int best = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int i = 0; i < static_cast<int>(means.size()); ++i) {
    const double cost = (x - means[i]).squaredNorm() / (sigmas[i] * sigmas[i]);
    if (cost < best_cost) {  // ties keep the lowest ball index
      best_cost = cost;
      best = i;
    }
  }
  return best;
}

inline Eigen::MatrixXd gather_rows(const Eigen::MatrixXd& points,
                                   const std::vector<int>& rows) {
  Eigen::MatrixXd out(static_cast<int>(rows.size()), points.cols());
  for (int i = 0; i < static_cast<int>(rows.size()); ++i)
    out.row(i) = points.row(rows[i]);
  return out;
}

struct RestartResult {
  std::vector<Ball> balls;
  double objective = 0.0;
};

inline RestartResult run_restart(const Eigen::MatrixXd& points, int k,
                                 double eps, std::uint64_t restart_seed,
                                 const SplitOptions& opts) {
  const int m = static_cast<int>(points.rows());
  auto rng = make_rng(restart_seed, SeedDomain::splitting);
  const std::vector<int> seeds = sample_without_replacement(m, k, rng);
  std::vector<Eigen::VectorXd> means(k);
  std::vector<double> sigmas(k, 1.0);
  for (int i = 0; i < k; ++i) means[i] = points.row(seeds[i]).transpose();

  std::vector<std::vector<int>> members(k);
  double prev_obj = std::numeric_limits<double>::infinity();
  double obj = 0.0;
  for (int iter = 0; iter < opts.max_iters; ++iter) {
    for (auto& ms : members) ms.clear();
    std::vector<int> owner(m);
    for (int j = 0; j < m; ++j) {
      owner[j] = assign_point(points.row(j).transpose(), means, sigmas);
      members[owner[j]].push_back(j);
    }
    // an emptied ball steals the point worst served by its current owner
    for (int i = 0; i < k; ++i) {
      if (!members[i].empty()) continue;
      int steal = -1;
      double worst = -1.0;
      for (int j = 0; j < m; ++j) {
        if (members[owner[j]].size() <= 1) continue;
        const double cost = (points.row(j).transpose() - means[owner[j]]).squaredNorm() /
                            (sigmas[owner[j]] * sigmas[owner[j]]);
        if (cost > worst) {
          worst = cost;
          steal = j;
        }
      }
      if (steal < 0) throw std::runtime_error("split_balls: cannot fill empty ball");
      auto& from = members[owner[steal]];
      from.erase(std::find(from.begin(), from.end(), steal));
      owner[steal] = i;
      members[i].push_back(steal);
      means[i] = points.row(steal).transpose();
    }
    obj = 0.0;
    for (int i = 0; i < k; ++i) {
      const Eigen::MatrixXd pts = gather_rows(points, members[i]);
      means[i] = pts.colwise().mean().transpose();
      const double rms =
          std::sqrt((pts.rowwise() - means[i].transpose()).rowwise().squaredNorm().mean());
      sigmas[i] = std::max(rms, opts.sigma_floor);
      obj += number_density(pts, means[i], sigmas[i]);
    }
    if (std::abs(obj - prev_obj) < opts.tol) break;
    prev_obj = obj;
  }

  RestartResult res;
  res.objective = obj;
  res.balls.resize(k);
  for (int i = 0; i < k; ++i) {
    Ball& b = res.balls[i];
    const Eigen::MatrixXd pts = gather_rows(points, members[i]);
    const Ball meb = min_enclosing_ball(pts, eps);
    b.center = meb.center;
    b.radius = meb.radius;
    b.mean = means[i];
    b.sigma = sigmas[i];
    b.members = members[i];
    b.density = number_density(pts, b.mean, b.sigma);
  }
  return res;
}

}  // namespace detail

// Split a point set into k balls by alternating hard assignment and
// mean/scale updates on the pair-density objective, over several random
// restarts. The best restart is the one with the extremal objective among
// those satisfying the 4.2 constraints; if none does, the extremal restart
// overall is returned with a validation warning.
inline BallPartition split_balls(const Eigen::MatrixXd& points, int k,
                                 double eps, int restarts, std::uint64_t seed,
                                 const SplitOptions& opts = {}) {
  const int m = static_cast<int>(points.rows());
  if (k < 2 || k > m)
    throw std::invalid_argument("split_balls: need 2 <= k <= point count");
  if (eps <= 0.0) throw std::invalid_argument("split_balls: eps must be > 0");
  if (restarts < 1)
    throw std::invalid_argument("split_balls: restarts must be >= 1");

  Ball enclosing = min_enclosing_ball(points, eps);
  enclosing.mean = points.colwise().mean().transpose();
  enclosing.sigma = std::max(
      std::sqrt((points.rowwise() - enclosing.mean.transpose())
                    .rowwise().squaredNorm().mean()),
      opts.sigma_floor);
  enclosing.members.resize(m);
  for (int i = 0; i < m; ++i) enclosing.members[i] = i;
  enclosing.density = number_density(points, enclosing.mean, enclosing.sigma);

  auto better = [&](double a, double b) {
    return opts.objective == SplitObjective::minimize ? a < b : a > b;
  };

  bool have_valid = false;
  bool have_any = false;
  BallPartition best_valid, best_any;
  for (int r = 0; r < restarts; ++r) {
    detail::RestartResult res =
        detail::run_restart(points, k, eps, seed + r, opts);
    BallPartition p;
    p.balls = std::move(res.balls);
    p.objective = res.objective;
    p.enclosing = enclosing;
    p.eps = eps;
    p.report = validate_partition(p);
    if (!have_any || better(p.objective, best_any.objective)) {
      have_any = true;
      best_any = p;
    }
    if (p.report.all() && (!have_valid || better(p.objective, best_valid.objective))) {
      have_valid = true;
      best_valid = p;
    }
  }
  if (have_valid) return best_valid;
  best_any.validation_warning = true;
  return best_any;
}

}  // namespace da2
