// Test-only brute-force oracles, kept independent of the library's
// implementation paths: plain-loop kernel scoring, exact 2-D minimum
// enclosing circles, and exhaustive two-ball partition search.
#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

inline Eigen::MatrixXd plain_rbf(const Eigen::MatrixXd& x, double sigma) {
  const int n = static_cast<int>(x.rows());
  Eigen::MatrixXd k(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double sq = 0.0;
      for (int c = 0; c < x.cols(); ++c) {
        const double diff = x(i, c) - x(j, c);
        sq += diff * diff;
      }
      k(i, j) = std::exp(-sq / (2.0 * sigma * sigma));
    }
  }
  return k;
}

inline void plain_deflate(Eigen::MatrixXd& k, int idx, double u) {
  const int n = static_cast<int>(k.rows());
  const double denom = std::max(k(idx, idx), 0.0) + u;
  Eigen::MatrixXd next(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      next(i, j) = k(i, j) - k(i, idx) * k(idx, j) / denom;
  k = next;
}

// From-scratch greedy selection: every step rebuilds the kernel and replays
// all prior deflations before scoring each live candidate.
inline std::vector<int> greedy_selection(const Eigen::MatrixXd& x, int steps,
                                         double sigma, double u) {
  std::vector<int> chosen;
  const int n = static_cast<int>(x.rows());
  for (int step = 0; step < steps; ++step) {
    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int cand = 0; cand < n; ++cand) {
      bool used = false;
      for (int c : chosen) used = used || c == cand;
      if (used) continue;
      Eigen::MatrixXd k = plain_rbf(x, sigma);
      for (int c : chosen) plain_deflate(k, c, u);
      double col_sq = 0.0;
      for (int j = 0; j < n; ++j) col_sq += k(j, cand) * k(j, cand);
      const double score = col_sq / (std::max(k(cand, cand), 0.0) + u);
      if (best < 0 || score > best_score) {
        best = cand;
        best_score = score;
      }
    }
    chosen.push_back(best);
  }
  return chosen;
}

struct Circle {
  Eigen::Vector2d center{0.0, 0.0};
  double radius = 0.0;
};

inline bool covers(const Circle& c, const std::vector<Eigen::Vector2d>& pts,
                   double slack = 1e-9) {
  for (const auto& p : pts)
    if ((p - c.center).norm() > c.radius + slack) return false;
  return true;
}

inline Circle circumcircle(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                           const Eigen::Vector2d& c) {
  const double d = 2.0 * (a.x() * (b.y() - c.y()) + b.x() * (c.y() - a.y()) +
                          c.x() * (a.y() - b.y()));
  Circle out;
  if (std::abs(d) < 1e-14) {
    out.radius = std::numeric_limits<double>::infinity();
    return out;
  }
  const double ux = (a.squaredNorm() * (b.y() - c.y()) +
                     b.squaredNorm() * (c.y() - a.y()) +
                     c.squaredNorm() * (a.y() - b.y())) / d;
  const double uy = (a.squaredNorm() * (c.x() - b.x()) +
                     b.squaredNorm() * (a.x() - c.x()) +
                     c.squaredNorm() * (b.x() - a.x())) / d;
  out.center = {ux, uy};
  out.radius = (a - out.center).norm();
  return out;
}

// Exact 2-D minimum enclosing circle by enumerating all pair and triple
// support sets.
inline Circle exact_meb_2d(const std::vector<Eigen::Vector2d>& pts) {
  Circle best;
  best.radius = std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(pts.size());
  if (n == 1) return {pts[0], 0.0};
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Circle c{(pts[i] + pts[j]) / 2.0, (pts[i] - pts[j]).norm() / 2.0};
      if (c.radius < best.radius && covers(c, pts)) best = c;
      for (int k = j + 1; k < n; ++k) {
        const Circle t = circumcircle(pts[i], pts[j], pts[k]);
        if (t.radius < best.radius && covers(t, pts)) best = t;
      }
    }
  }
  return best;
}

inline double pair_density(const Eigen::MatrixXd& pts,
                           const std::vector<int>& members,
                           const Eigen::VectorXd& mean, double sigma) {
  double den = 0.0;
  for (int a : members)
    for (int b : members)
      den += std::exp(-((pts.row(a).transpose() - mean).squaredNorm() +
                        (pts.row(b).transpose() - mean).squaredNorm()) /
                      (2.0 * sigma * sigma));
  return den;
}

struct TwoBallResult {
  std::vector<int> first, second;
  double objective = std::numeric_limits<double>::infinity();
};

// Exhaustive search over all 2-partitions whose hard assignment is
// self-consistent (each point prefers its own ball's mean/scale).
inline TwoBallResult best_two_ball_partition(const Eigen::MatrixXd& pts,
                                             double sigma_floor) {
  const int n = static_cast<int>(pts.rows());
  TwoBallResult best;
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    std::vector<int> a, b;
    for (int i = 0; i < n; ++i)
      (mask & (1u << i) ? a : b).push_back(i);

    auto stats = [&](const std::vector<int>& members, Eigen::VectorXd& mean,
                     double& sigma) {
      mean = Eigen::VectorXd::Zero(pts.cols());
      for (int i : members) mean += pts.row(i).transpose();
      mean /= static_cast<double>(members.size());
      double msq = 0.0;
      for (int i : members)
        msq += (pts.row(i).transpose() - mean).squaredNorm();
      sigma = std::max(std::sqrt(msq / members.size()), sigma_floor);
    };
    Eigen::VectorXd mean_a, mean_b;
    double sig_a, sig_b;
    stats(a, mean_a, sig_a);
    stats(b, mean_b, sig_b);

    bool consistent = true;
    for (int i = 0; i < n; ++i) {
      const double cost_a =
          (pts.row(i).transpose() - mean_a).squaredNorm() / (sig_a * sig_a);
      const double cost_b =
          (pts.row(i).transpose() - mean_b).squaredNorm() / (sig_b * sig_b);
      const bool in_a = (mask & (1u << i)) != 0;
      if (in_a ? cost_a > cost_b : cost_b > cost_a) consistent = false;
    }
    if (!consistent) continue;
    const double obj = pair_density(pts, a, mean_a, sig_a) +
                       pair_density(pts, b, mean_b, sig_b);
    if (obj < best.objective) {
      best.objective = obj;
      best.first = a;
      best.second = b;
    }
  }
  return best;
}

}  // namespace oracle
