#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "da2/kernel.hpp"

namespace da2 {

// The halved representative subset: ceil(n/2) indices picked greedily by the
// sequential kernel score, with the winning score at each step.
struct HalfspaceSelection {
  std::vector<int> indices;
  std::vector<double> scores;
  double sigma = 1.8;
  double u = 0.1;
};

// score(i) = ||K(:,i)||^2 / (K(i,i) + u); already-deflated indices get -inf.
inline Eigen::VectorXd score_all(const KernelMatrix& k, double u) {
  if (u < 0.0) throw std::invalid_argument("score_all: u must be >= 0");
  const int n = k.n();
  Eigen::VectorXd scores(n);
  for (int i = 0; i < n; ++i) {
    if (k.is_deflated(i)) {
      scores[i] = -std::numeric_limits<double>::infinity();
      continue;
    }
    const double denom = std::max(k.entries(i, i), 0.0) + u;
    const double col_sq = k.entries.col(i).squaredNorm();
    if (denom <= 0.0) {
      // a fully deflated-away column scores 0; a zero diagonal with live
      // mass elsewhere is a genuinely degenerate kernel
      if (col_sq <= 1e-24) {
        scores[i] = 0.0;
        continue;
      }
      throw std::runtime_error("score_all: degenerate kernel column " +
                               std::to_string(i));
    }
    scores[i] = col_sq / denom;
  }
  return scores;
}

inline int argmax_live(const Eigen::VectorXd& scores) {
  int best = -1;
  double best_score = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < scores.size(); ++i) {
    if (std::isinf(scores[i]) && scores[i] < 0) continue;
    if (best < 0 || scores[i] > best_score) {  // ties keep the lowest index
      best = i;
      best_score = scores[i];
    }
  }
  if (best < 0) throw std::runtime_error("argmax_live: no live index");
  return best;
}

// First k steps of the greedy score/deflate loop.
inline HalfspaceSelection select_top(const Dataset& d, int k, double sigma,
                                     double u) {
  if (d.n() < 1) throw std::invalid_argument("select_top: empty dataset");
  if (k < 1 || k > d.n())
    throw std::invalid_argument("select_top: k out of range");
  KernelMatrix km = rbf_kernel(d, sigma);
  HalfspaceSelection sel;
  sel.sigma = sigma;
  sel.u = u;
  sel.indices.reserve(k);
  sel.scores.reserve(k);
  for (int step = 0; step < k; ++step) {
    const Eigen::VectorXd scores = score_all(km, u);
    const int best = argmax_live(scores);
    sel.indices.push_back(best);
    sel.scores.push_back(scores[best]);
    km.deflate(best, u);
  }
  return sel;
}

inline HalfspaceSelection select_halfspace(const Dataset& d, double sigma,
                                           double u) {
  const int k = (d.n() + 1) / 2;  // ceil(n/2)
  return select_top(d, k, sigma, u);
}

}  // namespace da2
