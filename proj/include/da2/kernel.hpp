#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "da2/dataset.hpp"

namespace da2 {

// RBF kernel matrix with rank-one deflation state. Before any deflation the
// diagonal is exactly 1 and every entry lies in (0,1]; deflation drives used
// columns toward zero so they can never win the score argmax again.
struct KernelMatrix {
  Eigen::MatrixXd entries;
  double sigma = 1.8;
  std::vector<int> deflations;

  int n() const { return static_cast<int>(entries.rows()); }

  bool is_deflated(int idx) const {
    return std::find(deflations.begin(), deflations.end(), idx) !=
           deflations.end();
  }

  // K <- K - K(:,idx) K(idx,:) / (K(idx,idx) + u)
  void deflate(int idx, double u) {
    if (idx < 0 || idx >= n())
      throw std::invalid_argument("deflate: index out of range");
    if (is_deflated(idx))
      throw std::invalid_argument("deflate: index already deflated");
    if (u < 0.0) throw std::invalid_argument("deflate: u must be >= 0");
    // cancellation can leave a tiny negative diagonal; clamp before dividing
    const double diag = std::max(entries(idx, idx), 0.0);
    const double denom = diag + u;
    if (denom <= 0.0)
      throw std::runtime_error("deflate: degenerate kernel, zero denominator");
    const Eigen::VectorXd col = entries.col(idx);
    entries.noalias() -= (col * col.transpose()) / denom;
    // keep exact symmetry under accumulated rounding
    entries = ((entries + entries.transpose()) / 2.0).eval();
    deflations.push_back(idx);
  }
};

inline KernelMatrix rbf_kernel(const Dataset& d, double sigma) {
  if (sigma <= 0.0) throw std::invalid_argument("rbf_kernel: sigma must be > 0");
  KernelMatrix k;
  k.sigma = sigma;
  const int n = d.n();
  k.entries.resize(n, n);
  const double inv = 1.0 / (2.0 * sigma * sigma);
  for (int i = 0; i < n; ++i) {
    k.entries(i, i) = 1.0;
    for (int j = i + 1; j < n; ++j) {
      const double sq = (d.features.row(i) - d.features.row(j)).squaredNorm();
      const double v = std::exp(-sq * inv);
      k.entries(i, j) = v;
      k.entries(j, i) = v;
    }
  }
  return k;
}

}  // namespace da2
