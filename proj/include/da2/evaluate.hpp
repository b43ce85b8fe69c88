#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "da2/dataset.hpp"
#include "da2/kernel.hpp"
#include "da2/scoring.hpp"
#include "da2/splitting.hpp"

namespace da2 {

struct PipelineConfig {
  double sigma = 1.8;
  double u = 0.1;
  double lambda = 1e-3;
  double eps = 0.01;
  int restarts = 10;
  std::uint64_t seed = 0;
  SplitObjective objective = SplitObjective::minimize;
};

// One-vs-rest kernel regularized least squares. Per class c the coefficient
// vector solves (K_L + lambda I) a_c = y_c with y_c in {+1,-1}; prediction
// is the argmax class score.
struct Classifier {
  Eigen::MatrixXd support;  // training points, one per row
  Eigen::MatrixXd alphas;   // |support| x C
  double lambda = 1e-3;
  double sigma = 1.8;

  Eigen::VectorXd kernel_column(const Eigen::VectorXd& x) const {
    const double inv = 1.0 / (2.0 * sigma * sigma);
    Eigen::VectorXd k(support.rows());
    for (int i = 0; i < support.rows(); ++i)
      k[i] = std::exp(-(support.row(i).transpose() - x).squaredNorm() * inv);
    return k;
  }

  int predict(const Eigen::VectorXd& x) const {
    const Eigen::VectorXd scores = alphas.transpose() * kernel_column(x);
    int best = 0;
    for (int c = 1; c < scores.size(); ++c)
      if (scores[c] > scores[best]) best = c;
    return best;
  }
};

inline Classifier train_classifier(const Dataset& d,
                                   const std::vector<int>& labeled,
                                   double lambda, double sigma) {
  if (labeled.empty())
    throw std::invalid_argument("train_classifier: empty labeled set");
  if (lambda <= 0.0)
    throw std::invalid_argument("train_classifier: lambda must be > 0");
  const int m = static_cast<int>(labeled.size());
  const int classes = std::max(d.num_classes(), 2);
  Classifier c;
  c.lambda = lambda;
  c.sigma = sigma;
  c.support.resize(m, d.dim());
  for (int i = 0; i < m; ++i) c.support.row(i) = d.features.row(labeled[i]);

  const double inv = 1.0 / (2.0 * sigma * sigma);
  Eigen::MatrixXd gram(m, m);
  for (int i = 0; i < m; ++i) {
    gram(i, i) = 1.0 + lambda;
    for (int j = i + 1; j < m; ++j) {
      const double v =
          std::exp(-(c.support.row(i) - c.support.row(j)).squaredNorm() * inv);
      gram(i, j) = v;
      gram(j, i) = v;
    }
  }
  Eigen::MatrixXd targets = Eigen::MatrixXd::Constant(m, classes, -1.0);
  for (int i = 0; i < m; ++i) targets(i, d.labels[labeled[i]]) = 1.0;
  c.alphas = gram.ldlt().solve(targets);
  return c;
}

inline double error_rate(const Classifier& c, const Dataset& d) {
  if (d.n() == 0) throw std::invalid_argument("error_rate: empty dataset");
  int wrong = 0;
  for (int i = 0; i < d.n(); ++i)
    if (c.predict(d.features.row(i).transpose()) != d.labels[i]) ++wrong;
  return static_cast<double>(wrong) / d.n();
}

struct QuerySet {
  std::vector<int> indices;
  std::string method;  // da2 | random | ted | kcenter
  int budget = 0;
};

// Full pipeline: halve by active scoring, split the halfspace into k balls,
// then query the dataset point nearest each ball center.
inline QuerySet da2_query(const Dataset& d, int k, const PipelineConfig& cfg) {
  const int half = (d.n() + 1) / 2;
  if (k < 2 || k > half)
    throw std::invalid_argument("da2_query: need 2 <= k <= ceil(n/2)");
  const HalfspaceSelection sel = select_halfspace(d, cfg.sigma, cfg.u);
  Eigen::MatrixXd hpoints(half, d.dim());
  for (int i = 0; i < half; ++i)
    hpoints.row(i) = d.features.row(sel.indices[i]);
  SplitOptions opts;
  opts.objective = cfg.objective;
  const BallPartition part =
      split_balls(hpoints, k, cfg.eps, cfg.restarts, cfg.seed, opts);

  QuerySet q;
  q.method = "da2";
  q.budget = k;
  std::vector<bool> taken(d.n(), false);
  for (const Ball& b : part.balls) {
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int i = 0; i < d.n(); ++i) {
      if (taken[i]) continue;
      const double dist = (d.features.row(i).transpose() - b.center).squaredNorm();
      if (dist < best_dist) {  // ties keep the lowest index
        best_dist = dist;
        best = i;
      }
    }
    taken[best] = true;
    q.indices.push_back(best);
  }
  return q;
}

inline QuerySet baseline_query(const Dataset& d, int k,
                               const std::string& method, std::uint64_t seed,
                               const PipelineConfig& cfg = {}) {
  if (k < 1 || k > d.n())
    throw std::invalid_argument("baseline_query: k out of range");
  QuerySet q;
  q.method = method;
  q.budget = k;
  if (method == "random") {
    auto rng = make_rng(seed, SeedDomain::query);
    q.indices = sample_without_replacement(d.n(), k, rng);
  } else if (method == "ted") {
    q.indices = select_top(d, k, cfg.sigma, cfg.u).indices;
  } else if (method == "kcenter") {
    // farthest-first traversal from the medoid
    Eigen::MatrixXd dist(d.n(), d.n());
    for (int i = 0; i < d.n(); ++i)
      for (int j = 0; j < d.n(); ++j)
        dist(i, j) = (d.features.row(i) - d.features.row(j)).norm();
    int medoid = 0;
    for (int i = 1; i < d.n(); ++i)
      if (dist.row(i).sum() < dist.row(medoid).sum()) medoid = i;
    q.indices.push_back(medoid);
    Eigen::VectorXd nearest = dist.col(medoid);
    while (static_cast<int>(q.indices.size()) < k) {
      int far = 0;
      for (int i = 1; i < d.n(); ++i)
        if (nearest[i] > nearest[far]) far = i;
      q.indices.push_back(far);
      nearest = nearest.cwiseMin(dist.col(far));
    }
  } else {
    throw std::invalid_argument("baseline_query: unknown method " + method);
  }
  return q;
}

struct ErrorCurve {
  std::vector<int> budgets;
  std::vector<double> mean_error;
  std::vector<double> std_error;
  std::vector<double> best_error;  // minimum over trials
  int trials = 0;
  std::string method;
};

enum class SampleSpace { full, halfspace };

// Passive sampling protocol: per budget and trial, a uniform sample from the
// chosen space is labeled and trained on; error is measured transductively
// on the full dataset.
inline ErrorCurve passive_sampling_curve(const Dataset& d, SampleSpace space,
                                         const std::vector<int>& budgets,
                                         int trials, std::uint64_t seed,
                                         const PipelineConfig& cfg) {
  if (trials < 1)
    throw std::invalid_argument("passive_sampling_curve: trials must be >= 1");
  std::vector<int> pool;
  if (space == SampleSpace::halfspace) {
    pool = select_halfspace(d, cfg.sigma, cfg.u).indices;
  } else {
    pool.resize(d.n());
    for (int i = 0; i < d.n(); ++i) pool[i] = i;
  }
  ErrorCurve curve;
  curve.method = space == SampleSpace::halfspace ? "halfspace" : "full";
  curve.trials = trials;
  for (int b : budgets) {
    if (b < 1 || b > static_cast<int>(pool.size()))
      throw std::invalid_argument(
          "passive_sampling_curve: budget exceeds space size");
    std::vector<double> errs;
    for (int t = 0; t < trials; ++t) {
      auto rng = make_rng(seed, SeedDomain::sampling,
                          static_cast<std::uint64_t>(b) * 100003ull + t);
      const std::vector<int> picks =
          sample_without_replacement(static_cast<int>(pool.size()), b, rng);
      std::vector<int> labeled;
      labeled.reserve(b);
      for (int p : picks) labeled.push_back(pool[p]);
      const Classifier c = train_classifier(d, labeled, cfg.lambda, cfg.sigma);
      errs.push_back(error_rate(c, d));
    }
    const double mean =
        std::accumulate(errs.begin(), errs.end(), 0.0) / errs.size();
    double var = 0.0;
    for (double e : errs) var += (e - mean) * (e - mean);
    curve.budgets.push_back(b);
    curve.mean_error.push_back(mean);
    curve.std_error.push_back(std::sqrt(var / errs.size()));
    curve.best_error.push_back(*std::min_element(errs.begin(), errs.end()));
  }
  return curve;
}

// Querying comparison: the initial labeled set is one random point per
// class; each method's query set is unioned with it before training.
// Deterministic methods (da2, ted) are computed once and reused across
// trials.
inline std::vector<ErrorCurve> al_comparison(const Dataset& d,
                                             const std::vector<std::string>& methods,
                                             const std::vector<int>& budgets,
                                             int trials, std::uint64_t seed,
                                             const PipelineConfig& cfg) {
  if (trials < 1)
    throw std::invalid_argument("al_comparison: trials must be >= 1");
  const int classes = d.num_classes();
  std::vector<std::vector<int>> by_class(classes);
  for (int i = 0; i < d.n(); ++i) by_class[d.labels[i]].push_back(i);
  for (int c = 0; c < classes; ++c)
    if (by_class[c].empty())
      throw std::invalid_argument("al_comparison: class with zero points");

  // deterministic query sets, computed once per (method, budget)
  auto make_queries = [&](const std::string& method, int b,
                          std::uint64_t trial) -> std::vector<int> {
    if (b == 0) return {};
    if (method == "da2") {
      PipelineConfig c = cfg;
      return da2_query(d, b, c).indices;
    }
    return baseline_query(d, b, method,
                          mix_seed(seed, SeedDomain::query, trial), cfg)
        .indices;
  };
  std::vector<std::vector<std::vector<int>>> fixed(methods.size());
  for (std::size_t m = 0; m < methods.size(); ++m) {
    if (methods[m] == "da2" || methods[m] == "ted") {
      for (int b : budgets) fixed[m].push_back(make_queries(methods[m], b, 0));
    }
  }

  std::vector<ErrorCurve> curves(methods.size());
  for (std::size_t m = 0; m < methods.size(); ++m) {
    curves[m].method = methods[m];
    curves[m].trials = trials;
    curves[m].budgets = budgets;
    curves[m].mean_error.assign(budgets.size(), 0.0);
    curves[m].std_error.assign(budgets.size(), 0.0);
  }
  std::vector<std::vector<std::vector<double>>> errs(
      methods.size(), std::vector<std::vector<double>>(budgets.size()));

  for (int t = 0; t < trials; ++t) {
    auto rng = make_rng(seed, SeedDomain::sampling, t);
    std::vector<int> initial;
    for (int c = 0; c < classes; ++c) {
      std::uniform_int_distribution<int> pick(
          0, static_cast<int>(by_class[c].size()) - 1);
      initial.push_back(by_class[c][pick(rng)]);
    }
    for (std::size_t m = 0; m < methods.size(); ++m) {
      for (std::size_t bi = 0; bi < budgets.size(); ++bi) {
        std::vector<int> queries =
            fixed[m].empty() ? make_queries(methods[m], budgets[bi], t)
                             : fixed[m][bi];
        std::vector<int> labeled = initial;
        for (int q : queries)
          if (std::find(labeled.begin(), labeled.end(), q) == labeled.end())
            labeled.push_back(q);
        const Classifier c =
            train_classifier(d, labeled, cfg.lambda, cfg.sigma);
        errs[m][bi].push_back(error_rate(c, d));
      }
    }
  }
  for (std::size_t m = 0; m < methods.size(); ++m) {
    for (std::size_t bi = 0; bi < budgets.size(); ++bi) {
      const auto& e = errs[m][bi];
      const double mean = std::accumulate(e.begin(), e.end(), 0.0) / e.size();
      double var = 0.0;
      for (double x : e) var += (x - mean) * (x - mean);
      curves[m].mean_error[bi] = mean;
      curves[m].std_error[bi] = std::sqrt(var / e.size());
      curves[m].best_error.push_back(*std::min_element(e.begin(), e.end()));
    }
  }
  return curves;
}

}  // namespace da2
