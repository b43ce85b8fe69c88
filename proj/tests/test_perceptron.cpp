#include <catch2/catch_amalgamated.hpp>

#include "da2/dataset.hpp"
#include "da2/perceptron.hpp"

using namespace da2;

TEST_CASE("angle error of aligned, opposed, and orthogonal vectors") {
  const Eigen::Vector2d mu(1.0, 0.0);
  CHECK(angle_error(make_perceptron(mu, mu)) == 0.0);
  CHECK(angle_error(make_perceptron(-mu, mu)) == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(angle_error(make_perceptron({0.0, 2.0}, mu)) ==
        Catch::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(make_perceptron({0.0, 0.0}, mu), std::invalid_argument);
}

TEST_CASE("correctly classified points leave the state unchanged") {
  const PerceptronState s = make_perceptron({1.0, 0.0}, {1.0, 0.0});
  const PerceptronState next = perceptron_step(s, {0.5, 0.3}, 1);
  CHECK(next.updates == 0);
  CHECK(next.v == s.v);
}

TEST_CASE("boundary points trigger updates under the sign(0) = -1 convention") {
  const PerceptronState s = make_perceptron({1.0, 0.0}, {1.0, 0.0});
  const PerceptronState next = perceptron_step(s, {0.0, 1.0}, 1);
  CHECK(next.updates == 1);
  CHECK(next.v == Eigen::Vector2d(1.0, 1.0));
  CHECK(next.theta == Catch::Approx(M_PI / 4.0).epsilon(1e-12));
}

TEST_CASE("theta tracks the recomputed angle after every update") {
  auto rng = make_rng(3, SeedDomain::perceptron);
  const Eigen::Vector2d mu = random_unit_vector(rng);
  PerceptronState s = make_perceptron(random_unit_vector(rng), mu);
  for (int i = 0; i < 500; ++i) {
    const Eigen::Vector2d x = uniform_disk_point(rng);
    s = perceptron_step(s, x, mu.dot(x) >= 0.0 ? 1 : -1);
    CHECK(s.theta == Catch::Approx(angle_between(s.v, s.mu)).margin(1e-9));
  }
}

TEST_CASE("long streams usually, but not always, reduce the angle") {
  int improved = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto rng = make_rng(11, SeedDomain::perceptron, trial);
    const Eigen::Vector2d mu = random_unit_vector(rng);
    PerceptronState s = make_perceptron(random_unit_vector(rng), mu);
    const double initial = s.theta;
    for (int i = 0; i < 10000; ++i) {
      const Eigen::Vector2d x = uniform_disk_point(rng);
      s = perceptron_step(s, x, mu.dot(x) >= 0.0 ? 1 : -1);
    }
    if (s.theta <= initial) ++improved;
  }
  CHECK(improved > 50);
  CHECK(improved < 100);
}

TEST_CASE("a perfectly aligned start must worsen on its first update") {
  const Eigen::Vector2d mu(0.0, 1.0);
  PerceptronState s = make_perceptron(mu, mu);
  // boundary point: correctly labeled but treated as a mistake
  s = perceptron_step(s, {1.0, 0.0}, 1);
  CHECK(s.updates == 1);
  CHECK(s.theta > 0.0);
}

TEST_CASE("monotonicity estimate is strictly uncertain") {
  const double est = monotonicity_experiment(1000, 100, 11);
  CHECK(est > 0.0);
  CHECK(est < 1.0);
  CHECK(est == monotonicity_experiment(1000, 100, 11));  // deterministic
}

TEST_CASE("monotonicity experiment contract") {
  CHECK_THROWS_AS(monotonicity_experiment(100, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(monotonicity_experiment(0, 10, 1), std::invalid_argument);
}

TEST_CASE("density identity degenerate cases") {
  CHECK(density_identity(0.4, 0.4, 50).gap == 0.0);
  const DensityIdentity full = density_identity(0.0, M_PI, 123);
  CHECK(std::abs(full.lhs) == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(full.rhs) == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(density_identity(0.3, 0.7, 1000).gap < 1e-12);
}

TEST_CASE("density identity holds across a randomized sweep") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> angle(0.0, M_PI);
  std::uniform_int_distribution<long> count(1, 100000);
  for (int i = 0; i < 1000; ++i)
    CHECK(density_identity(angle(rng), angle(rng), count(rng)).gap <= 1e-12);
}

TEST_CASE("density identity rejects out-of-range angles") {
  CHECK_THROWS_AS(density_identity(-0.1, 0.5, 10), std::invalid_argument);
  CHECK_THROWS_AS(density_identity(0.1, 3.5, 10), std::invalid_argument);
  CHECK_THROWS_AS(density_identity(0.1, 0.5, 0), std::invalid_argument);
}

TEST_CASE("label complexity bound at the pinned reference point") {
  const double v = label_complexity_bound({0.5, 0.05, 2});
  CHECK(v == Catch::Approx(256.0 * std::log(24.0) + std::log(80.0)).margin(1e-9));
  CHECK(v == Catch::Approx(817.97).margin(0.01));
}

TEST_CASE("label complexity bound rejects boundary arguments") {
  CHECK_THROWS_AS(label_complexity_bound({1.0, 0.05, 2}), std::invalid_argument);
  CHECK_THROWS_AS(label_complexity_bound({0.0, 0.05, 2}), std::invalid_argument);
  CHECK_THROWS_AS(label_complexity_bound({0.5, 1.0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(label_complexity_bound({0.5, 0.05, 1}), std::invalid_argument);
}

TEST_CASE("label complexity bound shrinks toward ln(4/delta)") {
  const double limit = std::log(4.0 / 0.05);
  CHECK(label_complexity_bound({0.5, 0.05, 200}) ==
        Catch::Approx(limit).margin(1e-9));
}

TEST_CASE("label complexity bound is monotone in m and delta") {
  double prev = std::numeric_limits<double>::infinity();
  for (long m = 2; m <= 30; ++m) {
    const double v = label_complexity_bound({0.3, 0.05, m});
    CHECK(v < prev);
    prev = v;
  }
  prev = std::numeric_limits<double>::infinity();
  for (double delta : {0.01, 0.05, 0.1, 0.3, 0.6, 0.9}) {
    const double v = label_complexity_bound({0.3, delta, 5});
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("theta/pi agrees with empirical disagreement on the disk") {
  auto rng = make_rng(31, SeedDomain::perceptron);
  for (int pair = 0; pair < 3; ++pair) {
    const Eigen::Vector2d mu = random_unit_vector(rng);
    const Eigen::Vector2d v = random_unit_vector(rng);
    const PerceptronState s = make_perceptron(v, mu);
    int disagree = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
      const Eigen::Vector2d x = uniform_disk_point(rng);
      if ((v.dot(x) >= 0.0) != (mu.dot(x) >= 0.0)) ++disagree;
    }
    CHECK(static_cast<double>(disagree) / n ==
          Catch::Approx(angle_error(s)).margin(0.005));
  }
}
