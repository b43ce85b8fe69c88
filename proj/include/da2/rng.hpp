#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace da2 {

// Fixed per-subsystem offsets for fanning one global seed out to
// independent streams. Adding trials never perturbs earlier ones because
// each trial mixes its own index.
enum class SeedDomain : std::uint64_t {
  dataset = 0x01,
  splitting = 0x02,
  perceptron = 0x03,
  sampling = 0x04,
  noise = 0x05,
  query = 0x06,
};

// splitmix64 finalizer; decorrelates nearby seeds before feeding mt19937_64.
inline std::uint64_t mix_seed(std::uint64_t seed, SeedDomain domain,
                              std::uint64_t index = 0) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (static_cast<std::uint64_t>(domain) + 1) +
                    0xbf58476d1ce4e5b9ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::mt19937_64 make_rng(std::uint64_t seed, SeedDomain domain,
                                std::uint64_t index = 0) {
  return std::mt19937_64(mix_seed(seed, domain, index));
}

// Uniform in the unit disk: inverse-CDF radius (r = sqrt(u)) keeps the
// draw exactly uniform in area.
inline Eigen::Vector2d uniform_disk_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = std::sqrt(unit(rng));
  const double phi = 2.0 * M_PI * unit(rng);
  return {r * std::cos(phi), r * std::sin(phi)};
}

inline Eigen::Vector2d random_unit_vector(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double phi = 2.0 * M_PI * unit(rng);
  return {std::cos(phi), std::sin(phi)};
}

// k distinct draws from {0..n-1}, order of first selection preserved.
inline std::vector<int> sample_without_replacement(int n, int k,
                                                   std::mt19937_64& rng) {
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  std::vector<int> out;
  out.reserve(k);
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    const int j = pick(rng);
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
  return out;
}

}  // namespace da2
