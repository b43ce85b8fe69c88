#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "da2/rng.hpp"

namespace da2 {

// Thrown on malformed input files; carries the offending line number.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, int line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct Dataset {
  Eigen::MatrixXd features;       // n x d
  Eigen::VectorXi labels;         // contiguous ids in {0..C-1}
  std::string name;
  std::vector<long> original_labels;  // id -> label value as found in the file

  int n() const { return static_cast<int>(features.rows()); }
  int dim() const { return static_cast<int>(features.cols()); }
  int num_classes() const {
    return labels.size() == 0 ? 0 : labels.maxCoeff() + 1;
  }
};

enum class NoiseKind { bounded, adversarial };

struct NoiseModel {
  NoiseKind kind = NoiseKind::bounded;
  double level = 0.0;  // eta in [0,1/2] for bounded, v in [0,1] for adversarial
  std::uint64_t seed = 0;
};

enum class DatasetFormat { dense_csv, sparse_text };

namespace detail {

inline double parse_number(const std::string& cell, int line) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(cell, &pos);
    while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
    if (pos != cell.size()) throw std::invalid_argument(cell);
    if (!std::isfinite(v)) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw FormatError("not a finite number: '" + cell + "'", line);
  }
}

inline long parse_label(const std::string& cell, int line) {
  const double v = parse_number(cell, line);
  const long l = static_cast<long>(std::llround(v));
  if (static_cast<double>(l) != v)
    throw FormatError("label must be integral: '" + cell + "'", line);
  return l;
}

// Remap arbitrary label values to contiguous {0..C-1}; sorted unique order
// keeps the mapping independent of row order.
inline void remap_labels(const std::vector<long>& raw, Dataset& out) {
  std::map<long, int> ids;
  for (long l : raw) ids.emplace(l, 0);
  int next = 0;
  out.original_labels.clear();
  for (auto& [value, id] : ids) {
    id = next++;
    out.original_labels.push_back(value);
  }
  out.labels.resize(static_cast<int>(raw.size()));
  for (int i = 0; i < static_cast<int>(raw.size()); ++i)
    out.labels[i] = ids.at(raw[i]);
}

}  // namespace detail

inline Dataset parse_dense_csv(std::istream& in, const std::string& name) {
  std::vector<std::vector<double>> rows;
  std::vector<long> raw_labels;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() < 2)
      throw FormatError("expected label plus at least one feature", lineno);
    raw_labels.push_back(detail::parse_label(cells[0], lineno));
    std::vector<double> row;
    for (std::size_t j = 1; j < cells.size(); ++j)
      row.push_back(detail::parse_number(cells[j], lineno));
    if (!rows.empty() && row.size() != rows.front().size())
      throw FormatError("inconsistent column count", lineno);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("empty dataset: " + name);

  Dataset d;
  d.name = name;
  d.features.resize(static_cast<int>(rows.size()),
                    static_cast<int>(rows.front().size()));
  for (int i = 0; i < d.features.rows(); ++i)
    for (int j = 0; j < d.features.cols(); ++j) d.features(i, j) = rows[i][j];
  detail::remap_labels(raw_labels, d);
  return d;
}

// "label idx:val idx:val ..." with 1-based indices; missing entries are 0.
inline Dataset parse_sparse_text(std::istream& in, const std::string& name) {
  std::vector<std::vector<std::pair<int, double>>> rows;
  std::vector<long> raw_labels;
  std::string line;
  int lineno = 0;
  int max_index = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) continue;
    raw_labels.push_back(detail::parse_label(tok, lineno));
    std::vector<std::pair<int, double>> row;
    while (ss >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos)
        throw FormatError("expected idx:val, got '" + tok + "'", lineno);
      const double idx_val = detail::parse_number(tok.substr(0, colon), lineno);
      const int idx = static_cast<int>(idx_val);
      if (static_cast<double>(idx) != idx_val || idx < 1)
        throw FormatError("feature index must be a positive integer", lineno);
      row.emplace_back(idx, detail::parse_number(tok.substr(colon + 1), lineno));
      max_index = std::max(max_index, idx);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("empty dataset: " + name);

  Dataset d;
  d.name = name;
  d.features = Eigen::MatrixXd::Zero(static_cast<int>(rows.size()),
                                     std::max(max_index, 1));
  for (int i = 0; i < static_cast<int>(rows.size()); ++i)
    for (const auto& [idx, val] : rows[i]) d.features(i, idx - 1) = val;
  detail::remap_labels(raw_labels, d);
  return d;
}

inline Dataset load_dataset(const std::string& path, DatasetFormat format) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open dataset file: " + path);
  return format == DatasetFormat::dense_csv ? parse_dense_csv(in, path)
                                            : parse_sparse_text(in, path);
}

inline void save_dense_csv(const Dataset& d, std::ostream& out) {
  out.precision(17);
  for (int i = 0; i < d.n(); ++i) {
    out << d.original_labels.at(d.labels[i]);
    for (int j = 0; j < d.dim(); ++j) out << ',' << d.features(i, j);
    out << '\n';
  }
}

struct DiskDataset {
  Dataset data;
  Eigen::Vector2d mu;  // true halfspace direction
};

inline DiskDataset generate_uniform_disk(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("generate_uniform_disk: n must be >= 1");
  auto rng = make_rng(seed, SeedDomain::dataset);
  DiskDataset out;
  out.mu = random_unit_vector(rng);
  out.data.name = "disk:" + std::to_string(n);
  out.data.features.resize(n, 2);
  out.data.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector2d x = uniform_disk_point(rng);
    out.data.features.row(i) = x.transpose();
    // boundary points (exact zero inner product) go to the positive class
    out.data.labels[i] = out.mu.dot(x) >= 0.0 ? 1 : 0;
  }
  out.data.original_labels = {0, 1};
  return out;
}

inline Dataset generate_gaussian_blobs(int num_classes, int per_class,
                                       double spread, std::uint64_t seed) {
  if (num_classes < 2 || per_class < 1 || spread <= 0.0)
    throw std::invalid_argument(
        "generate_gaussian_blobs: need C >= 2, per_class >= 1, spread > 0");
  auto rng = make_rng(seed, SeedDomain::dataset);
  std::normal_distribution<double> gauss(0.0, 1.0);
  // class centers on the scaled standard simplex: center_c = s * e_c
  const double scale = 1.5;
  Dataset d;
  d.name = "blobs:" + std::to_string(num_classes) + "x" + std::to_string(per_class);
  d.features.resize(num_classes * per_class, num_classes);
  d.labels.resize(num_classes * per_class);
  int row = 0;
  for (int c = 0; c < num_classes; ++c) {
    for (int i = 0; i < per_class; ++i, ++row) {
      for (int j = 0; j < num_classes; ++j)
        d.features(row, j) = (j == c ? scale : 0.0) + spread * gauss(rng);
      d.labels[row] = c;
    }
  }
  for (int c = 0; c < num_classes; ++c) d.original_labels.push_back(c);
  return d;
}

// Label-flip noise. Bounded flips each label independently with the given
// probability; adversarial flips exactly floor(level*n) labels, nearest the
// class boundary first when the generating direction mu is known.
inline Dataset apply_noise(const Dataset& d, const NoiseModel& m,
                           std::optional<Eigen::VectorXd> mu = std::nullopt) {
  const double max_level = m.kind == NoiseKind::bounded ? 0.5 : 1.0;
  if (m.level < 0.0 || m.level > max_level)
    throw std::invalid_argument("noise level out of range");
  Dataset out = d;
  if (m.level == 0.0) return out;
  const int classes = std::max(d.num_classes(), 2);
  auto rng = make_rng(m.seed, SeedDomain::noise);
  auto flip = [&](int i) {
    std::uniform_int_distribution<int> other(0, classes - 2);
    int c = other(rng);
    if (c >= out.labels[i]) ++c;
    out.labels[i] = c;
  };
  if (m.kind == NoiseKind::bounded) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < d.n(); ++i)
      if (unit(rng) < m.level) flip(i);
  } else {
    const int count = static_cast<int>(std::floor(m.level * d.n()));
    std::vector<int> order(d.n());
    for (int i = 0; i < d.n(); ++i) order[i] = i;
    if (mu && mu->size() == d.dim()) {
      std::vector<double> margin(d.n());
      for (int i = 0; i < d.n(); ++i)
        margin[i] = std::abs(mu->dot(d.features.row(i)));
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return margin[a] < margin[b]; });
    } else {
      order = sample_without_replacement(d.n(), d.n(), rng);
    }
    for (int i = 0; i < count; ++i) flip(order[i]);
  }
  return out;
}

// Per-column standardization to zero mean and unit variance; constant
// columns are left centered only.
inline Dataset standardize(const Dataset& d) {
  Dataset out = d;
  for (int j = 0; j < d.dim(); ++j) {
    const double mean = d.features.col(j).mean();
    const double var =
        (d.features.col(j).array() - mean).square().sum() / d.n();
    const double sd = std::sqrt(var);
    out.features.col(j).array() -= mean;
    if (sd > 0.0) out.features.col(j) /= sd;
  }
  return out;
}

}  // namespace da2
