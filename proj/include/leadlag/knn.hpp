#pragma once

// Chebyshev-metric neighbour search used by the KSG estimators. The brute
// force routines are the reference; the sorted 1-D counter must agree with
// them exactly.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "leadlag/error.hpp"

namespace leadlag {

// n points of fixed dimension, stored row-major.
class PointSet {
 public:
  PointSet(std::size_t dim, std::vector<double> data) : dim_(dim), data_(std::move(data)) {
    if (dim_ == 0 || data_.size() % dim_ != 0) throw DataError("point data does not match dimension");
  }

  // Stacks equal-length coordinate columns into points.
  static PointSet from_columns(std::span<const std::span<const double>> columns) {
    if (columns.empty()) throw DataError("no coordinate columns");
    const std::size_t n = columns.front().size();
    std::vector<double> data;
    data.reserve(n * columns.size());
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& c : columns) {
        if (c.size() != n) throw DataError("coordinate columns differ in length");
        data.push_back(c[i]);
      }
    }
    return PointSet(columns.size(), std::move(data));
  }

  std::size_t size() const { return data_.size() / dim_; }
  std::size_t dim() const { return dim_; }
  std::span<const double> operator[](std::size_t i) const { return {data_.data() + i * dim_, dim_}; }

 private:
  std::size_t dim_;
  std::vector<double> data_;
};

inline double chebyshev(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) d = std::max(d, std::abs(a[c] - b[c]));
  return d;
}

// Distance from each point to its k-th nearest other point, where the
// distance in the product space is the max of the per-block Chebyshev
// distances (equivalently the Chebyshev distance over all coordinates).
inline std::vector<double> kth_neighbor_distances(std::span<const PointSet* const> blocks, std::size_t k) {
  if (blocks.empty()) throw DataError("no point blocks");
  const std::size_t n = blocks.front()->size();
  for (const auto* b : blocks) {
    if (b->size() != n) throw DataError("point blocks differ in size");
  }
  if (k < 1 || k >= n) {
    throw DataError("k_neighbors = " + std::to_string(k) + " requires more than k points, got " +
                    std::to_string(n));
  }
  std::vector<double> out(n);
  std::vector<double> dist;
  dist.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    dist.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      double d = 0.0;
      for (const auto* b : blocks) d = std::max(d, chebyshev((*b)[i], (*b)[j]));
      dist.push_back(d);
    }
    std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k - 1), dist.end());
    out[i] = dist[k - 1];
  }
  return out;
}

inline void check_radii(const PointSet& points, std::span<const double> radii) {
  if (radii.size() != points.size()) {
    throw DataError("radius count " + std::to_string(radii.size()) + " does not match point count " +
                    std::to_string(points.size()));
  }
  for (double r : radii) {
    if (!(r >= 0.0)) throw DataError("neighbour radius must be non-negative");
  }
}

// Number of other points strictly inside radii[i] of point i. O(n^2).
inline std::vector<std::size_t> neighbor_counts_brute(const PointSet& points, std::span<const double> radii) {
  check_radii(points, radii);
  const std::size_t n = points.size();
  std::vector<std::size_t> counts(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && chebyshev(points[i], points[j]) < radii[i]) ++counts[i];
    }
  }
  return counts;
}

// Same result as neighbor_counts_brute. One-dimensional sets use a sorted
// copy and binary search; |v - x| < r is monotone along each side of x
// because rounded subtraction is monotone, so the partition points are exact.
inline std::vector<std::size_t> neighbor_counts(const PointSet& points, std::span<const double> radii) {
  if (points.dim() != 1) return neighbor_counts_brute(points, radii);
  check_radii(points, radii);
  const std::size_t n = points.size();
  std::vector<double> sorted(n);
  for (std::size_t i = 0; i < n; ++i) sorted[i] = points[i][0];
  std::sort(sorted.begin(), sorted.end());

  std::vector<std::size_t> counts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = points[i][0];
    const double r = radii[i];
    const auto mid = std::lower_bound(sorted.begin(), sorted.end(), x);
    const auto lo = std::partition_point(sorted.begin(), mid, [&](double v) { return !(x - v < r); });
    const auto hi = std::partition_point(mid, sorted.end(), [&](double v) { return v - x < r; });
    // [lo, hi) contains x itself whenever r > 0.
    const auto inside = static_cast<std::size_t>(hi - lo);
    counts[i] = r > 0.0 ? inside - 1 : 0;
  }
  return counts;
}

}  // namespace leadlag
