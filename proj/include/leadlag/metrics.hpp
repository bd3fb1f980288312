#pragma once

// Pairwise dependence estimators: absolute Pearson correlation, KSG mutual
// information and kNN transfer entropy. Information quantities are in nats.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leadlag/error.hpp"
#include "leadlag/ingest.hpp"
#include "leadlag/jitter.hpp"
#include "leadlag/knn.hpp"
#include "leadlag/special.hpp"

namespace leadlag {

enum class MetricKind { Correlation, MutualInformation, TransferEntropy };

inline std::string_view to_string(MetricKind m) {
  switch (m) {
    case MetricKind::Correlation: return "correlation";
    case MetricKind::MutualInformation: return "mi";
    case MetricKind::TransferEntropy: return "te";
  }
  return "unknown";
}

inline MetricKind parse_metric(std::string_view s) {
  if (s == "correlation" || s == "corr") return MetricKind::Correlation;
  if (s == "mi" || s == "mutual_information") return MetricKind::MutualInformation;
  if (s == "te" || s == "transfer_entropy") return MetricKind::TransferEntropy;
  throw UsageError("unknown metric '" + std::string(s) + "' (expected correlation, mi or te)");
}

struct EstimatorConfig {
  std::size_t k_neighbors = 3;
  std::size_t embedding_length = 1;  // TE history length l
  double jitter_scale = 1e-10;
  std::uint64_t seed = 0;
  bool clip_negative = true;

  void validate() const {
    if (k_neighbors < 1) throw UsageError("k_neighbors must be at least 1");
    if (embedding_length < 1) throw UsageError("embedding length must be at least 1");
    if (!(jitter_scale >= 0.0) || !std::isfinite(jitter_scale)) {
      throw UsageError("jitter scale must be a finite non-negative number");
    }
  }

  friend bool operator==(const EstimatorConfig&, const EstimatorConfig&) = default;
};

// |r| of the pair. The normalisation factor cancels, so plain sums are used.
inline double pearson_abs(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw DataError("correlation inputs differ in length");
  if (xs.size() < kMinOverlap) {
    throw DataError("correlation needs at least " + std::to_string(kMinOverlap) + " samples");
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t t = 0; t < xs.size(); ++t) {
    const double dx = xs[t] - mx;
    const double dy = ys[t] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw DataError("degenerate series: first input has zero variance");
  if (syy == 0.0) throw DataError("degenerate series: second input has zero variance");
  return std::min(1.0, std::abs(sxy) / std::sqrt(sxx * syy));
}

inline double pearson_abs(const AlignedPair& pair) { return pearson_abs(pair.xs, pair.ys); }

// Unclipped KSG (first algorithm) estimate of I(X;Y) for point sets with
// matching size: psi(k) + psi(n) - <psi(n_x + 1) + psi(n_y + 1)>.
inline double ksg_estimate(const PointSet& x, const PointSet& y, std::size_t k) {
  const std::size_t n = x.size();
  if (y.size() != n) throw DataError("KSG marginals differ in size");
  if (k < 1 || n < k + 1) {
    throw DataError("KSG with k_neighbors = " + std::to_string(k) + " needs at least " +
                    std::to_string(k + 1) + " samples, got " + std::to_string(n));
  }
  const std::array<const PointSet*, 2> blocks{&x, &y};
  const auto eps = kth_neighbor_distances(blocks, k);
  const auto nx = neighbor_counts(x, eps);
  const auto ny = neighbor_counts(y, eps);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += digamma(static_cast<double>(nx[i] + 1)) + digamma(static_cast<double>(ny[i] + 1));
  }
  return digamma(static_cast<double>(k)) + digamma(static_cast<double>(n)) - acc / static_cast<double>(n);
}

namespace detail {

inline void check_ksg_size(std::size_t n, const EstimatorConfig& cfg) {
  cfg.validate();
  if (cfg.k_neighbors >= n) {
    throw DataError("k_neighbors = " + std::to_string(cfg.k_neighbors) + " must be below the sample count " +
                    std::to_string(n));
  }
}

inline double finish(double estimate, const EstimatorConfig& cfg) {
  if (!std::isfinite(estimate)) throw NumericalError("estimator produced a non-finite value");
  return cfg.clip_negative ? std::max(0.0, estimate) : estimate;
}

}  // namespace detail

// Jitter is keyed by the pair's series ids and base offsets, so swapping
// the two inputs gives the same jittered points and an identical estimate.
inline double ksg_mutual_information(const AlignedPair& pair, const EstimatorConfig& cfg) {
  if (pair.xs.size() != pair.ys.size()) throw DataError("paired vectors differ in length");
  detail::check_ksg_size(pair.xs.size(), cfg);
  const auto xs = jittered(pair.xs, pair.a, pair.x_offset, cfg.jitter_scale, cfg.seed);
  const auto ys = jittered(pair.ys, pair.b, pair.y_offset, cfg.jitter_scale, cfg.seed);
  const PointSet px(1, xs);
  const PointSet py(1, ys);
  return detail::finish(ksg_estimate(px, py, cfg.k_neighbors), cfg);
}

namespace detail {

// T_{X->Y} = I(Y_t ; [X_past, Y_past]) - I(Y_t ; Y_past) on already
// jittered series.
inline double transfer_entropy_prepared(std::span<const double> source, std::span<const double> target,
                                        const EstimatorConfig& cfg) {
  const std::size_t l = cfg.embedding_length;
  const std::size_t rows = target.size() - l;
  std::vector<double> future(rows);
  std::vector<double> joint_past;
  std::vector<double> target_past;
  joint_past.reserve(rows * 2 * l);
  target_past.reserve(rows * l);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t t = r + l;
    future[r] = target[t];
    for (std::size_t h = 1; h <= l; ++h) joint_past.push_back(source[t - h]);
    for (std::size_t h = 1; h <= l; ++h) joint_past.push_back(target[t - h]);
    for (std::size_t h = 1; h <= l; ++h) target_past.push_back(target[t - h]);
  }
  const PointSet fut(1, std::move(future));
  const PointSet both(2 * l, std::move(joint_past));
  const PointSet own(l, std::move(target_past));
  const std::size_t k = cfg.k_neighbors;
  return ksg_estimate(fut, both, k) - ksg_estimate(fut, own, k);
}

inline void check_te_sizes(std::size_t source, std::size_t target, const EstimatorConfig& cfg) {
  cfg.validate();
  if (source != target) {
    throw DataError("transfer entropy inputs differ in length (" + std::to_string(source) + " vs " +
                    std::to_string(target) + ")");
  }
  const std::size_t need = cfg.k_neighbors + cfg.embedding_length + 2;
  if (source < need) {
    throw DataError("transfer entropy needs at least " + std::to_string(need) + " samples, got " +
                    std::to_string(source));
  }
}

}  // namespace detail

// Information flowing from `source` into `target`; both time-aligned.
// Jitter uses the given ids and base offsets.
inline double transfer_entropy(std::span<const double> source, std::span<const double> target,
                               const EstimatorConfig& cfg, SeriesId source_id = {0, 0},
                               SeriesId target_id = {1, 0}, std::size_t source_offset = 0,
                               std::size_t target_offset = 0) {
  detail::check_te_sizes(source.size(), target.size(), cfg);
  const auto xs = jittered(source, source_id, source_offset, cfg.jitter_scale, cfg.seed);
  const auto ys = jittered(target, target_id, target_offset, cfg.jitter_scale, cfg.seed);
  return detail::finish(detail::transfer_entropy_prepared(xs, ys, cfg), cfg);
}

// T from pair.xs (series a) into pair.ys (series b).
inline double transfer_entropy(const AlignedPair& pair, const EstimatorConfig& cfg) {
  return transfer_entropy(pair.xs, pair.ys, cfg, pair.a, pair.b, pair.x_offset, pair.y_offset);
}

}  // namespace leadlag
