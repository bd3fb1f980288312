#pragma once

// Counter-based tie-breaking noise. Each value is a pure function of
// (seed, variable, lag, sample index), so the noise added to a sample never
// depends on evaluation order or on how work is split across threads.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "leadlag/ingest.hpp"

namespace leadlag {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in [-1, 1).
inline double jitter_unit(std::uint64_t seed, SeriesId id, std::uint64_t index) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(id.variable));
  h = splitmix64(h ^ static_cast<std::uint64_t>(id.lag));
  h = splitmix64(h ^ index);
  const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

inline double sample_stddev(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

// xs[s] is treated as base-series sample (first_index + s) of `id`.
inline std::vector<double> jittered(std::span<const double> xs, SeriesId id, std::size_t first_index,
                                    double scale, std::uint64_t seed) {
  std::vector<double> out(xs.begin(), xs.end());
  if (scale == 0.0) return out;
  const double magnitude = scale * sample_stddev(xs);
  for (std::size_t s = 0; s < out.size(); ++s) {
    out[s] += magnitude * jitter_unit(seed, id, first_index + s);
  }
  return out;
}

}  // namespace leadlag
