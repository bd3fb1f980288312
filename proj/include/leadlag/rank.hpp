#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "leadlag/error.hpp"
#include "leadlag/netbuild.hpp"
#include "leadlag/parallel.hpp"

namespace leadlag {

struct PageRankConfig {
  double damping = 0.85;
  double tolerance = 1e-9;  // on the L1 change between iterates
  std::size_t max_iterations = 200;

  void validate() const {
    if (!(damping >= 0.0 && damping < 1.0)) {
      throw UsageError("damping must lie in [0, 1), got " + std::to_string(damping));
    }
    if (!(tolerance > 0.0)) throw UsageError("tolerance must be positive");
    if (max_iterations < 1) throw UsageError("max_iterations must be positive");
  }
};

// Weighted PageRank by power iteration over a row-major n x n matrix where
// weights[j * n + i] is the weight of edge j -> i. Rows with zero total
// weight spread their mass uniformly.
inline std::vector<double> pagerank(std::span<const double> weights, std::size_t n, const PageRankConfig& cfg) {
  cfg.validate();
  if (n == 0) throw DataError("pagerank of an empty graph");
  if (weights.size() != n * n) throw DataError("weight matrix does not match node count");

  const double nd = static_cast<double>(n);
  std::vector<double> out_weight(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) out_weight[j] += weights[j * n + i];
  }
  const bool all_dangling = std::all_of(out_weight.begin(), out_weight.end(), [](double w) { return w == 0.0; });
  if (all_dangling) return std::vector<double>(n, 1.0 / nd);

  const double d = cfg.damping;
  std::vector<double> pr(n, 1.0 / nd);
  std::vector<double> next(n);
  double residual = 0.0;
  for (std::size_t iter = 0; iter < cfg.max_iterations; ++iter) {
    double dangling = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (out_weight[j] == 0.0) dangling += pr[j];
    }
    const double base = (1.0 - d) / nd + d * dangling / nd;
    std::fill(next.begin(), next.end(), base);
    for (std::size_t j = 0; j < n; ++j) {
      if (out_weight[j] == 0.0) continue;
      const double share = d * pr[j] / out_weight[j];
      for (std::size_t i = 0; i < n; ++i) next[i] += share * weights[j * n + i];
    }
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual += std::abs(next[i] - pr[i]);
    pr.swap(next);
    if (residual < cfg.tolerance) return pr;
  }
  throw NumericalError("pagerank did not converge in " + std::to_string(cfg.max_iterations) +
                       " iterations (final L1 residual " + std::to_string(residual) + ")");
}

inline std::vector<double> pagerank(const AggregatedGraph& g, const PageRankConfig& cfg) {
  return pagerank(g.matrix(), g.size(), cfg);
}

inline std::vector<double> default_a_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(i / 10.0);
  return grid;
}

struct OrientationRanking {
  std::vector<std::vector<double>> pr;  // [a index][variable]
  std::vector<double> average;          // mean over the a grid
  std::vector<double> range;            // max - min over the a grid
  std::vector<std::size_t> order;       // variables by descending average
};

struct RankingReport {
  MetricKind metric = MetricKind::Correlation;
  std::vector<std::string> variable_names;
  std::vector<double> a_values;
  OrientationRanking influential;  // edges toward the lead
  OrientationRanking influenced;   // edges toward the lag

  std::size_t most_influential() const { return influential.order.front(); }
  std::size_t most_influenced() const { return influenced.order.front(); }
};

namespace detail {

inline void summarize(OrientationRanking& r, std::size_t n) {
  r.average.assign(n, 0.0);
  r.range.assign(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    double lo = r.pr.front()[v];
    double hi = lo;
    for (const auto& row : r.pr) {
      r.average[v] += row[v];
      lo = std::min(lo, row[v]);
      hi = std::max(hi, row[v]);
    }
    r.average[v] /= static_cast<double>(r.pr.size());
    r.range[v] = hi - lo;
  }
  r.order.resize(n);
  std::iota(r.order.begin(), r.order.end(), std::size_t{0});
  std::stable_sort(r.order.begin(), r.order.end(),
                   [&](std::size_t x, std::size_t y) { return r.average[x] > r.average[y]; });
}

}  // namespace detail

inline RankingReport rank_sweep(const LeadLagGraph& graph, const std::vector<double>& a_values,
                                const PageRankConfig& prcfg, std::size_t workers = 1) {
  prcfg.validate();
  if (a_values.empty()) throw UsageError("the a grid is empty");
  for (double a : a_values) {
    if (!(a >= 0.0 && a <= 1.0)) throw UsageError("decay parameter a must lie in [0, 1], got " + std::to_string(a));
  }
  const std::size_t n = graph.num_variables();
  RankingReport report;
  report.metric = graph.metric;
  report.variable_names = graph.variable_names;
  report.a_values = a_values;
  report.influential.pr.resize(a_values.size());
  report.influenced.pr.resize(a_values.size());

  parallel_for(a_values.size(), workers, [&](std::size_t idx) {
    const auto lead = aggregate(graph, a_values[idx]);
    report.influential.pr[idx] = pagerank(lead, prcfg);
    report.influenced.pr[idx] = pagerank(reverse(lead), prcfg);
  });

  detail::summarize(report.influential, n);
  detail::summarize(report.influenced, n);
  return report;
}

}  // namespace leadlag
