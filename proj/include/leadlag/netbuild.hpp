#pragma once

// Lagged-variable lead-lag graph and its variable-level aggregation.
//
// Edges of the lagged graph point toward the pairwise lead: an edge runs
// from the later-time node (lower lag) to the earlier-time node (higher
// lag) of a pair of distinct variables. Only raw metric values and lag
// distances are stored; the decayed weight raw * a^D is evaluated per a.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "leadlag/error.hpp"
#include "leadlag/ingest.hpp"
#include "leadlag/metrics.hpp"
#include "leadlag/parallel.hpp"

namespace leadlag {

using NodeId = SeriesId;

struct LeadLagEdge {
  NodeId from;  // follower: lower lag, later in time
  NodeId to;    // lead: higher lag, earlier in time
  double raw = 0.0;
  std::size_t lag_distance = 0;

  friend bool operator==(const LeadLagEdge&, const LeadLagEdge&) = default;
};

struct LeadLagGraph {
  std::vector<std::string> variable_names;
  std::size_t max_lag = 0;
  MetricKind metric = MetricKind::Correlation;
  EstimatorConfig config;
  std::vector<LeadLagEdge> edges;  // sorted by (from, to)

  std::size_t num_variables() const { return variable_names.size(); }
  std::size_t num_nodes() const { return variable_names.size() * (max_lag + 1); }

  // Node index used by exports: variable-major, lag-minor.
  std::size_t node_index(NodeId id) const { return id.variable * (max_lag + 1) + id.lag; }

  std::vector<NodeId> nodes() const {
    std::vector<NodeId> out;
    out.reserve(num_nodes());
    for (std::size_t i = 0; i < num_variables(); ++i) {
      for (std::size_t k = 0; k <= max_lag; ++k) out.push_back({i, k});
    }
    return out;
  }

  friend bool operator==(const LeadLagGraph&, const LeadLagGraph&) = default;
};

// Number of (follower, lead) node pairs with distinct variables and
// distinct lags: V(V-1) * (L+1)L/2.
inline std::size_t admissible_pair_count(std::size_t variables, std::size_t max_lag) {
  return variables * (variables - 1) * (max_lag + 1) * max_lag / 2;
}

// Validates the structural invariants of an edge list against its graph.
inline void validate(const LeadLagGraph& g) {
  for (const auto& e : g.edges) {
    if (e.from.variable >= g.num_variables() || e.to.variable >= g.num_variables() ||
        e.from.lag > g.max_lag || e.to.lag > g.max_lag) {
      throw DataError("edge references a node outside the graph");
    }
    if (e.from.variable == e.to.variable) throw DataError("edge between lags of the same variable");
    if (e.to.lag <= e.from.lag) throw DataError("edge must point from a lower lag to a higher lag");
    if (e.lag_distance != e.to.lag - e.from.lag) throw DataError("edge lag distance does not match its lags");
    if (!(e.raw >= 0.0) || !std::isfinite(e.raw)) throw DataError("edge raw value must be finite and >= 0");
  }
}

namespace detail {

inline std::string node_label(const std::vector<std::string>& names, NodeId id) {
  return names.at(id.variable) + "@lag" + std::to_string(id.lag);
}

template <typename E>
[[noreturn]] void rethrow_with_context(const E& e, const std::string& context) {
  throw E(context + ": " + e.what());
}

}  // namespace detail

// Raw metric for one admissible (follower, lead) pair. For transfer
// entropy the lead is the source of information flow.
inline double pair_metric(const LaggedPanel& panel, MetricKind metric, const EstimatorConfig& cfg, NodeId lead,
                          NodeId follower) {
  const auto pair = align_pair(panel, lead, follower);
  switch (metric) {
    case MetricKind::Correlation: return pearson_abs(pair);
    case MetricKind::MutualInformation: return ksg_mutual_information(pair, cfg);
    case MetricKind::TransferEntropy: return transfer_entropy(pair, cfg);
  }
  throw UsageError("unknown metric");
}

inline LeadLagGraph build_lead_lag_graph(const LaggedPanel& panel, MetricKind metric, const EstimatorConfig& cfg,
                                         std::size_t workers = 1) {
  cfg.validate();
  const std::size_t V = panel.num_variables();
  const std::size_t L = panel.max_lag();
  if (L < 1) throw UsageError("max lag must be at least 1 to form lead-lag edges");
  if (V < 2) throw UsageError("at least two variables are required");

  struct Candidate {
    NodeId from;
    NodeId to;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(admissible_pair_count(V, L));
  for (std::size_t j = 0; j < V; ++j) {
    for (std::size_t m = 0; m <= L; ++m) {
      for (std::size_t i = 0; i < V; ++i) {
        if (i == j) continue;
        for (std::size_t k = m + 1; k <= L; ++k) candidates.push_back({{j, m}, {i, k}});
      }
    }
  }

  LeadLagGraph graph;
  graph.variable_names = panel.base().variable_names();
  graph.max_lag = L;
  graph.metric = metric;
  graph.config = cfg;

  std::vector<double> raws(candidates.size());
  parallel_for(candidates.size(), workers, [&](std::size_t idx) {
    const auto& c = candidates[idx];
    const auto context = "pair " + detail::node_label(graph.variable_names, c.to) + " -> " +
                         detail::node_label(graph.variable_names, c.from);
    try {
      raws[idx] = pair_metric(panel, metric, cfg, c.to, c.from);
    } catch (const UsageError& e) {
      detail::rethrow_with_context(e, context);
    } catch (const NumericalError& e) {
      detail::rethrow_with_context(e, context);
    } catch (const DataError& e) {
      detail::rethrow_with_context(e, context);
    }
  });

  for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
    if (raws[idx] > 0.0) {
      const auto& c = candidates[idx];
      graph.edges.push_back({c.from, c.to, raws[idx], c.to.lag - c.from.lag});
    }
  }
  return graph;
}

// raw * a^D
inline double edge_weight(double raw, std::size_t lag_distance, double a) {
  if (!(a >= 0.0 && a <= 1.0)) throw UsageError("decay parameter a must lie in [0, 1], got " + std::to_string(a));
  if (lag_distance < 1) throw DataError("lag distance must be at least 1");
  if (!(raw >= 0.0)) throw DataError("raw metric value must be non-negative");
  return raw * std::pow(a, static_cast<double>(lag_distance));
}

enum class Orientation { TowardLead, TowardLag };

inline std::string_view to_string(Orientation o) {
  return o == Orientation::TowardLead ? "toward-lead" : "toward-lag";
}

// Variable-level graph: weights(i, j) is the summed weight of i -> j.
class AggregatedGraph {
 public:
  AggregatedGraph(std::vector<std::string> names, std::vector<double> weights, Orientation orientation)
      : names_(std::move(names)), weights_(std::move(weights)), orientation_(orientation) {
    const std::size_t n = names_.size();
    if (weights_.size() != n * n) throw DataError("weight matrix does not match node count");
    for (std::size_t i = 0; i < n; ++i) {
      if (weights_[i * n + i] != 0.0) throw DataError("aggregated graph must have a zero diagonal");
    }
    for (double w : weights_) {
      if (!(w >= 0.0) || !std::isfinite(w)) throw DataError("aggregated weights must be finite and >= 0");
    }
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  Orientation orientation() const { return orientation_; }
  double weight(std::size_t from, std::size_t to) const { return weights_.at(from * size() + to); }
  std::span<const double> matrix() const { return weights_; }

  // Ordered pairs i != j; every such pair carries one directed weight.
  std::size_t directed_pair_count() const { return size() * (size() - 1); }
  std::size_t nonzero_edge_count() const {
    return static_cast<std::size_t>(std::count_if(weights_.begin(), weights_.end(), [](double w) { return w > 0.0; }));
  }

  friend bool operator==(const AggregatedGraph&, const AggregatedGraph&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<double> weights_;
  Orientation orientation_;
};

// Sums decayed weights over all lag pairs of each ordered variable pair.
// Edges are folded in their stored (from, to) order.
inline AggregatedGraph aggregate(const LeadLagGraph& graph, double a) {
  const std::size_t n = graph.num_variables();
  std::vector<double> w(n * n, 0.0);
  for (const auto& e : graph.edges) {
    w[e.from.variable * n + e.to.variable] += edge_weight(e.raw, e.lag_distance, a);
  }
  return AggregatedGraph(graph.variable_names, std::move(w), Orientation::TowardLead);
}

inline AggregatedGraph reverse(const AggregatedGraph& g) {
  const std::size_t n = g.size();
  std::vector<double> t(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[j * n + i] = g.weight(i, j);
  }
  const auto flipped = g.orientation() == Orientation::TowardLead ? Orientation::TowardLag : Orientation::TowardLead;
  return AggregatedGraph(g.names(), std::move(t), flipped);
}

}  // namespace leadlag
