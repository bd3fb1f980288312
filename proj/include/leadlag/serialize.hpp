#pragma once

// JSON, CSV, DOT and GraphML renderings of graphs and ranking reports.
// Doubles are written in shortest round-trip form, so a JSON export read
// back with graph_from_json reproduces the in-memory graph exactly.

#include <string>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "leadlag/netbuild.hpp"
#include "leadlag/rank.hpp"

namespace leadlag {

using json = nlohmann::json;

inline std::string node_label(const LeadLagGraph& g, NodeId id) { return detail::node_label(g.variable_names, id); }

inline json estimator_to_json(const EstimatorConfig& cfg) {
  return {{"k_neighbors", cfg.k_neighbors},
          {"embedding_length", cfg.embedding_length},
          {"jitter_scale", cfg.jitter_scale},
          {"seed", cfg.seed},
          {"clip_negative", cfg.clip_negative}};
}

inline EstimatorConfig estimator_from_json(const json& j) {
  EstimatorConfig cfg;
  cfg.k_neighbors = j.at("k_neighbors").get<std::size_t>();
  cfg.embedding_length = j.at("embedding_length").get<std::size_t>();
  cfg.jitter_scale = j.at("jitter_scale").get<double>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.clip_negative = j.at("clip_negative").get<bool>();
  return cfg;
}

inline json graph_to_json(const LeadLagGraph& g, double a) {
  json nodes = json::array();
  for (const auto id : g.nodes()) {
    nodes.push_back({{"id", g.node_index(id)}, {"label", node_label(g, id)}, {"variable", id.variable}, {"lag", id.lag}});
  }
  json edges = json::array();
  for (const auto& e : g.edges) {
    edges.push_back({{"from", g.node_index(e.from)},
                     {"to", g.node_index(e.to)},
                     {"raw", e.raw},
                     {"D", e.lag_distance},
                     {"weight", edge_weight(e.raw, e.lag_distance, a)}});
  }
  return {{"layer", "lagged"},
          {"metric", to_string(g.metric)},
          {"a", a},
          {"max_lag", g.max_lag},
          {"variables", g.variable_names},
          {"estimator", estimator_to_json(g.config)},
          {"nodes", std::move(nodes)},
          {"edges", std::move(edges)}};
}

// Inverse of graph_to_json; the per-a "weight" attribute is ignored.
inline LeadLagGraph graph_from_json(const json& j) {
  try {
    if (j.at("layer").get<std::string>() != "lagged") throw DataError("JSON graph is not a lagged-layer export");
    LeadLagGraph g;
    g.variable_names = j.at("variables").get<std::vector<std::string>>();
    g.max_lag = j.at("max_lag").get<std::size_t>();
    g.metric = parse_metric(j.at("metric").get<std::string>());
    g.config = estimator_from_json(j.at("estimator"));
    const std::size_t per_var = g.max_lag + 1;
    auto node_of = [&](std::size_t idx) {
      if (idx >= g.num_nodes()) throw DataError("edge references unknown node " + std::to_string(idx));
      return NodeId{idx / per_var, idx % per_var};
    };
    for (const auto& e : j.at("edges")) {
      g.edges.push_back({node_of(e.at("from").get<std::size_t>()), node_of(e.at("to").get<std::size_t>()),
                         e.at("raw").get<double>(), e.at("D").get<std::size_t>()});
    }
    validate(g);
    return g;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed graph JSON: ") + e.what());
  }
}

inline json aggregated_to_json(const AggregatedGraph& g, MetricKind metric, double a) {
  json nodes = json::array();
  for (std::size_t i = 0; i < g.size(); ++i) nodes.push_back({{"id", i}, {"label", g.names()[i]}});
  json edges = json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (i != j) edges.push_back({{"from", i}, {"to", j}, {"weight", g.weight(i, j)}});
    }
  }
  return {{"layer", "aggregated"},
          {"metric", to_string(metric)},
          {"a", a},
          {"orientation", to_string(g.orientation())},
          {"variables", g.names()},
          {"nodes", std::move(nodes)},
          {"edges", std::move(edges)}};
}

inline AggregatedGraph aggregated_from_json(const json& j) {
  try {
    if (j.at("layer").get<std::string>() != "aggregated") throw DataError("JSON graph is not an aggregated export");
    auto names = j.at("variables").get<std::vector<std::string>>();
    const std::size_t n = names.size();
    std::vector<double> w(n * n, 0.0);
    for (const auto& e : j.at("edges")) {
      const auto from = e.at("from").get<std::size_t>();
      const auto to = e.at("to").get<std::size_t>();
      if (from >= n || to >= n) throw DataError("edge references unknown node");
      w[from * n + to] = e.at("weight").get<double>();
    }
    const auto o = j.at("orientation").get<std::string>();
    return AggregatedGraph(std::move(names), std::move(w), o == "toward-lag" ? Orientation::TowardLag : Orientation::TowardLead);
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed graph JSON: ") + e.what());
  }
}

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

inline std::string graph_to_dot(const LeadLagGraph& g, double a) {
  std::string out = fmt::format("digraph leadlag {{\n  graph [metric=\"{}\", a=\"{}\"];\n", to_string(g.metric), a);
  for (const auto id : g.nodes()) {
    out += fmt::format("  n{} [label=\"{}\"];\n", g.node_index(id), detail::dot_escape(node_label(g, id)));
  }
  for (const auto& e : g.edges) {
    out += fmt::format("  n{} -> n{} [raw=\"{}\", D=\"{}\", weight=\"{}\"];\n", g.node_index(e.from), g.node_index(e.to),
                       e.raw, e.lag_distance, edge_weight(e.raw, e.lag_distance, a));
  }
  out += "}\n";
  return out;
}

inline std::string aggregated_to_dot(const AggregatedGraph& g, MetricKind metric, double a) {
  std::string out = fmt::format("digraph leadlag {{\n  graph [metric=\"{}\", a=\"{}\", orientation=\"{}\"];\n",
                                to_string(metric), a, to_string(g.orientation()));
  for (std::size_t i = 0; i < g.size(); ++i) {
    out += fmt::format("  n{} [label=\"{}\"];\n", i, detail::dot_escape(g.names()[i]));
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (i != j) out += fmt::format("  n{} -> n{} [weight=\"{}\"];\n", i, j, g.weight(i, j));
    }
  }
  out += "}\n";
  return out;
}

namespace detail {

inline constexpr const char* kGraphmlHeader =
    "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";

}  // namespace detail

inline std::string graph_to_graphml(const LeadLagGraph& g, double a) {
  std::string out = detail::kGraphmlHeader;
  out +=
      "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
      "  <key id=\"variable\" for=\"node\" attr.name=\"variable\" attr.type=\"int\"/>\n"
      "  <key id=\"lag\" for=\"node\" attr.name=\"lag\" attr.type=\"int\"/>\n"
      "  <key id=\"raw\" for=\"edge\" attr.name=\"raw\" attr.type=\"double\"/>\n"
      "  <key id=\"D\" for=\"edge\" attr.name=\"D\" attr.type=\"int\"/>\n"
      "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n";
  out += fmt::format("  <graph id=\"{}\" edgedefault=\"directed\">\n", to_string(g.metric));
  for (const auto id : g.nodes()) {
    out += fmt::format(
        "    <node id=\"n{}\"><data key=\"label\">{}</data><data key=\"variable\">{}</data>"
        "<data key=\"lag\">{}</data></node>\n",
        g.node_index(id), detail::xml_escape(node_label(g, id)), id.variable, id.lag);
  }
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const auto& e = g.edges[k];
    out += fmt::format(
        "    <edge id=\"e{}\" source=\"n{}\" target=\"n{}\"><data key=\"raw\">{}</data>"
        "<data key=\"D\">{}</data><data key=\"weight\">{}</data></edge>\n",
        k, g.node_index(e.from), g.node_index(e.to), e.raw, e.lag_distance, edge_weight(e.raw, e.lag_distance, a));
  }
  out += "  </graph>\n</graphml>\n";
  return out;
}

inline std::string aggregated_to_graphml(const AggregatedGraph& g, MetricKind metric) {
  std::string out = detail::kGraphmlHeader;
  out +=
      "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
      "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n";
  out += fmt::format("  <graph id=\"{}\" edgedefault=\"directed\">\n", to_string(metric));
  for (std::size_t i = 0; i < g.size(); ++i) {
    out += fmt::format("    <node id=\"n{}\"><data key=\"label\">{}</data></node>\n", i, detail::xml_escape(g.names()[i]));
  }
  std::size_t k = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (i == j) continue;
      out += fmt::format("    <edge id=\"e{}\" source=\"n{}\" target=\"n{}\"><data key=\"weight\">{}</data></edge>\n", k++,
                         i, j, g.weight(i, j));
    }
  }
  out += "  </graph>\n</graphml>\n";
  return out;
}

// Structural counts recorded alongside a ranking report.
struct GraphSummary {
  std::size_t lagged_nodes = 0;
  std::size_t lagged_edges = 0;
  std::size_t admissible_pairs = 0;
  std::size_t aggregated_nodes = 0;
  std::size_t aggregated_edges = 0;  // nonzero ordered pairs at a = 1
};

inline GraphSummary summarize(const LeadLagGraph& g) {
  const auto agg = aggregate(g, 1.0);
  return {g.num_nodes(), g.edges.size(), admissible_pair_count(g.num_variables(), g.max_lag), agg.size(),
          agg.nonzero_edge_count()};
}

inline json ranking_to_json(const RankingReport& r, const GraphSummary& summary, const PageRankConfig& prcfg) {
  auto side = [&](const OrientationRanking& o) {
    std::vector<std::string> order;
    for (auto v : o.order) order.push_back(r.variable_names[v]);
    return json{{"pagerank", o.pr}, {"average", o.average}, {"range", o.range}, {"order", order}};
  };
  return {{"metric", to_string(r.metric)},
          {"variables", r.variable_names},
          {"a_values", r.a_values},
          {"pagerank_config",
           {{"damping", prcfg.damping}, {"tolerance", prcfg.tolerance}, {"max_iterations", prcfg.max_iterations}}},
          {"graph",
           {{"lagged_nodes", summary.lagged_nodes},
            {"lagged_edges", summary.lagged_edges},
            {"admissible_pairs", summary.admissible_pairs},
            {"aggregated_nodes", summary.aggregated_nodes},
            {"aggregated_edges", summary.aggregated_edges}}},
          {"influential", side(r.influential)},
          {"influenced", side(r.influenced)},
          {"most_influential", r.variable_names[r.most_influential()]},
          {"most_influenced", r.variable_names[r.most_influenced()]}};
}

inline std::string ranking_to_csv(const RankingReport& r) {
  std::string out = "metric,orientation,a,variable,pagerank\n";
  auto emit = [&](const char* orientation, const OrientationRanking& o) {
    for (std::size_t v = 0; v < r.variable_names.size(); ++v) {
      for (std::size_t ai = 0; ai < r.a_values.size(); ++ai) {
        out += fmt::format("{},{},{},{},{}\n", to_string(r.metric), orientation, r.a_values[ai], r.variable_names[v],
                           o.pr[ai][v]);
      }
    }
  };
  emit("influential", r.influential);
  emit("influenced", r.influenced);
  return out;
}

}  // namespace leadlag
