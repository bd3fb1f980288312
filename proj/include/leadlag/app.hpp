#pragma once

// Implementations of the describe / analyze / metrics / export commands.
// Every result is computed before the first file is written, and each file
// is written to a temporary name and renamed into place.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "leadlag/config.hpp"
#include "leadlag/describe.hpp"
#include "leadlag/ingest.hpp"
#include "leadlag/metrics.hpp"
#include "leadlag/netbuild.hpp"
#include "leadlag/rank.hpp"
#include "leadlag/serialize.hpp"
#include "leadlag/svg.hpp"

namespace leadlag {

inline constexpr std::string_view kToolName = "leadlag";
inline constexpr std::string_view kToolVersion = "1.0.0";

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  const auto tmp = fs::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp, ec);
      throw DataError("failed writing '" + tmp.string() + "'");
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw DataError("cannot move '" + tmp.string() + "' into place");
  }
}

// Files produced by one command, written together at the end.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {}

  void add(std::string name, std::string content) { files_.emplace_back(std::move(name), std::move(content)); }

  std::vector<std::filesystem::path> commit() const {
    std::vector<std::filesystem::path> written;
    for (const auto& [name, content] : files_) {
      write_file_atomic(dir_ / name, content);
      written.push_back(dir_ / name);
    }
    return written;
  }

 private:
  std::filesystem::path dir_;
  std::vector<std::pair<std::string, std::string>> files_;
};

struct LoadedInput {
  std::string bytes;
  TimeSeriesTable table;
  ReturnsTable returns;
};

inline LoadedInput load_input(const RunConfig& cfg) {
  if (cfg.input.empty()) throw UsageError("--input is required");
  LoadedInput in;
  in.bytes = read_file(cfg.input);
  try {
    in.table = parse_csv(in.bytes);
  } catch (const DataError& e) {
    throw DataError(cfg.input + ": " + e.what());
  }
  in.returns = rate_of_change(in.table);
  return in;
}

inline std::string manifest_json(std::string_view command, const RunConfig& cfg, std::string_view input_bytes,
                                 const nlohmann::json& extra = nlohmann::json::object()) {
  nlohmann::json m = {{"tool", kToolName},
                      {"version", kToolVersion},
                      {"command", command},
                      {"config", config_to_json(cfg)},
                      {"input_hash", fmt::format("fnv1a64:{:016x}", fnv1a64(input_bytes))}};
  if (!extra.empty()) m["request"] = extra;
  return m.dump(2) + "\n";
}

inline DescriptiveStats run_describe(const RunConfig& cfg, std::ostream& out) {
  const auto in = load_input(cfg);
  auto stats = describe(in.returns);
  out << describe_table(stats);
  OutputSet files(cfg.out);
  files.add("describe.csv", describe_csv(stats));
  files.add("manifest_describe.json", manifest_json("describe", cfg, in.bytes));
  files.commit();
  return stats;
}

struct MetricRun {
  LeadLagGraph graph;
  GraphSummary summary;
  RankingReport report;
};

struct AnalyzeResult {
  std::vector<MetricRun> runs;
  std::vector<std::filesystem::path> written;
};

inline AnalyzeResult run_analyze(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const auto in = load_input(cfg);
  const auto panel = build_lags(in.returns, cfg.max_lag);

  AnalyzeResult result;
  OutputSet files(cfg.out);
  for (const auto metric : cfg.metrics) {
    MetricRun run;
    run.graph = build_lead_lag_graph(panel, metric, cfg.estimator, cfg.workers);
    run.summary = summarize(run.graph);
    run.report = rank_sweep(run.graph, cfg.a_values, cfg.pagerank, cfg.workers);

    const std::string m(to_string(metric));
    if (cfg.wants("json")) {
      files.add("rankings_" + m + ".json", ranking_to_json(run.report, run.summary, cfg.pagerank).dump(2) + "\n");
    }
    if (cfg.wants("csv")) files.add("rankings_" + m + ".csv", ranking_to_csv(run.report));
    if (cfg.wants("svg")) {
      files.add("pagerank_" + m + "_influential.svg", pagerank_chart_svg(run.report, Orientation::TowardLead));
      files.add("pagerank_" + m + "_influenced.svg", pagerank_chart_svg(run.report, Orientation::TowardLag));
    }
    if (cfg.wants("dot") || cfg.wants("graphml")) {
      const auto agg = aggregate(run.graph, 1.0);
      if (cfg.wants("dot")) {
        files.add("graph_" + m + "_lagged.dot", graph_to_dot(run.graph, 1.0));
        files.add("graph_" + m + "_aggregated.dot", aggregated_to_dot(agg, metric, 1.0));
      }
      if (cfg.wants("graphml")) {
        files.add("graph_" + m + "_lagged.graphml", graph_to_graphml(run.graph, 1.0));
        files.add("graph_" + m + "_aggregated.graphml", aggregated_to_graphml(agg, metric));
      }
    }
    result.runs.push_back(std::move(run));
  }
  files.add("manifest.json", manifest_json("analyze", cfg, in.bytes));
  result.written = files.commit();

  for (const auto& run : result.runs) {
    const auto& r = run.report;
    out << fmt::format("{}: {} nodes, {} edges; aggregated {} nodes, {} edges\n", to_string(r.metric),
                       run.summary.lagged_nodes, run.summary.lagged_edges, run.summary.aggregated_nodes,
                       run.summary.aggregated_edges);
    out << fmt::format("  most influential: {}\n  most influenced:  {}\n", r.variable_names[r.most_influential()],
                       r.variable_names[r.most_influenced()]);
  }
  return result;
}

struct MetricsRequest {
  std::string first;
  std::size_t first_lag = 0;
  std::string second;
  std::size_t second_lag = 0;
};

struct MetricValue {
  MetricKind metric;
  double value;
};

inline std::size_t variable_index(const ReturnsTable& returns, const std::string& name) {
  const auto& names = returns.variable_names();
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw UsageError("unknown variable '" + name + "'");
  return static_cast<std::size_t>(it - names.begin());
}

// Raw metric values for one aligned pair; TE flows from the first series
// into the second.
inline std::vector<MetricValue> run_metrics(const RunConfig& cfg, const MetricsRequest& req, std::ostream& out) {
  cfg.estimator.validate();
  if (cfg.metrics.empty()) throw UsageError("at least one metric is required");
  const auto in = load_input(cfg);
  const auto i = variable_index(in.returns, req.first);
  const auto j = variable_index(in.returns, req.second);
  if (i == j) throw UsageError("the pair must name two different variables");
  const auto panel = build_lags(in.returns, std::max(req.first_lag, req.second_lag));
  const auto pair = align_pair(panel, {i, req.first_lag}, {j, req.second_lag});

  std::vector<MetricValue> values;
  for (const auto metric : cfg.metrics) {
    double v = 0.0;
    switch (metric) {
      case MetricKind::Correlation: v = pearson_abs(pair); break;
      case MetricKind::MutualInformation: v = ksg_mutual_information(pair, cfg.estimator); break;
      case MetricKind::TransferEntropy: v = transfer_entropy(pair, cfg.estimator); break;
    }
    values.push_back({metric, v});
    out << fmt::format("{}\t{}@lag{}\t{}@lag{}\tn={}\t{}\n", to_string(metric), req.first, req.first_lag, req.second,
                       req.second_lag, pair.n, v);
  }
  return values;
}

enum class Layer { Lagged, Aggregated };

inline Layer parse_layer(std::string_view s) {
  if (s == "lagged") return Layer::Lagged;
  if (s == "aggregated") return Layer::Aggregated;
  throw UsageError("unknown layer '" + std::string(s) + "' (expected lagged or aggregated)");
}

struct ExportRequest {
  Layer layer = Layer::Aggregated;
  double a = 1.0;
  Orientation orientation = Orientation::TowardLead;
};

inline std::vector<std::filesystem::path> run_export(const RunConfig& cfg, const ExportRequest& req, std::ostream& out) {
  cfg.validate();
  if (!(req.a >= 0.0 && req.a <= 1.0)) throw UsageError("--at must lie in [0, 1]");
  if (!cfg.wants("json") && !cfg.wants("dot") && !cfg.wants("graphml")) {
    throw UsageError("export writes json, dot or graphml; none was requested");
  }
  const auto in = load_input(cfg);
  const auto panel = build_lags(in.returns, cfg.max_lag);

  OutputSet files(cfg.out);
  for (const auto metric : cfg.metrics) {
    const auto graph = build_lead_lag_graph(panel, metric, cfg.estimator, cfg.workers);
    const std::string stem = "graph_" + std::string(to_string(metric)) + (req.layer == Layer::Lagged ? "_lagged" : "_aggregated");
    if (req.layer == Layer::Lagged) {
      if (cfg.wants("json")) files.add(stem + ".json", graph_to_json(graph, req.a).dump(2) + "\n");
      if (cfg.wants("dot")) files.add(stem + ".dot", graph_to_dot(graph, req.a));
      if (cfg.wants("graphml")) files.add(stem + ".graphml", graph_to_graphml(graph, req.a));
      out << fmt::format("{}: lagged graph, {} nodes, {} edges\n", to_string(metric), graph.num_nodes(), graph.edges.size());
    } else {
      auto agg = aggregate(graph, req.a);
      if (req.orientation == Orientation::TowardLag) agg = reverse(agg);
      if (cfg.wants("json")) files.add(stem + ".json", aggregated_to_json(agg, metric, req.a).dump(2) + "\n");
      if (cfg.wants("dot")) files.add(stem + ".dot", aggregated_to_dot(agg, metric, req.a));
      if (cfg.wants("graphml")) files.add(stem + ".graphml", aggregated_to_graphml(agg, metric));
      out << fmt::format("{}: aggregated graph, {} nodes, {} edges\n", to_string(metric), agg.size(),
                         agg.directed_pair_count());
    }
  }
  files.add("manifest_export.json",
            manifest_json("export", cfg, in.bytes,
                          {{"layer", req.layer == Layer::Lagged ? "lagged" : "aggregated"},
                           {"a", req.a},
                           {"orientation", to_string(req.orientation)}}));
  return files.commit();
}

}  // namespace leadlag
