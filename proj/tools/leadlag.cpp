// leadlag command-line front end.
//
//   leadlag describe --input data.csv
//   leadlag analyze  --input data.csv --metric correlation --a 0.5 --a 1 --out results
//   leadlag metrics  --input data.csv --first X05 --first-lag 2 --second X01
//   leadlag export   --input data.csv --layer aggregated --at 1 --format graphml
//
// Exit codes: 0 success, 1 usage error, 2 data/validation error,
// 3 numerical failure.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "leadlag/app.hpp"

namespace {

using leadlag::RunConfig;

struct SharedFlags {
  std::string input, config, out;
  std::vector<std::string> metrics, formats;
  std::size_t max_lag = 0, k_neighbors = 0, embedding = 0, workers = 0, max_iter = 0;
  std::vector<double> a_values;
  double damping = 0, tolerance = 0, jitter = 0;
  std::uint64_t seed = 0;
  bool clip_negative = true;
  std::vector<std::pair<std::string, CLI::Option*>> given;

  void attach(CLI::App& app) {
    auto track = [&](const char* key, CLI::Option* opt) { given.emplace_back(key, opt); };
    app.add_option("--config", config, "key = value configuration file");
    track("input", app.add_option("--input,-i", input, "CSV input file"));
    track("metric", app.add_option("--metric,-m", metrics, "correlation | mi | te (repeatable)"));
    track("max_lag", app.add_option("--max-lag", max_lag, "largest lag L (default 12)"));
    track("a", app.add_option("--a", a_values, "decay parameter a in [0,1] (repeatable)"));
    track("damping", app.add_option("--damping,-d", damping, "PageRank damping (default 0.85)"));
    track("tolerance", app.add_option("--tolerance", tolerance, "PageRank L1 tolerance (default 1e-9)"));
    track("max_iter", app.add_option("--max-iter", max_iter, "PageRank iteration limit (default 200)"));
    track("k_neighbors", app.add_option("--k-neighbors,-k", k_neighbors, "kNN estimator neighbours (default 3)"));
    track("embedding", app.add_option("--embedding,-l", embedding, "TE history length (default 1)"));
    track("jitter", app.add_option("--jitter", jitter, "tie-breaking noise scale (default 1e-10)"));
    track("seed", app.add_option("--seed", seed, "jitter seed (default 0)"));
    track("clip_negative", app.add_option("--clip-negative", clip_negative, "clip negative MI/TE to 0 (default true)"));
    track("out", app.add_option("--out,-o", out, "output directory (default leadlag_out)"));
    track("format", app.add_option("--format,-f", formats, "json | csv | dot | graphml | svg (repeatable)"));
    track("workers", app.add_option("--workers,-j", workers, "worker threads (results do not depend on it)"));
  }

  template <typename T>
  static std::string join(const std::vector<T>& xs) {
    std::string s;
    for (const auto& x : xs) {
      if (!s.empty()) s += ',';
      if constexpr (std::is_arithmetic_v<T>) {
        s += fmt::format("{}", x);
      } else {
        s += x;
      }
    }
    return s;
  }

  RunConfig resolve() const {
    RunConfig cfg;
    if (!config.empty()) {
      leadlag::apply_config_file(cfg, config);
    } else if (auto path = leadlag::process_env("LEADLAG_CONFIG")) {
      leadlag::apply_config_file(cfg, *path);
    }
    leadlag::apply_env(cfg);
    for (const auto& [key, opt] : given) {
      if (opt->count() == 0) continue;
      const std::string k = key;
      std::string value;
      if (k == "input") value = input;
      else if (k == "metric") value = join(metrics);
      else if (k == "max_lag") value = std::to_string(max_lag);
      else if (k == "a") value = join(a_values);
      else if (k == "damping") value = fmt::format("{}", damping);
      else if (k == "tolerance") value = fmt::format("{}", tolerance);
      else if (k == "max_iter") value = std::to_string(max_iter);
      else if (k == "k_neighbors") value = std::to_string(k_neighbors);
      else if (k == "embedding") value = std::to_string(embedding);
      else if (k == "jitter") value = fmt::format("{}", jitter);
      else if (k == "seed") value = std::to_string(seed);
      else if (k == "clip_negative") value = clip_negative ? "true" : "false";
      else if (k == "out") value = out;
      else if (k == "format") value = join(formats);
      else if (k == "workers") value = std::to_string(workers);
      leadlag::apply_setting(cfg, k, value);
    }
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lead-lag network analysis of multivariate time series"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(leadlag::kToolVersion));

  SharedFlags describe_flags, analyze_flags, metrics_flags, export_flags;

  auto* describe = app.add_subcommand("describe", "per-variable rate-of-change statistics in percent");
  describe_flags.attach(*describe);

  auto* analyze = app.add_subcommand("analyze", "build networks, sweep a, rank variables by PageRank");
  analyze_flags.attach(*analyze);

  leadlag::MetricsRequest pair;
  auto* metrics = app.add_subcommand("metrics", "raw metric values for one aligned pair");
  metrics_flags.attach(*metrics);
  metrics->add_option("--first", pair.first, "first variable (TE source)")->required();
  metrics->add_option("--first-lag", pair.first_lag, "lag of the first variable");
  metrics->add_option("--second", pair.second, "second variable (TE target)")->required();
  metrics->add_option("--second-lag", pair.second_lag, "lag of the second variable");

  std::string layer = "aggregated";
  std::string orientation = "toward-lead";
  double at = 1.0;
  auto* exporter = app.add_subcommand("export", "write the lagged or aggregated graph at one a");
  export_flags.attach(*exporter);
  exporter->add_option("--layer", layer, "lagged | aggregated")->check(CLI::IsMember({"lagged", "aggregated"}));
  exporter->add_option("--at", at, "a used for exported weights (default 1)");
  exporter->add_option("--orientation", orientation, "aggregated edge direction: toward-lead | toward-lag")
      ->check(CLI::IsMember({"toward-lead", "toward-lag"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (describe->parsed()) {
      leadlag::run_describe(describe_flags.resolve(), std::cout);
    } else if (analyze->parsed()) {
      leadlag::run_analyze(analyze_flags.resolve(), std::cout);
    } else if (metrics->parsed()) {
      leadlag::run_metrics(metrics_flags.resolve(), pair, std::cout);
    } else if (exporter->parsed()) {
      leadlag::ExportRequest req;
      req.layer = leadlag::parse_layer(layer);
      req.a = at;
      req.orientation = orientation == "toward-lag" ? leadlag::Orientation::TowardLag : leadlag::Orientation::TowardLead;
      leadlag::run_export(export_flags.resolve(), req, std::cout);
    }
  } catch (const leadlag::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const leadlag::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const leadlag::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
