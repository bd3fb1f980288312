#pragma once

// Run configuration shared by the CLI commands. Sources, lowest priority
// first: built-in defaults, a key = value config file, LEADLAG_* environment
// variables, command-line flags.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "leadlag/error.hpp"
#include "leadlag/ingest.hpp"
#include "leadlag/metrics.hpp"
#include "leadlag/parallel.hpp"
#include "leadlag/rank.hpp"

namespace leadlag {

inline constexpr std::array<std::string_view, 5> kExportFormats = {"json", "csv", "dot", "graphml", "svg"};

struct RunConfig {
  std::string input;
  std::vector<MetricKind> metrics = {MetricKind::Correlation, MetricKind::MutualInformation,
                                     MetricKind::TransferEntropy};
  std::size_t max_lag = 12;
  std::vector<double> a_values = default_a_grid();
  EstimatorConfig estimator;
  PageRankConfig pagerank;
  std::string out = "leadlag_out";
  std::vector<std::string> formats = {"json", "csv", "svg"};
  std::size_t workers = default_workers();  // not part of the manifest: never changes results

  bool wants(std::string_view format) const {
    return std::find(formats.begin(), formats.end(), format) != formats.end();
  }

  void validate() const {
    if (max_lag < 1) throw UsageError("--max-lag must be at least 1 (no lead-lag edges exist at lag 0)");
    if (metrics.empty()) throw UsageError("at least one metric is required");
    if (a_values.empty()) throw UsageError("at least one a value is required");
    for (double a : a_values) {
      if (!(a >= 0.0 && a <= 1.0)) throw UsageError("a values must lie in [0, 1]");
    }
    for (const auto& f : formats) {
      if (std::find(kExportFormats.begin(), kExportFormats.end(), f) == kExportFormats.end()) {
        throw UsageError("unknown format '" + f + "' (expected json, csv, dot, graphml or svg)");
      }
    }
    if (workers < 1) throw UsageError("workers must be at least 1");
    estimator.validate();
    pagerank.validate();
  }
};

namespace detail {

inline std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

// "a, b", "[a, b]" or "["a", "b"]" -> {a, b}
inline std::vector<std::string> split_list(std::string_view value) {
  value = trim(value);
  if (value.size() >= 2 && value.front() == '[' && value.back() == ']') value = value.substr(1, value.size() - 2);
  std::vector<std::string> out;
  for (auto& item : split_fields(value, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
T parse_scalar(std::string_view key, std::string_view value);

template <>
inline double parse_scalar<double>(std::string_view key, std::string_view value) {
  double v = 0.0;
  if (!parse_number(value, v)) throw UsageError("'" + std::string(key) + "' expects a number, got '" + std::string(value) + "'");
  return v;
}

template <>
inline std::uint64_t parse_scalar<std::uint64_t>(std::string_view key, std::string_view value) {
  value = trim(value);
  std::uint64_t v = 0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
    throw UsageError("'" + std::string(key) + "' expects a non-negative integer, got '" + std::string(value) + "'");
  }
  return v;
}

inline std::size_t parse_count(std::string_view key, std::string_view value) {
  return static_cast<std::size_t>(parse_scalar<std::uint64_t>(key, value));
}

template <>
inline bool parse_scalar<bool>(std::string_view key, std::string_view value) {
  const auto v = lower(trim(value));
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw UsageError("'" + std::string(key) + "' expects true or false, got '" + std::string(value) + "'");
}

}  // namespace detail

// Applies one key/value setting. Keys match the long flag names with '-'
// or '_' accepted interchangeably.
inline void apply_setting(RunConfig& cfg, std::string_view raw_key, std::string_view value) {
  auto key = detail::lower(detail::trim(raw_key));
  std::replace(key.begin(), key.end(), '-', '_');
  using detail::parse_scalar;
  if (key == "input") {
    cfg.input = detail::unquote(value);
  } else if (key == "metric" || key == "metrics") {
    cfg.metrics.clear();
    for (const auto& m : detail::split_list(value)) cfg.metrics.push_back(parse_metric(detail::lower(m)));
  } else if (key == "max_lag") {
    cfg.max_lag = detail::parse_count(key, value);
  } else if (key == "a" || key == "a_values") {
    cfg.a_values.clear();
    for (const auto& a : detail::split_list(value)) cfg.a_values.push_back(parse_scalar<double>(key, a));
  } else if (key == "damping") {
    cfg.pagerank.damping = parse_scalar<double>(key, value);
  } else if (key == "tolerance") {
    cfg.pagerank.tolerance = parse_scalar<double>(key, value);
  } else if (key == "max_iter" || key == "max_iterations") {
    cfg.pagerank.max_iterations = detail::parse_count(key, value);
  } else if (key == "k_neighbors") {
    cfg.estimator.k_neighbors = detail::parse_count(key, value);
  } else if (key == "embedding") {
    cfg.estimator.embedding_length = detail::parse_count(key, value);
  } else if (key == "jitter") {
    cfg.estimator.jitter_scale = parse_scalar<double>(key, value);
  } else if (key == "seed") {
    cfg.estimator.seed = parse_scalar<std::uint64_t>(key, value);
  } else if (key == "clip_negative") {
    cfg.estimator.clip_negative = parse_scalar<bool>(key, value);
  } else if (key == "out") {
    cfg.out = detail::unquote(value);
  } else if (key == "format" || key == "formats") {
    cfg.formats.clear();
    for (const auto& f : detail::split_list(value)) cfg.formats.push_back(detail::lower(f));
  } else if (key == "workers") {
    cfg.workers = detail::parse_count(key, value);
  } else {
    throw UsageError("unknown configuration key '" + std::string(detail::trim(raw_key)) + "'");
  }
}

inline constexpr std::array<std::string_view, 16> kConfigKeys = {
    "input",   "metric", "max_lag", "a",    "damping", "tolerance", "max_iter", "k_neighbors",
    "embedding", "jitter", "seed",  "clip_negative", "out", "format", "workers", "config"};

// Lines are `key = value`; blank lines, `#` comments and `[section]`
// headers are ignored.
inline void apply_config_text(RunConfig& cfg, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = detail::trim(view);
    if (view.empty() || (view.front() == '[' && view.back() == ']' && view.find('=') == std::string_view::npos)) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    try {
      apply_setting(cfg, view.substr(0, eq), view.substr(eq + 1));
    } catch (const Error& e) {
      throw UsageError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

inline void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  apply_config_text(cfg, buf.str());
}

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

inline std::optional<std::string> process_env(const std::string& name) {
  if (const char* v = std::getenv(name.c_str())) return std::string(v);
  return std::nullopt;
}

inline std::string env_name(std::string_view key) {
  std::string name = "LEADLAG_";
  for (char c : key) name += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return name;
}

// LEADLAG_<KEY> for every configuration key except `config`.
inline void apply_env(RunConfig& cfg, const EnvLookup& lookup = process_env) {
  for (auto key : kConfigKeys) {
    if (key == "config") continue;
    if (auto v = lookup(env_name(key))) {
      try {
        apply_setting(cfg, key, *v);
      } catch (const Error& e) {
        throw UsageError(env_name(key) + ": " + e.what());
      }
    }
  }
}

// Config echo for the run manifest. Excludes execution-only settings.
inline nlohmann::json config_to_json(const RunConfig& cfg) {
  std::vector<std::string> metrics;
  for (auto m : cfg.metrics) metrics.emplace_back(to_string(m));
  return {{"input", cfg.input},
          {"metrics", metrics},
          {"max_lag", cfg.max_lag},
          {"a_values", cfg.a_values},
          {"estimator",
           {{"k_neighbors", cfg.estimator.k_neighbors},
            {"embedding_length", cfg.estimator.embedding_length},
            {"jitter_scale", cfg.estimator.jitter_scale},
            {"seed", cfg.estimator.seed},
            {"clip_negative", cfg.estimator.clip_negative}}},
          {"pagerank",
           {{"damping", cfg.pagerank.damping},
            {"tolerance", cfg.pagerank.tolerance},
            {"max_iterations", cfg.pagerank.max_iterations}}},
          {"formats", cfg.formats}};
}

}  // namespace leadlag
