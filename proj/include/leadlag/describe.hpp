#pragma once

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "leadlag/ingest.hpp"
#include "leadlag/jitter.hpp"

namespace leadlag {

// Statistics of one variable's rates of change, stored as fractions.
struct VariableStats {
  std::string name;
  double mean = 0.0;
  double stddev = 0.0;  // sample (n - 1) denominator; 0 for a single value
  double min = 0.0;
  double max = 0.0;
};

using DescriptiveStats = std::vector<VariableStats>;

inline DescriptiveStats describe(const ReturnsTable& returns) {
  DescriptiveStats out;
  for (std::size_t i = 0; i < returns.num_variables(); ++i) {
    const auto col = returns.column(i);
    VariableStats s;
    s.name = returns.variable_names()[i];
    s.mean = std::accumulate(col.begin(), col.end(), 0.0) / static_cast<double>(col.size());
    s.stddev = sample_stddev(col);
    const auto [lo, hi] = std::minmax_element(col.begin(), col.end());
    s.min = *lo;
    s.max = *hi;
    out.push_back(std::move(s));
  }
  return out;
}

// Percent with two decimals; negative zero prints as 0.00.
inline std::string percent(double fraction) {
  auto s = fmt::format("{:.2f}", fraction * 100.0);
  if (s == "-0.00") s = "0.00";
  return s;
}

inline std::string describe_table(const DescriptiveStats& stats) {
  std::size_t width = 8;
  for (const auto& s : stats) width = std::max(width, s.name.size());
  std::ostringstream out;
  out << fmt::format("{:<{}}  {:>8}  {:>9}  {:>8}  {:>8}\n", "Variable", width, "Mean", "Std. Dev.", "Min", "Max");
  for (const auto& s : stats) {
    out << fmt::format("{:<{}}  {:>8}  {:>9}  {:>8}  {:>8}\n", s.name, width, percent(s.mean), percent(s.stddev),
                       percent(s.min), percent(s.max));
  }
  return out.str();
}

inline std::string describe_csv(const DescriptiveStats& stats) {
  std::string out = "variable,mean_pct,std_pct,min_pct,max_pct\n";
  for (const auto& s : stats) {
    out += fmt::format("{},{},{},{},{}\n", s.name, percent(s.mean), percent(s.stddev), percent(s.min), percent(s.max));
  }
  return out;
}

}  // namespace leadlag
