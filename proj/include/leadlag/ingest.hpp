#pragma once

// Loading of multivariate monthly series, the rate-of-change transform and
// the lagged-variable panel the network is built over.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "leadlag/error.hpp"

namespace leadlag {

// Raw aligned series, one column per variable.
class TimeSeriesTable {
 public:
  TimeSeriesTable() = default;

  // Validates every invariant and throws DataError on violation.
  TimeSeriesTable(std::vector<std::string> names,
                  std::vector<std::string> timestamps,
                  std::vector<std::vector<double>> columns)
      : names_(std::move(names)),
        timestamps_(std::move(timestamps)),
        columns_(std::move(columns)) {
    if (names_.empty()) throw DataError("table has no variables");
    if (names_.size() != columns_.size()) {
      throw DataError("number of names does not match number of columns");
    }
    std::unordered_set<std::string> seen;
    for (const auto& n : names_) {
      if (n.empty()) throw DataError("empty variable name");
      if (!seen.insert(n).second) throw DataError("duplicate variable name '" + n + "'");
    }
    const std::size_t rows = columns_.front().size();
    if (rows < 2) throw DataError("at least 2 rows are required, got " + std::to_string(rows));
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      if (columns_[i].size() != rows) {
        throw DataError("column '" + names_[i] + "' has " + std::to_string(columns_[i].size()) +
                        " rows, expected " + std::to_string(rows));
      }
      for (std::size_t t = 0; t < rows; ++t) {
        if (!std::isfinite(columns_[i][t])) {
          throw DataError("non-finite value at row " + std::to_string(t + 1) + ", column '" +
                          names_[i] + "'");
        }
      }
    }
    if (!timestamps_.empty() && timestamps_.size() != rows) {
      throw DataError("timestamp count does not match row count");
    }
  }

  std::size_t num_variables() const { return columns_.size(); }
  std::size_t num_steps() const { return columns_.empty() ? 0 : columns_.front().size(); }
  const std::vector<std::string>& variable_names() const { return names_; }
  const std::vector<std::string>& timestamps() const { return timestamps_; }
  std::span<const double> column(std::size_t i) const { return columns_.at(i); }
  double value(std::size_t t, std::size_t i) const { return columns_.at(i).at(t); }

 private:
  std::vector<std::string> names_;
  std::vector<std::string> timestamps_;
  std::vector<std::vector<double>> columns_;
};

// Rates of change as fractions (0.10 is +10%). timestamps, when present,
// label the later month of each step.
class ReturnsTable {
 public:
  ReturnsTable() = default;
  ReturnsTable(std::vector<std::string> names, std::vector<std::string> timestamps,
               std::vector<std::vector<double>> returns)
      : names_(std::move(names)), timestamps_(std::move(timestamps)), returns_(std::move(returns)) {
    if (names_.size() != returns_.size() || names_.empty()) {
      throw DataError("returns table shape mismatch");
    }
    const std::size_t n = returns_.front().size();
    for (std::size_t i = 0; i < returns_.size(); ++i) {
      if (returns_[i].size() != n) throw DataError("returns table has ragged columns");
      for (std::size_t t = 0; t < n; ++t) {
        if (!std::isfinite(returns_[i][t])) {
          throw DataError("non-finite rate of change at step " + std::to_string(t) +
                          " of '" + names_[i] + "'");
        }
      }
    }
  }

  std::size_t num_variables() const { return returns_.size(); }
  std::size_t length() const { return returns_.empty() ? 0 : returns_.front().size(); }
  const std::vector<std::string>& variable_names() const { return names_; }
  const std::vector<std::string>& timestamps() const { return timestamps_; }
  std::span<const double> column(std::size_t i) const { return returns_.at(i); }

 private:
  std::vector<std::string> names_;
  std::vector<std::string> timestamps_;
  std::vector<std::vector<double>> returns_;
};

// Identifies the lag-k copy of variable i.
struct SeriesId {
  std::size_t variable = 0;
  std::size_t lag = 0;
  friend auto operator<=>(const SeriesId&, const SeriesId&) = default;
};

// Lag-k of variable i at panel time t is base[i][t - k], defined for
// t in [k, n). Its sample count is n - k.
class LaggedPanel {
 public:
  LaggedPanel(ReturnsTable base, std::size_t max_lag) : base_(std::move(base)), max_lag_(max_lag) {}

  const ReturnsTable& base() const { return base_; }
  std::size_t max_lag() const { return max_lag_; }
  std::size_t num_variables() const { return base_.num_variables(); }
  std::size_t num_series() const { return base_.num_variables() * (max_lag_ + 1); }
  std::size_t base_length() const { return base_.length(); }
  std::size_t sample_count(std::size_t lag) const { return base_length() - lag; }

  // Values of the lag-k series in panel-time order.
  std::span<const double> series(SeriesId id) const {
    check(id);
    return base_.column(id.variable).first(sample_count(id.lag));
  }

  void check(SeriesId id) const {
    if (id.variable >= num_variables() || id.lag > max_lag_) {
      throw UsageError("series (" + std::to_string(id.variable) + ", lag " +
                       std::to_string(id.lag) + ") is outside the panel");
    }
  }

 private:
  ReturnsTable base_;
  std::size_t max_lag_ = 0;
};

// Time-aligned overlap of two lagged series. x_offset / y_offset are the
// base-series indices of xs[0] / ys[0].
struct AlignedPair {
  std::vector<double> xs;
  std::vector<double> ys;
  std::size_t n = 0;
  SeriesId a;
  SeriesId b;
  std::size_t x_offset = 0;
  std::size_t y_offset = 0;
};

inline constexpr std::size_t kMinOverlap = 3;

struct CsvOptions {
  enum class DateColumn { Auto, Present, Absent };
  char delimiter = ',';
  DateColumn date_column = DateColumn::Auto;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::string unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

inline std::vector<std::string> split_fields(std::string_view line, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    out.push_back(unquote(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace detail

// Accepts YYYY-MM and YYYY-MM-DD, optionally followed by a 'T' time part.
inline bool is_iso_date(std::string_view s) {
  s = detail::trim(s);
  if (const auto t = s.find('T'); t != std::string_view::npos) s = s.substr(0, t);
  if (s.size() != 7 && s.size() != 10) return false;
  if (!detail::all_digits(s.substr(0, 4)) || s[4] != '-' || !detail::all_digits(s.substr(5, 2))) {
    return false;
  }
  const int month = (s[5] - '0') * 10 + (s[6] - '0');
  if (month < 1 || month > 12) return false;
  if (s.size() == 10) {
    if (s[7] != '-' || !detail::all_digits(s.substr(8, 2))) return false;
    const int day = (s[8] - '0') * 10 + (s[9] - '0');
    if (day < 1 || day > 31) return false;
  }
  return true;
}

// Strict decimal parse: the whole cell must be consumed.
inline bool parse_number(std::string_view cell, double& out) {
  cell = detail::trim(cell);
  if (cell.empty()) return false;
  if (cell.front() == '+') cell.remove_prefix(1);
  const auto* end = cell.data() + cell.size();
  const auto res = std::from_chars(cell.data(), end, out);
  return res.ec == std::errc() && res.ptr == end;
}

inline TimeSeriesTable parse_csv(std::string_view text, const CsvOptions& options = {}) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::vector<std::pair<std::size_t, std::string_view>> lines;  // (line number, content)
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto pos = text.find('\n', start);
    const auto line = text.substr(start, pos == std::string_view::npos ? text.size() - start : pos - start);
    ++line_no;
    if (!detail::trim(line).empty()) lines.emplace_back(line_no, line);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (lines.empty()) throw DataError("CSV is empty");

  auto header = detail::split_fields(lines.front().second, options.delimiter);
  const std::size_t width = header.size();
  if (lines.size() < 3) {
    throw DataError("CSV needs at least 2 data rows, found " + std::to_string(lines.size() - 1));
  }

  bool has_dates = false;
  switch (options.date_column) {
    case CsvOptions::DateColumn::Present: has_dates = true; break;
    case CsvOptions::DateColumn::Absent: has_dates = false; break;
    case CsvOptions::DateColumn::Auto: {
      const auto first = detail::split_fields(lines[1].second, options.delimiter);
      has_dates = !first.empty() && is_iso_date(first.front());
      break;
    }
  }
  const std::size_t first_var = has_dates ? 1 : 0;
  if (width <= first_var) throw DataError("CSV header has no variable columns");

  std::vector<std::string> names(header.begin() + static_cast<std::ptrdiff_t>(first_var), header.end());
  for (std::size_t c = 0; c < names.size(); ++c) {
    if (names[c].empty()) {
      throw DataError("header column " + std::to_string(c + first_var + 1) + " has an empty name");
    }
    for (std::size_t d = 0; d < c; ++d) {
      if (names[d] == names[c]) throw DataError("duplicate variable name '" + names[c] + "' in header");
    }
  }

  std::vector<std::vector<double>> columns(names.size());
  std::vector<std::string> timestamps;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto [physical, line] = lines[r];
    const auto where = "row " + std::to_string(r) + " (line " + std::to_string(physical) + ")";
    const auto fields = detail::split_fields(line, options.delimiter);
    if (fields.size() != width) {
      throw DataError(where + " has " + std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(width));
    }
    if (has_dates) {
      if (!is_iso_date(fields[0])) {
        throw DataError(where + ", column '" + header[0] + "': '" + fields[0] + "' is not an ISO-8601 date");
      }
      timestamps.push_back(fields[0]);
    }
    for (std::size_t c = 0; c < names.size(); ++c) {
      const auto& cell = fields[c + first_var];
      double v = 0.0;
      if (detail::trim(cell).empty()) {
        throw DataError(where + ", column '" + names[c] + "': missing value");
      }
      if (!parse_number(cell, v)) {
        throw DataError(where + ", column '" + names[c] + "': '" + cell + "' is not a number");
      }
      if (!std::isfinite(v)) {
        throw DataError(where + ", column '" + names[c] + "': non-finite value");
      }
      columns[c].push_back(v);
    }
  }
  return TimeSeriesTable(std::move(names), std::move(timestamps), std::move(columns));
}

inline TimeSeriesTable load_csv(const std::string& path, const CsvOptions& options = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw DataError("failed reading '" + path + "'");
  return parse_csv(buf.str(), options);
}

// returns[t][i] = (raw[t+1][i] - raw[t][i]) / raw[t][i]
inline ReturnsTable rate_of_change(const TimeSeriesTable& table) {
  const std::size_t rows = table.num_steps();
  std::vector<std::vector<double>> out(table.num_variables());
  for (std::size_t i = 0; i < table.num_variables(); ++i) {
    const auto col = table.column(i);
    out[i].reserve(rows - 1);
    for (std::size_t t = 0; t + 1 < rows; ++t) {
      if (col[t] == 0.0) {
        throw DataError("zero value at row " + std::to_string(t + 1) + " of '" +
                        table.variable_names()[i] + "' cannot be a rate-of-change denominator");
      }
      out[i].push_back((col[t + 1] - col[t]) / col[t]);
    }
  }
  std::vector<std::string> stamps;
  if (!table.timestamps().empty()) stamps.assign(table.timestamps().begin() + 1, table.timestamps().end());
  return ReturnsTable(table.variable_names(), std::move(stamps), std::move(out));
}

// max_lag == 0 yields the base returns alone; lead-lag graphs need max_lag >= 1.
inline LaggedPanel build_lags(ReturnsTable returns, std::size_t max_lag) {
  const std::size_t n = returns.length();
  if (n < kMinOverlap || max_lag > n - kMinOverlap) {
    throw UsageError("max lag " + std::to_string(max_lag) + " is out of range [0, " +
                     std::to_string(n < kMinOverlap ? 0 : n - kMinOverlap) + "] for " +
                     std::to_string(n) + " rates of change");
  }
  return LaggedPanel(std::move(returns), max_lag);
}

inline AlignedPair align_pair(const LaggedPanel& panel, SeriesId a, SeriesId b) {
  panel.check(a);
  panel.check(b);
  const std::size_t start = std::max(a.lag, b.lag);
  const std::size_t n = panel.base_length() - start;
  if (n < kMinOverlap) {
    throw DataError("aligned overlap of " + std::to_string(n) + " samples is below the minimum of " +
                    std::to_string(kMinOverlap));
  }
  AlignedPair pair;
  pair.a = a;
  pair.b = b;
  pair.n = n;
  pair.x_offset = start - a.lag;
  pair.y_offset = start - b.lag;
  const auto xa = panel.base().column(a.variable);
  const auto yb = panel.base().column(b.variable);
  pair.xs.assign(xa.begin() + static_cast<std::ptrdiff_t>(pair.x_offset),
                 xa.begin() + static_cast<std::ptrdiff_t>(pair.x_offset + n));
  pair.ys.assign(yb.begin() + static_cast<std::ptrdiff_t>(pair.y_offset),
                 yb.begin() + static_cast<std::ptrdiff_t>(pair.y_offset + n));
  return pair;
}

// Pair over two plain vectors, tagged as variables 0 and 1 at lag 0.
inline AlignedPair make_pair(std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() != ys.size()) throw DataError("paired vectors differ in length");
  AlignedPair pair;
  pair.n = xs.size();
  pair.xs = std::move(xs);
  pair.ys = std::move(ys);
  pair.a = {0, 0};
  pair.b = {1, 0};
  return pair;
}

}  // namespace leadlag
