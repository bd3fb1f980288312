#pragma once

// Seeded demonstration dataset: 13 monthly indicator levels over 42 months
// in which one variable leads the others by one and two months.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "leadlag/ingest.hpp"

namespace leadlag {

// std::normal_distribution is implementation-defined; Box-Muller over
// mt19937_64 (whose output sequence is fixed by the standard) keeps the
// dataset identical across toolchains.
class PortableNormal {
 public:
  explicit PortableNormal(std::uint64_t seed) : engine_(seed) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 == 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct SyntheticSpec {
  std::size_t variables = 13;
  std::size_t months = 42;
  std::size_t lead_index = 4;
  double lead_volatility = 0.02;
  double lag1_loading = 0.6;
  double lag2_loading = 1.0;
  double idiosyncratic_volatility = 0.006;
  std::uint64_t seed = 20190701;
};

inline std::vector<std::string> synthetic_names(std::size_t count) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < count; ++i) {
    names.push_back(std::string("X") + (i + 1 < 10 ? "0" : "") + std::to_string(i + 1));
  }
  return names;
}

// ISO months counting forward from 2019-07.
inline std::vector<std::string> month_stamps(std::size_t count, int year = 2019, int month = 7) {
  std::vector<std::string> out;
  for (std::size_t t = 0; t < count; ++t) {
    out.push_back(std::to_string(year) + "-" + (month < 10 ? "0" : "") + std::to_string(month));
    if (++month > 12) {
      month = 1;
      ++year;
    }
  }
  return out;
}

// Follower returns: r_j(t) = b1 * r_lead(t-1) + b2 * r_lead(t-2) + e_j(t).
// Levels start at 100 and compound the returns.
inline TimeSeriesTable synthetic_table(const SyntheticSpec& spec = {}) {
  PortableNormal rng(spec.seed);
  const std::size_t steps = spec.months - 1;
  const std::size_t burn = 2;
  std::vector<double> lead(steps + burn);
  for (auto& x : lead) x = spec.lead_volatility * rng();

  std::vector<std::vector<double>> returns(spec.variables, std::vector<double>(steps));
  for (std::size_t t = 0; t < steps; ++t) returns[spec.lead_index][t] = lead[t + burn];
  for (std::size_t j = 0; j < spec.variables; ++j) {
    if (j == spec.lead_index) continue;
    for (std::size_t t = 0; t < steps; ++t) {
      returns[j][t] = spec.lag1_loading * lead[t + burn - 1] + spec.lag2_loading * lead[t + burn - 2] +
                      spec.idiosyncratic_volatility * rng();
    }
  }

  std::vector<std::vector<double>> levels(spec.variables, std::vector<double>(spec.months));
  for (std::size_t j = 0; j < spec.variables; ++j) {
    levels[j][0] = 100.0;
    for (std::size_t t = 0; t < steps; ++t) levels[j][t + 1] = levels[j][t] * (1.0 + returns[j][t]);
  }
  return TimeSeriesTable(synthetic_names(spec.variables), month_stamps(spec.months), std::move(levels));
}

}  // namespace leadlag
