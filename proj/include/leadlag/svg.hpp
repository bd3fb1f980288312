#pragma once

// Static line chart of PageRank per variable, one series per a value, with
// variables ordered by average PageRank (highest on the left).

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "leadlag/rank.hpp"
#include "leadlag/serialize.hpp"

namespace leadlag {

inline std::string pagerank_chart_svg(const RankingReport& report, Orientation orientation) {
  const auto& side = orientation == Orientation::TowardLead ? report.influential : report.influenced;
  const std::string title = fmt::format("PageRank ({}, {}: edges {})", to_string(report.metric),
                                        orientation == Orientation::TowardLead ? "influential" : "influenced",
                                        to_string(orientation));
  constexpr double width = 900, height = 480;
  constexpr double left = 70, right = 140, top = 50, bottom = 90;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double ymax = 0.0;
  for (const auto& row : side.pr) ymax = std::max(ymax, *std::max_element(row.begin(), row.end()));
  ymax = ymax > 0.0 ? std::ceil(ymax * 20.0) / 20.0 : 1.0;

  const std::size_t nvar = side.order.size();
  auto x_at = [&](std::size_t pos) {
    return nvar == 1 ? left + plot_w / 2 : left + plot_w * static_cast<double>(pos) / static_cast<double>(nvar - 1);
  };
  auto y_at = [&](double v) { return top + plot_h * (1.0 - v / ymax); };

  static constexpr std::array<const char*, 10> palette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

  std::string out = fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
      "font-family=\"sans-serif\" font-size=\"11\">\n"
      "<rect width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n"
      "<text x=\"{2:.1f}\" y=\"25\" text-anchor=\"middle\" font-size=\"14\">{3}</text>\n",
      width, height, width / 2, detail::xml_escape(title));

  // axes and y ticks
  out += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" stroke=\"black\"/>\n", left, top,
                     top + plot_h);
  out += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"black\"/>\n", left,
                     top + plot_h, left + plot_w);
  for (int t = 0; t <= 5; ++t) {
    const double v = ymax * t / 5.0;
    const double y = y_at(v);
    out += fmt::format(
        "<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"#dddddd\"/>\n"
        "<text x=\"{3:.1f}\" y=\"{4:.1f}\" text-anchor=\"end\">{5:.3f}</text>\n",
        left, y, left + plot_w, left - 6, y + 4, v);
  }
  out += fmt::format("<text x=\"18\" y=\"{0:.1f}\" transform=\"rotate(-90 18 {0:.1f})\" text-anchor=\"middle\">PR</text>\n",
                     top + plot_h / 2);

  for (std::size_t pos = 0; pos < nvar; ++pos) {
    const double x = x_at(pos);
    const double y = top + plot_h + 12;
    out += fmt::format(
        "<text x=\"{0:.1f}\" y=\"{1:.1f}\" text-anchor=\"end\" transform=\"rotate(-45 {0:.1f} {1:.1f})\">{2}</text>\n", x,
        y, detail::xml_escape(report.variable_names[side.order[pos]]));
  }

  for (std::size_t ai = 0; ai < report.a_values.size(); ++ai) {
    const char* color = palette[ai % palette.size()];
    std::string points;
    for (std::size_t pos = 0; pos < nvar; ++pos) {
      if (pos) points += ' ';
      points += fmt::format("{:.2f},{:.2f}", x_at(pos), y_at(side.pr[ai][side.order[pos]]));
    }
    out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", color, points);
    for (std::size_t pos = 0; pos < nvar; ++pos) {
      out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2.5\" fill=\"{}\"/>\n", x_at(pos),
                         y_at(side.pr[ai][side.order[pos]]), color);
    }
    const double ly = top + 14.0 * static_cast<double>(ai);
    out += fmt::format(
        "<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"{3}\" stroke-width=\"2\"/>"
        "<text x=\"{4:.1f}\" y=\"{5:.1f}\">a = {6}</text>\n",
        left + plot_w + 15, ly, left + plot_w + 35, color, left + plot_w + 40, ly + 4, report.a_values[ai]);
  }
  out += "</svg>\n";
  return out;
}

}  // namespace leadlag
