#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "exf/experiment.hpp"

namespace exf {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 64.0;
constexpr double kRight = 130.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 56.0;

std::string_view metric_colour(Metric m) {
  switch (m) {
    case Metric::Exf: return "#1b6ca8";
    case Metric::ExfM: return "#0b3c5d";
    case Metric::KShell: return "#d9822b";
    case Metric::Evc: return "#6a9f58";
    case Metric::Degree: return "#8c8c8c";
  }
  return "#000000";
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::string render_figure(const ExperimentReport& report) {
  if (report.correlations.empty()) throw std::invalid_argument("report has no correlations");
  const auto& processes = report.config.processes;
  const auto& metrics = report.config.metrics;

  double y_min = 0.0;
  for (const auto& c : report.correlations)
    if (c.estimate) y_min = std::min(y_min, std::floor(c.estimate->lower * 10.0) / 10.0);
  const double y_max = 1.0;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto y_of = [&](double v) { return kTop + (y_max - v) / (y_max - y_min) * plot_h; };
  const double group_w = plot_w / static_cast<double>(processes.size());
  const double bar_w = group_w * 0.8 / static_cast<double>(metrics.size());

  std::string svg;
  svg += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" height=\"{1:.0f}\" "
      "viewBox=\"0 0 {0:.0f} {1:.0f}\" font-family=\"sans-serif\" font-size=\"12\">\n",
      kWidth, kHeight);
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  svg += fmt::format(
      "<text x=\"{:.2f}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">Correlation of node "
      "metrics with spreading outcome ({}% CI)</text>\n",
      kLeft + plot_w / 2.0, std::lround(report.config.level * 100.0));

  // Axis, gridlines and tick labels every 0.2.
  for (int tick = static_cast<int>(std::lround(y_min * 10.0)); tick <= 10; tick += 2) {
    const double v = tick / 10.0;
    const double y = y_of(v);
    svg += fmt::format(
        "<line class=\"grid\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
        "stroke=\"{}\" stroke-width=\"1\"/>\n",
        kLeft, y, kLeft + plot_w, y, tick == 0 ? "#000000" : "#e0e0e0");
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{:.1f}</text>\n",
                       kLeft - 6.0, y + 4.0, v);
  }
  svg += fmt::format(
      "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"#000000\"/>\n",
      kLeft, kTop, kTop + plot_h);
  svg += fmt::format(
      "<text transform=\"translate(18,{:.2f}) rotate(-90)\" text-anchor=\"middle\">correlation "
      "r</text>\n",
      kTop + plot_h / 2.0);

  const double zero_y = y_of(0.0);
  for (std::size_t pi = 0; pi < processes.size(); ++pi) {
    const double group_x = kLeft + group_w * static_cast<double>(pi) + group_w * 0.1;
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n",
                       kLeft + group_w * (static_cast<double>(pi) + 0.5), kTop + plot_h + 20.0,
                       upper(to_string(processes[pi])));
    for (std::size_t mi = 0; mi < metrics.size(); ++mi) {
      const auto cell = std::find_if(report.correlations.begin(), report.correlations.end(),
                                     [&](const CorrelationCell& c) {
                                       return c.process == processes[pi] && c.metric == metrics[mi];
                                     });
      const double x = group_x + bar_w * static_cast<double>(mi);
      const double cx = x + bar_w / 2.0;
      if (cell == report.correlations.end() || !cell->estimate) {
        svg += fmt::format(
            "<text class=\"undefined\" x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" "
            "font-size=\"9\">n/a</text>\n",
            cx, zero_y - 4.0);
        continue;
      }
      const auto& e = *cell->estimate;
      const double y_r = y_of(e.r);
      svg += fmt::format(
          "<rect class=\"bar\" x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" "
          "fill=\"{}\"><title>{} {} r={:.3f} [{:.3f}, {:.3f}] n={}</title></rect>\n",
          x + 1.0, std::min(y_r, zero_y), bar_w - 2.0, std::abs(zero_y - y_r),
          metric_colour(metrics[mi]), to_string(processes[pi]), to_string(metrics[mi]), e.r,
          e.lower, e.upper, e.n);
      const double y_lo = y_of(e.lower), y_hi = y_of(e.upper), cap = bar_w / 4.0;
      svg += fmt::format(
          "<g class=\"whisker\" stroke=\"#000000\" stroke-width=\"1\">"
          "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\"/>"
          "<line x1=\"{3:.2f}\" y1=\"{1:.2f}\" x2=\"{4:.2f}\" y2=\"{1:.2f}\"/>"
          "<line x1=\"{3:.2f}\" y1=\"{2:.2f}\" x2=\"{4:.2f}\" y2=\"{2:.2f}\"/></g>\n",
          cx, y_lo, y_hi, cx - cap, cx + cap);
    }
  }

  // Legend.
  for (std::size_t mi = 0; mi < metrics.size(); ++mi) {
    const double y = kTop + 18.0 * static_cast<double>(mi);
    svg += fmt::format(
        "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"12\" height=\"12\" fill=\"{}\"/>"
        "<text x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n",
        kWidth - kRight + 16.0, y, metric_colour(metrics[mi]), kWidth - kRight + 34.0, y + 10.0,
        to_string(metrics[mi]));
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace exf
