// Copyright 2026 The vppbid Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "svg.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace vppbid::cli {
namespace {

constexpr double kBarWidth = 24.0;
constexpr double kChartHeight = 200.0;
constexpr double kMargin = 40.0;

constexpr int kPanelsPerRow = 6;
constexpr double kPanelWidth = 220.0;
constexpr double kPanelHeight = 160.0;
constexpr double kPanelPad = 24.0;

std::string Escape(std::string_view text) {
  std::string out;
  for (const char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Header(double width, double height) {
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.1f}\" "
      "height=\"{:.1f}\" viewBox=\"0 0 {:.1f} {:.1f}\">\n"
      "<style>.active{{fill:#1f77b4}}.passive{{fill:#ff7f0e}}"
      ".step{{stroke:#1f77b4;stroke-width:2}}"
      ".riser{{stroke:#1f77b4;stroke-dasharray:2,2}}"
      ".axis{{stroke:#333}}text{{font:10px sans-serif}}</style>\n",
      width, height, width, height);
}

}  // namespace

std::string ProbabilityChartSvg(const std::vector<ProbabilityPoint>& points) {
  const double width =
      2 * kMargin + std::max<double>(1.0, points.size()) * kBarWidth;
  const double height = kChartHeight + 2 * kMargin;
  const double base = kMargin + kChartHeight;
  std::string svg = Header(width, height);
  svg += fmt::format(
      "<text x=\"{:.1f}\" y=\"{:.1f}\">Probability of being active vs. "
      "passive</text>\n",
      kMargin, kMargin / 2);
  svg += fmt::format(
      "<line class=\"axis\" x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" "
      "y2=\"{:.1f}\"/>\n",
      kMargin, base, width - kMargin, base);
  for (size_t n = 0; n < points.size(); ++n) {
    const double p = std::clamp(points[n].prob_active, 0.0, 1.0);
    const double x = kMargin + n * kBarWidth + 2.0;
    const double active = p * kChartHeight;
    svg += fmt::format(
        "<rect class=\"active\" data-k=\"{}\" x=\"{:.1f}\" y=\"{:.1f}\" "
        "width=\"{:.1f}\" height=\"{:.1f}\"/>\n",
        points[n].k, x, base - active, kBarWidth - 4.0, active);
    svg += fmt::format(
        "<rect class=\"passive\" data-k=\"{}\" x=\"{:.1f}\" y=\"{:.1f}\" "
        "width=\"{:.1f}\" height=\"{:.1f}\"/>\n",
        points[n].k, x, kMargin, kBarWidth - 4.0, kChartHeight - active);
    svg += fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\">{}</text>\n", x, base + 14.0,
        points[n].k);
  }
  svg += "</svg>\n";
  return svg;
}

std::string CurvePlotSvg(std::string_view title,
                         const std::vector<CurvePanel>& panels) {
  const int count = static_cast<int>(panels.size());
  const int cols = std::max(1, std::min(count, kPanelsPerRow));
  const int rows = std::max(1, (count + kPanelsPerRow - 1) / kPanelsPerRow);
  const double width = cols * kPanelWidth;
  const double height = rows * kPanelHeight + kPanelPad;
  std::string svg = Header(width, height);
  svg += fmt::format("<text x=\"4\" y=\"14\">{}</text>\n", Escape(title));

  for (int n = 0; n < count; ++n) {
    const CurvePanel& panel = panels[n];
    const double ox = (n % kPanelsPerRow) * kPanelWidth + kPanelPad;
    const double oy = (n / kPanelsPerRow) * kPanelHeight + 2 * kPanelPad;
    const double w = kPanelWidth - 2 * kPanelPad;
    const double h = kPanelHeight - 2 * kPanelPad;
    svg += fmt::format("<g data-k=\"{}\">\n", panel.k);
    svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">k={}</text>\n", ox,
                       oy - 4.0, panel.k);
    svg += fmt::format(
        "<line class=\"axis\" x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" "
        "y2=\"{:.1f}\"/>\n",
        ox, oy + h, ox + w, oy + h);
    if (panel.steps.empty()) {
      svg += "</g>\n";
      continue;
    }
    double pmin = panel.steps.front().price;
    double pmax = panel.steps.back().price;
    double qmax = 0.0;
    for (const CurveStep& s : panel.steps) qmax = std::max(qmax, s.quantity);
    const double pad = pmax > pmin ? 0.15 * (pmax - pmin) : 1.0;
    pmin -= pad;
    pmax += pad;
    if (qmax <= 0.0) qmax = 1.0;
    auto px = [&](double price) {
      return ox + (price - pmin) / (pmax - pmin) * w;
    };
    auto qy = [&](double quantity) { return oy + h - quantity / qmax * h; };

    // A step holds from its price upwards (day-ahead, up-regulation) or
    // from the previous price up to its own (down-regulation).
    const size_t last = panel.steps.size() - 1;
    for (size_t s = 0; s <= last; ++s) {
      double from;
      double to;
      if (panel.down_regulation) {
        from = s == 0 ? pmin : panel.steps[s - 1].price;
        to = panel.steps[s].price;
      } else {
        from = panel.steps[s].price;
        to = s == last ? pmax : panel.steps[s + 1].price;
      }
      const double y = qy(panel.steps[s].quantity);
      svg += fmt::format(
          "<line class=\"step\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" "
          "y2=\"{:.2f}\"/>\n",
          px(from), y, px(to), y);
      if (s < last) {
        const double x =
            px(panel.down_regulation ? to : panel.steps[s + 1].price);
        svg += fmt::format(
            "<line class=\"riser\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" "
            "y2=\"{:.2f}\"/>\n",
            x, y, x, qy(panel.steps[s + 1].quantity));
      }
    }
    svg += "</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace vppbid::cli
