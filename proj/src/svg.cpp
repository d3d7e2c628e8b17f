// Copyright 2026 The amsplace Authors
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

#include "amsplace/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

#include "amsplace/io.hpp"

namespace amsplace {

namespace {

constexpr const char* kPalette[] = {"#e6194b", "#3cb44b", "#4363d8", "#f58231",
                                    "#911eb4", "#46f0f0", "#f032e6", "#bcf60c",
                                    "#008080", "#9a6324"};
constexpr const char* kPlain = "#c8c8c8";
constexpr double kMargin = 10.0;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

std::string renderSvg(const Instance& instance, const Placement& placement,
                      const SvgOptions& options) {
  double W = placement.width;
  double H = placement.height;
  for (const auto& b : instance.blockages) {
    W = std::max(W, b.x + b.width);
    H = std::max(H, b.y + b.height);
  }
  const double scale = options.canvas / std::max({W, H, 1e-9});
  const double pw = W * scale + 2 * kMargin;
  const double ph = H * scale + 2 * kMargin;
  // Layout y grows upward; SVG y grows downward.
  const auto sx = [&](double x) { return fmt(kMargin + x * scale); };
  const auto sy = [&](double y) { return fmt(kMargin + (H - y) * scale); };
  const auto len = [&](double d) { return fmt(d * scale); };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(pw) +
         "\" height=\"" + fmt(ph) + "\" viewBox=\"0 0 " + fmt(pw) + " " +
         fmt(ph) + "\">\n";
  out +=
      "<defs><pattern id=\"hatch\" width=\"6\" height=\"6\" "
      "patternUnits=\"userSpaceOnUse\" patternTransform=\"rotate(45)\">"
      "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#555\" "
      "stroke-width=\"2\"/></pattern></defs>\n";
  out += "<rect x=\"" + sx(0) + "\" y=\"" + sy(placement.height) +
         "\" width=\"" + len(placement.width) + "\" height=\"" +
         len(placement.height) +
         "\" fill=\"white\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

  for (const auto& b : instance.blockages) {
    out += "<rect class=\"blockage\" x=\"" + sx(b.x) + "\" y=\"" +
           sy(b.y + b.height) + "\" width=\"" + len(b.width) + "\" height=\"" +
           len(b.height) + "\" fill=\"url(#hatch)\" stroke=\"#555\"/>\n";
  }

  for (RectId i : instance.selectableIds()) {
    const auto g = geometryOf(instance, placement, i);
    const auto group = instance.groupOf(i);
    const char* colour = group ? kPalette[*group % std::size(kPalette)] : kPlain;
    out += "<rect id=\"r" + std::to_string(i) + "\" x=\"" + sx(g.x) +
           "\" y=\"" + sy(g.y + g.h) + "\" width=\"" + len(g.w) +
           "\" height=\"" + len(g.h) + "\" fill=\"" + colour +
           "\" fill-opacity=\"0.7\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
    if (options.labels) {
      out += "<text x=\"" + sx(g.centerX()) + "\" y=\"" + sy(g.centerY()) +
             "\" font-size=\"9\" text-anchor=\"middle\" "
             "dominant-baseline=\"middle\">" +
             std::to_string(i) + "</text>\n";
    }
  }

  for (std::size_t k = 0; k < instance.symmetryGroups.size() &&
                          k < placement.axes.size();
       ++k) {
    const double x = placement.axes[k];
    out += "<line class=\"axis\" x1=\"" + sx(x) + "\" y1=\"" + sy(0) +
           "\" x2=\"" + sx(x) + "\" y2=\"" + sy(placement.height) +
           "\" stroke=\"" + kPalette[k % std::size(kPalette)] +
           "\" stroke-dasharray=\"6 3\" stroke-width=\"1\"/>\n";
  }

  if (options.nets) {
    for (const auto& net : instance.nets) {
      if (net.members.empty()) continue;
      double xlo = kInf, xhi = -kInf, ylo = kInf, yhi = -kInf;
      for (RectId i : net.members) {
        const auto g = geometryOf(instance, placement, i);
        xlo = std::min(xlo, g.centerX());
        xhi = std::max(xhi, g.centerX());
        ylo = std::min(ylo, g.centerY());
        yhi = std::max(yhi, g.centerY());
      }
      out += "<rect class=\"net\" x=\"" + sx(xlo) + "\" y=\"" + sy(yhi) +
             "\" width=\"" + len(xhi - xlo) + "\" height=\"" + len(yhi - ylo) +
             "\" fill=\"none\" stroke=\"#1f77b4\" stroke-opacity=\"0.5\" "
             "stroke-dasharray=\"2 2\" stroke-width=\"0.5\"/>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

void writeSvg(const Instance& instance, const Placement& placement,
              const std::filesystem::path& path, const SvgOptions& options) {
  writeTextFile(path, renderSvg(instance, placement, options));
}

}  // namespace amsplace
