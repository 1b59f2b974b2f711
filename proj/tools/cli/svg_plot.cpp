/*
 * Copyright 2026 The pfloc Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "svg_plot.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace pfloc::cli {

namespace {

constexpr double kPixelsPerMeter = 50.0;
constexpr double kMargin = 40.0;
constexpr double kLegendWidth = 170.0;

struct Transform {
  double height_m;
  double sx(double x) const { return kMargin + x * kPixelsPerMeter; }
  // SVG y grows downwards; map y grows upwards.
  double sy(double y) const { return kMargin + (height_m - y) * kPixelsPerMeter; }
};

std::string star_points(double cx, double cy, double outer, double inner) {
  std::string pts;
  for (int k = 0; k < 10; ++k) {
    const double r = (k % 2 == 0) ? outer : inner;
    const double a = -std::numbers::pi / 2.0 + k * std::numbers::pi / 5.0;
    if (!pts.empty()) pts += ' ';
    pts += fmt::format("{:.2f},{:.2f}", cx + r * std::cos(a), cy + r * std::sin(a));
  }
  return pts;
}

}  // namespace

void write_svg_plot(const PlotData& data, std::ostream& out) {
  const double length = data.map->area_length();
  const double width = data.map->area_width();
  const Transform tf{width};
  const double w_px = 2 * kMargin + length * kPixelsPerMeter + kLegendWidth;
  const double h_px = 2 * kMargin + width * kPixelsPerMeter;

  out << fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "viewBox=\"0 0 {:.0f} {:.0f}\">\n",
      w_px, h_px, w_px, h_px);
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << fmt::format(
      "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" "
      "stroke=\"black\"/>\n",
      tf.sx(0), tf.sy(width), length * kPixelsPerMeter, width * kPixelsPerMeter);

  // 1 m ticks
  out << "<g font-family=\"sans-serif\" font-size=\"10\" fill=\"#444\">\n";
  for (int i = 0; i <= static_cast<int>(std::floor(length)); ++i) {
    out << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n",
                       tf.sx(i), tf.sy(0) + 14, i);
  }
  for (int j = 0; j <= static_cast<int>(std::floor(width)); ++j) {
    out << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{}</text>\n",
                       tf.sx(0) - 6, tf.sy(j) + 3, j);
  }
  out << "</g>\n";

  out << "<g fill=\"none\" stroke=\"#1f4fd1\" stroke-width=\"0.8\">\n";
  for (const Particle& p : data.particles) {
    out << fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2.5\"/>\n",
                       tf.sx(p.position.x), tf.sy(p.position.y));
  }
  out << "</g>\n";

  out << "<g fill=\"#f2b90f\" stroke=\"#7a5c00\" stroke-width=\"0.6\">\n";
  for (const Landmark& lm : data.map->landmarks()) {
    out << fmt::format("<polygon points=\"{}\"/>\n",
                       star_points(tf.sx(lm.position.x), tf.sy(lm.position.y), 6.0, 2.6));
  }
  out << "</g>\n";

  out << "<g fill=\"#1a9e3a\" stroke=\"#0b4d1b\" stroke-width=\"0.6\">\n";
  for (const Point2& e : data.estimates) {
    out << fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"4\"/>\n", tf.sx(e.x), tf.sy(e.y));
  }
  out << "</g>\n";

  out << fmt::format(
      "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"10\" height=\"10\" fill=\"none\" stroke=\"#0b4d1b\" "
      "stroke-width=\"2\"/>\n",
      tf.sx(data.truth.x) - 5, tf.sy(data.truth.y) - 5);

  const double lx = kMargin * 1.5 + length * kPixelsPerMeter;
  const double ly = kMargin + 10;
  out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  out << fmt::format("<polygon points=\"{}\" fill=\"#f2b90f\" stroke=\"#7a5c00\"/>\n",
                     star_points(lx, ly, 6.0, 2.6));
  out << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">landmarks</text>\n", lx + 12, ly + 4);
  out << fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2.5\" fill=\"none\" stroke=\"#1f4fd1\"/>\n",
                     lx, ly + 20);
  out << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">particles</text>\n", lx + 12, ly + 24);
  out << fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"4\" fill=\"#1a9e3a\"/>\n", lx, ly + 40);
  out << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">estimates</text>\n", lx + 12, ly + 44);
  out << fmt::format(
      "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"10\" height=\"10\" fill=\"none\" stroke=\"#0b4d1b\" "
      "stroke-width=\"2\"/>\n",
      lx - 5, ly + 55);
  out << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">true position</text>\n", lx + 12, ly + 64);
  out << "</g>\n</svg>\n";
}

}  // namespace pfloc::cli
