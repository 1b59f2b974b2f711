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

#include "pfloc/grid_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "pfloc/likelihood.hpp"
#include "pfloc/particle_filter.hpp"

namespace pfloc {

GridPosterior grid_posterior(const FingerprintMap& map, const RssVector& observed, double sigma,
                             double cell_size) {
  if (!(cell_size > 0.0 && cell_size <= std::min(map.area_length(), map.area_width()))) {
    throw std::invalid_argument(fmt::format("grid_posterior: cell size must lie in (0, {}]",
                                            std::min(map.area_length(), map.area_width())));
  }
  if (observed.size() != map.ap_count()) {
    throw std::invalid_argument("grid_posterior: observation length does not match the map");
  }

  GridPosterior g;
  g.cell_size = cell_size;
  g.origin = {0.0, 0.0};
  g.cols = static_cast<std::size_t>(std::floor(map.area_length() / cell_size + 1e-9));
  g.rows = static_cast<std::size_t>(std::floor(map.area_width() / cell_size + 1e-9));
  g.probabilities.resize(g.rows * g.cols);

  double total = 0.0;
  for (std::size_t r = 0; r < g.rows; ++r) {
    for (std::size_t c = 0; c < g.cols; ++c) {
      const RssVector& expected = map.predicted_rss(g.cell_center(r, c));
      const double mass = rss_likelihood(observed.values(), expected.values(), sigma);
      g.probabilities[r * g.cols + c] = mass;
      total += mass;
    }
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw DegenerateWeightsError("grid_posterior: every cell has zero likelihood");
  }
  for (double& p : g.probabilities) p /= total;
  return g;
}

Point2 posterior_mean(const GridPosterior& g) {
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t r = 0; r < g.rows; ++r) {
    for (std::size_t c = 0; c < g.cols; ++c) {
      const double p = g.at(r, c);
      const Point2 center = g.cell_center(r, c);
      sx += p * center.x;
      sy += p * center.y;
    }
  }
  return {sx, sy};
}

void write_posterior_csv(const GridPosterior& g, std::ostream& out) {
  out << "cell_x_m,cell_y_m,probability\n";
  for (std::size_t r = 0; r < g.rows; ++r) {
    for (std::size_t c = 0; c < g.cols; ++c) {
      const Point2 center = g.cell_center(r, c);
      out << fmt::format("{},{},{}\n", center.x, center.y, g.at(r, c));
    }
  }
}

}  // namespace pfloc
