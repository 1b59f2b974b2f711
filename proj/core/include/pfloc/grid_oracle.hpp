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

#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "pfloc/rfmap.hpp"

namespace pfloc {

/// Discrete posterior over square cells covering the map area.
/// Cells are row-major: index = row * cols + col, with rows along y.
struct GridPosterior {
  double cell_size = 0.0;
  Point2 origin;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::vector<double> probabilities;

  Point2 cell_center(std::size_t row, std::size_t col) const {
    return {origin.x + (static_cast<double>(col) + 0.5) * cell_size,
            origin.y + (static_cast<double>(row) + 0.5) * cell_size};
  }
  double at(std::size_t row, std::size_t col) const { return probabilities[row * cols + col]; }
};

/// Single-observation posterior under a uniform prior, evaluated by brute
/// force at every cell center with the filter's nearest-landmark prediction
/// and likelihood. Partial edge cells are dropped
/// (cols = floor(length / cell_size)). Throws DegenerateWeightsError when
/// every cell has zero mass.
GridPosterior grid_posterior(const FingerprintMap& map, const RssVector& observed, double sigma,
                             double cell_size);

Point2 posterior_mean(const GridPosterior& posterior);

/// CSV: cell_x_m,cell_y_m,probability (one row per cell, full precision).
void write_posterior_csv(const GridPosterior& posterior, std::ostream& out);

}  // namespace pfloc
