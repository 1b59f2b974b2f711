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

#include <ostream>
#include <span>

#include "pfloc/particle_filter.hpp"
#include "pfloc/rfmap.hpp"

namespace pfloc::cli {

struct PlotData {
  const FingerprintMap* map = nullptr;
  std::span<const Particle> particles;
  Point2 truth;
  std::span<const Point2> estimates;
};

/// Static scatter plot: landmarks as stars, particles as open circles, the
/// true position as a square and per-trial estimates as filled circles.
/// Coordinates are printed with fixed precision so output is byte-stable.
void write_svg_plot(const PlotData& data, std::ostream& out);

}  // namespace pfloc::cli
