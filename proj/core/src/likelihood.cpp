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

#include "pfloc/likelihood.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pfloc {

double rss_likelihood(std::span<const double> observed, std::span<const double> predicted,
                      double sigma) {
  if (observed.size() != predicted.size()) {
    throw std::invalid_argument("rss_likelihood: observed and predicted lengths differ");
  }
  if (!(sigma > 0.0)) throw std::invalid_argument("rss_likelihood: sigma must be > 0");

  const double norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
  double sq = 0.0;
  double scale = 1.0;
  for (std::size_t j = 0; j < observed.size(); ++j) {
    const double r = observed[j] - predicted[j];
    sq += r * r;
    scale *= norm;
  }
  return scale * std::exp(-sq / (2.0 * sigma * sigma));
}

}  // namespace pfloc
