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

#include <span>

namespace pfloc {

/// Product of independent Gaussian densities over the K access-point
/// channels:  prod_j 1/(sigma*sqrt(2*pi)) * exp(-(r_j - rhat_j)^2 / (2*sigma^2)).
///
/// Shared by the particle filter and the grid oracle so both evaluate the
/// exact same measurement model. Both spans must have the same length and
/// sigma must be positive; violations throw std::invalid_argument.
double rss_likelihood(std::span<const double> observed, std::span<const double> predicted,
                      double sigma);

}  // namespace pfloc
