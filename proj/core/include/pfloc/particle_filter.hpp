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
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "pfloc/rfmap.hpp"

namespace pfloc {

/// Every random draw in the filter comes from this generator (64-bit
/// Mersenne Twister, MT19937-64). Seeding it with FilterConfig::seed
/// replays a run bit for bit.
using Rng = std::mt19937_64;

struct Particle {
  Point2 position;
  double weight = 0.0;
};

struct ParticleSet {
  std::vector<Particle> particles;
  bool normalized = false;

  std::size_t size() const { return particles.size(); }
  bool empty() const { return particles.empty(); }
};

struct FilterConfig {
  std::size_t n_particles = 1000;
  double sigma = 4.0;              // dBm
  double jitter = 0.05;            // m, half-width of the uniform position noise
  double resample_fraction = 0.5;  // resample when ESS <= n_particles * fraction
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument naming the first bad field.
  void validate() const;
};

struct OdometryDelta {
  double dx = 0.0;
  double dy = 0.0;
};

struct Estimate {
  Point2 position;
};

/// Every weight underflowed to zero, so the set carries no information.
/// Recovery (reinitialize, widen sigma) is left to the caller.
class DegenerateWeightsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// N particles uniform over [0, length] x [0, width], each with weight 1/N.
ParticleSet init_particles(const FilterConfig& config, double area_length, double area_width,
                           Rng& rng);

/// Shifts every particle by the odometry delta plus i.i.d. uniform noise in
/// [-jitter, jitter] per axis. Weights are untouched. Positions are not
/// clamped to the area.
ParticleSet predict(ParticleSet set, OdometryDelta odo, const FilterConfig& config, Rng& rng);

/// Bootstrap-proposal weight update: w_i <- w_i * L(observed, predicted_rss(x_i), sigma).
/// The result is unnormalized.
ParticleSet update_weights(ParticleSet set, const FingerprintMap& map, const RssVector& observed,
                           const FilterConfig& config);

/// Throws DegenerateWeightsError if the weights sum to zero (or are not finite).
ParticleSet normalize_weights(ParticleSet set);

/// 1 / sum(w_i^2). Requires a normalized set (std::logic_error otherwise).
double effective_sample_size(const ParticleSet& set);

/// True iff ESS <= N * resample_fraction, N = set.size() (boundary included).
bool should_resample(const ParticleSet& set, const FilterConfig& config);

/// `count` i.i.d. categorical draws over indices 0..weights.size()-1 with
/// probabilities proportional to weights, returned in ascending order.
/// Zero-weight indices are never drawn.
std::vector<std::size_t> multinomial_indices(std::span<const double> weights, std::size_t count,
                                             Rng& rng);

/// Draws set.size() particles i.i.d. from the categorical law given by the
/// normalized weights (inverse CDF over sorted uniforms). Output weights are
/// all 1/N.
ParticleSet resample_multinomial(ParticleSet set, Rng& rng);

/// Unweighted mean of the particle positions.
Estimate estimate_position(const ParticleSet& set);

/// Weight-averaged position. Not used by the filter step; kept for comparison.
Estimate weighted_mean(const ParticleSet& set);

struct StepResult {
  ParticleSet set;
  Estimate estimate;
  bool resampled = false;
};

/// predict -> update_weights -> normalize_weights -> (resample if ESS is
/// low) -> estimate_position. The input set is taken by const reference and
/// never modified, so a DegenerateWeightsError leaves the caller's state
/// intact.
StepResult step(const ParticleSet& set, const FingerprintMap& map, OdometryDelta odo,
                const RssVector& observed, const FilterConfig& config, Rng& rng);

/// One filter instance: particle set plus the RNG seeded from config.seed.
/// Single-threaded; run one instance per trial for parallelism.
class ParticleFilter {
 public:
  ParticleFilter(FilterConfig config, double area_length, double area_width);

  StepResult step(const FingerprintMap& map, OdometryDelta odo, const RssVector& observed);

  const ParticleSet& particles() const { return set_; }
  const FilterConfig& config() const { return config_; }
  Estimate estimate() const { return estimate_position(set_); }

 private:
  FilterConfig config_;
  Rng rng_;
  ParticleSet set_;
};

}  // namespace pfloc
