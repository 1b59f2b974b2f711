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

#include "pfloc/particle_filter.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "pfloc/likelihood.hpp"

namespace pfloc {

void FilterConfig::validate() const {
  if (n_particles < 1) throw std::invalid_argument("n_particles must be >= 1");
  if (!(std::isfinite(sigma) && sigma > 0.0)) {
    throw std::invalid_argument(fmt::format("sigma must be > 0 (got {})", sigma));
  }
  if (!(std::isfinite(jitter) && jitter >= 0.0)) {
    throw std::invalid_argument(fmt::format("jitter must be >= 0 (got {})", jitter));
  }
  if (!(resample_fraction > 0.0 && resample_fraction <= 1.0)) {
    throw std::invalid_argument(
        fmt::format("resample_fraction must lie in (0, 1] (got {})", resample_fraction));
  }
}

ParticleSet init_particles(const FilterConfig& config, double area_length, double area_width,
                           Rng& rng) {
  config.validate();
  if (!(area_length > 0.0 && area_width > 0.0)) {
    throw std::invalid_argument("init_particles: area dimensions must be > 0");
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double w = 1.0 / static_cast<double>(config.n_particles);

  ParticleSet set;
  set.particles.reserve(config.n_particles);
  for (std::size_t i = 0; i < config.n_particles; ++i) {
    const double x = area_length * unit(rng);
    const double y = area_width * unit(rng);
    set.particles.push_back({{x, y}, w});
  }
  set.normalized = true;
  return set;
}

ParticleSet predict(ParticleSet set, OdometryDelta odo, const FilterConfig& config, Rng& rng) {
  if (config.jitter == 0.0) {
    for (Particle& p : set.particles) {
      p.position.x += odo.dx;
      p.position.y += odo.dy;
    }
    return set;
  }
  std::uniform_real_distribution<double> noise(-config.jitter, config.jitter);
  for (Particle& p : set.particles) {
    const double ux = noise(rng);
    const double uy = noise(rng);
    p.position.x += odo.dx + ux;
    p.position.y += odo.dy + uy;
  }
  return set;
}

ParticleSet update_weights(ParticleSet set, const FingerprintMap& map, const RssVector& observed,
                           const FilterConfig& config) {
  if (observed.size() != map.ap_count()) {
    throw std::invalid_argument(fmt::format(
        "observation has {} RSS entries but the map has {} access points", observed.size(),
        map.ap_count()));
  }
  for (Particle& p : set.particles) {
    const RssVector& expected = map.predicted_rss(p.position);
    p.weight *= rss_likelihood(observed.values(), expected.values(), config.sigma);
  }
  set.normalized = false;
  return set;
}

ParticleSet normalize_weights(ParticleSet set) {
  double total = 0.0;
  for (const Particle& p : set.particles) total += p.weight;
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw DegenerateWeightsError(
        fmt::format("particle weights sum to {}; the measurement likelihood underflowed for "
                    "every particle",
                    total));
  }
  for (Particle& p : set.particles) p.weight /= total;
  set.normalized = true;
  return set;
}

double effective_sample_size(const ParticleSet& set) {
  if (!set.normalized) throw std::logic_error("effective_sample_size: set is not normalized");
  if (set.empty()) throw std::logic_error("effective_sample_size: empty set");
  double sum_sq = 0.0;
  for (const Particle& p : set.particles) sum_sq += p.weight * p.weight;
  const double n = static_cast<double>(set.size());
  return std::clamp(1.0 / sum_sq, 1.0, n);
}

bool should_resample(const ParticleSet& set, const FilterConfig& config) {
  return effective_sample_size(set) <= static_cast<double>(set.size()) * config.resample_fraction;
}

std::vector<std::size_t> multinomial_indices(std::span<const double> weights, std::size_t count,
                                             Rng& rng) {
  const std::size_t n = weights.size();
  if (n == 0) throw std::invalid_argument("multinomial_indices: no categories");

  std::vector<double> cdf(n);
  double acc = 0.0;
  std::size_t last_positive = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
      throw std::invalid_argument("multinomial_indices: weights must be finite and >= 0");
    }
    acc += weights[i];
    cdf[i] = acc;
    if (weights[i] > 0.0) last_positive = i;
  }
  if (last_positive == n) throw DegenerateWeightsError("multinomial_indices: all weights are zero");

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> draws(count);
  for (double& u : draws) u = acc * unit(rng);
  std::sort(draws.begin(), draws.end());

  std::vector<std::size_t> out;
  out.reserve(count);
  std::size_t idx = 0;
  for (const double u : draws) {
    while (idx < n && cdf[idx] <= u) ++idx;
    // rounding can push u past the final cdf entry
    out.push_back(idx < n ? idx : last_positive);
  }
  return out;
}

ParticleSet resample_multinomial(ParticleSet set, Rng& rng) {
  if (!set.normalized) throw std::logic_error("resample_multinomial: set is not normalized");
  const std::size_t n = set.size();
  if (n == 0) return set;

  std::vector<double> weights(n);
  for (std::size_t i = 0; i < n; ++i) weights[i] = set.particles[i].weight;
  const std::vector<std::size_t> picks = multinomial_indices(weights, n, rng);

  const double w = 1.0 / static_cast<double>(n);
  std::vector<Particle> out;
  out.reserve(n);
  for (const std::size_t i : picks) out.push_back({set.particles[i].position, w});
  set.particles = std::move(out);
  set.normalized = true;
  return set;
}

Estimate estimate_position(const ParticleSet& set) {
  if (set.empty()) throw std::invalid_argument("estimate_position: empty particle set");
  double sx = 0.0;
  double sy = 0.0;
  for (const Particle& p : set.particles) {
    sx += p.position.x;
    sy += p.position.y;
  }
  const double n = static_cast<double>(set.size());
  return {{sx / n, sy / n}};
}

Estimate weighted_mean(const ParticleSet& set) {
  if (set.empty()) throw std::invalid_argument("weighted_mean: empty particle set");
  double sx = 0.0;
  double sy = 0.0;
  double sw = 0.0;
  for (const Particle& p : set.particles) {
    sx += p.weight * p.position.x;
    sy += p.weight * p.position.y;
    sw += p.weight;
  }
  if (!(sw > 0.0)) throw DegenerateWeightsError("weighted_mean: weights sum to zero");
  return {{sx / sw, sy / sw}};
}

StepResult step(const ParticleSet& set, const FingerprintMap& map, OdometryDelta odo,
                const RssVector& observed, const FilterConfig& config, Rng& rng) {
  ParticleSet next = predict(set, odo, config, rng);
  next = update_weights(std::move(next), map, observed, config);
  next = normalize_weights(std::move(next));

  StepResult result;
  if (should_resample(next, config)) {
    next = resample_multinomial(std::move(next), rng);
    result.resampled = true;
  }
  result.estimate = estimate_position(next);
  result.set = std::move(next);
  return result;
}

ParticleFilter::ParticleFilter(FilterConfig config, double area_length, double area_width)
    : config_(config), rng_(config.seed) {
  set_ = init_particles(config_, area_length, area_width, rng_);
}

StepResult ParticleFilter::step(const FingerprintMap& map, OdometryDelta odo,
                                const RssVector& observed) {
  StepResult result = pfloc::step(set_, map, odo, observed, config_, rng_);
  set_ = result.set;
  return result;
}

}  // namespace pfloc
