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

#include "pfloc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <utility>

#include <fmt/format.h>

namespace pfloc {

void RadioModel::validate() const {
  if (!(std::isfinite(p0_dbm))) throw std::invalid_argument("radio: p0 must be finite");
  if (!(d0_m > 0.0)) throw std::invalid_argument("radio: d0 must be > 0");
  if (!(path_loss_exponent > 0.0)) throw std::invalid_argument("radio: path-loss exponent must be > 0");
  if (!(shadowing_sigma_dbm >= 0.0)) throw std::invalid_argument("radio: shadowing sigma must be >= 0");
}

double RadioModel::rss_at(double distance_m) const {
  return p0_dbm - 10.0 * path_loss_exponent * std::log10(std::max(distance_m, d0_m) / d0_m);
}

namespace {

// Number of grid lines in [0, extent] at the given spacing, both ends included
// when extent is a multiple of spacing.
std::size_t grid_count(double extent, double spacing) {
  return static_cast<std::size_t>(std::floor(extent / spacing + 1e-9)) + 1;
}

}  // namespace

FingerprintMap generate_synthetic_map(double area_length, double area_width,
                                      std::span<const Point2> ap_positions, double grid_spacing,
                                      const RadioModel& model) {
  model.validate();
  if (!(area_length > 0.0 && area_width > 0.0)) {
    throw std::invalid_argument("synthetic map: area dimensions must be > 0");
  }
  if (ap_positions.empty()) throw std::invalid_argument("synthetic map: need at least one AP");
  if (!(grid_spacing > 0.0 && grid_spacing <= std::min(area_length, area_width))) {
    throw std::invalid_argument(fmt::format(
        "synthetic map: grid spacing must lie in (0, {}] (got {})",
        std::min(area_length, area_width), grid_spacing));
  }

  std::vector<std::string> ap_ids;
  for (std::size_t j = 0; j < ap_positions.size(); ++j) ap_ids.push_back(fmt::format("ap{}", j));

  const std::size_t nx = grid_count(area_length, grid_spacing);
  const std::size_t ny = grid_count(area_width, grid_spacing);
  std::vector<Landmark> landmarks;
  landmarks.reserve(nx * ny);
  for (std::size_t ix = 0; ix < nx; ++ix) {
    for (std::size_t iy = 0; iy < ny; ++iy) {
      Landmark lm;
      lm.id = landmarks.size();
      lm.position = {std::min(static_cast<double>(ix) * grid_spacing, area_length),
                     std::min(static_cast<double>(iy) * grid_spacing, area_width)};
      for (const Point2& ap : ap_positions) {
        lm.rss.dbm.push_back(model.rss_at(distance(lm.position, ap)));
      }
      landmarks.push_back(std::move(lm));
    }
  }
  return FingerprintMap(area_length, area_width, std::move(ap_ids), std::move(landmarks));
}

RssVector simulate_measurement(const RadioModel& model, std::span<const Point2> ap_positions,
                               Point2 robot, double noise_sigma, Rng& rng) {
  RssVector out;
  out.dbm.reserve(ap_positions.size());
  if (noise_sigma > 0.0) {
    std::normal_distribution<double> noise(0.0, noise_sigma);
    for (const Point2& ap : ap_positions) {
      out.dbm.push_back(model.rss_at(distance(robot, ap)) + noise(rng));
    }
  } else {
    for (const Point2& ap : ap_positions) out.dbm.push_back(model.rss_at(distance(robot, ap)));
  }
  return out;
}

double position_error(Point2 estimate, Point2 truth) { return distance(estimate, truth); }

std::vector<Point2> default_ap_positions(double area_length, double area_width) {
  return {{0.0, 0.0},
          {area_length, 0.0},
          {0.0, area_width},
          {area_length, area_width},
          {area_length / 2.0, area_width / 2.0}};
}

void ScenarioConfig::validate() const {
  if (!map) throw std::invalid_argument("scenario: no map");
  if (!is_finite(robot_position) || robot_position.x < 0.0 ||
      robot_position.x > map->area_length() || robot_position.y < 0.0 ||
      robot_position.y > map->area_width()) {
    throw std::invalid_argument(fmt::format("scenario: robot position ({}, {}) is outside the map area",
                                            robot_position.x, robot_position.y));
  }
  if (iterations < 1) throw std::invalid_argument("scenario: iterations must be >= 1");
  if (trials < 1) throw std::invalid_argument("scenario: trials must be >= 1");
  if (!(observation_noise_sigma >= 0.0)) {
    throw std::invalid_argument("scenario: observation noise sigma must be >= 0");
  }
  if (ap_positions.size() != map->ap_count()) {
    throw std::invalid_argument(fmt::format("scenario: {} AP positions given but the map has {} APs",
                                            ap_positions.size(), map->ap_count()));
  }
  filter.validate();
  radio.validate();
}

ScenarioConfig default_scenario() {
  ScenarioConfig s;
  s.ap_positions = default_ap_positions(10.0, 10.0);
  s.map = std::make_shared<const FingerprintMap>(
      generate_synthetic_map(10.0, 10.0, s.ap_positions, 1.0, s.radio));
  s.observation_noise_sigma = s.radio.shadowing_sigma_dbm;
  return s;
}

namespace {

Rng observation_rng(std::uint64_t trial_seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(trial_seed),
                    static_cast<std::uint32_t>(trial_seed >> 32), 0x6f627376u};
  return Rng(seq);
}

}  // namespace

TrialResult run_trial(const ScenarioConfig& scenario, std::uint64_t trial_seed,
                      std::size_t trial_index, ParticleSet* final_set) {
  scenario.validate();
  const FingerprintMap& map = *scenario.map;

  FilterConfig cfg = scenario.filter;
  cfg.seed = trial_seed;
  ParticleFilter filter(cfg, map.area_length(), map.area_width());
  Rng world = observation_rng(trial_seed);

  TrialResult result;
  result.trial_index = trial_index;
  result.seed = trial_seed;

  std::optional<RssVector> fixed;
  if (scenario.fixed_observation) {
    fixed = simulate_measurement(scenario.radio, scenario.ap_positions, scenario.robot_position,
                                 scenario.observation_noise_sigma, world);
  }

  Estimate estimate = filter.estimate();
  for (std::size_t it = 0; it < scenario.iterations; ++it) {
    const RssVector observed =
        fixed ? *fixed
              : simulate_measurement(scenario.radio, scenario.ap_positions,
                                     scenario.robot_position, scenario.observation_noise_sigma,
                                     world);
    try {
      const StepResult sr = filter.step(map, OdometryDelta{}, observed);
      estimate = sr.estimate;
      if (sr.resampled) ++result.resample_count;
    } catch (const DegenerateWeightsError& e) {
      result.failure = fmt::format("degenerate filter at iteration {}: {}", it + 1, e.what());
      result.estimate = estimate.position;
      result.error_m = std::numeric_limits<double>::quiet_NaN();
      if (final_set) *final_set = filter.particles();
      return result;
    }
    result.iterations_run = it + 1;
  }
  result.estimate = estimate.position;
  result.error_m = position_error(result.estimate, scenario.robot_position);
  if (final_set) *final_set = filter.particles();
  return result;
}

BatchSummary summarize(std::vector<TrialResult> results) {
  BatchSummary summary;
  summary.results = std::move(results);
  double sum = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const TrialResult& r : summary.results) {
    if (!r.ok()) {
      ++summary.failures;
      continue;
    }
    sum += r.error_m;
    lo = std::min(lo, r.error_m);
    hi = std::max(hi, r.error_m);
  }
  const std::size_t ok = summary.successes();
  if (ok == 0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    summary.mean_error_m = summary.min_error_m = summary.max_error_m = nan;
  } else {
    summary.mean_error_m = sum / static_cast<double>(ok);
    summary.min_error_m = lo;
    summary.max_error_m = hi;
  }
  return summary;
}

BatchSummary run_batch(const ScenarioConfig& scenario) {
  scenario.validate();
  std::vector<TrialResult> results;
  results.reserve(scenario.trials);
  for (std::size_t i = 0; i < scenario.trials; ++i) {
    results.push_back(run_trial(scenario, scenario.filter.seed + i, i));
  }
  return summarize(std::move(results));
}

void write_batch_csv(const BatchSummary& summary, std::ostream& out) {
  out << "trial_index,est_x_m,est_y_m,error_m,resample_count,iterations_run\n";
  for (const TrialResult& r : summary.results) {
    if (r.ok()) {
      out << fmt::format("{},{},{},{},{},{}\n", r.trial_index, r.estimate.x, r.estimate.y,
                         r.error_m, r.resample_count, r.iterations_run);
    } else {
      out << fmt::format("{},,,,{},{}\n", r.trial_index, r.resample_count, r.iterations_run);
    }
  }
  out << fmt::format("mean,,,{},,\n", summary.mean_error_m);
  out << fmt::format("min,,,{},,\n", summary.min_error_m);
  out << fmt::format("max,,,{},,\n", summary.max_error_m);
}

}  // namespace pfloc
