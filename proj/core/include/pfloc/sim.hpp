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
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "pfloc/particle_filter.hpp"
#include "pfloc/rfmap.hpp"

namespace pfloc {

/// Log-distance path loss:  rss(d) = p0 - 10 * n * log10(max(d, d0) / d0).
struct RadioModel {
  double p0_dbm = -40.0;
  double d0_m = 1.0;
  double path_loss_exponent = 2.2;
  double shadowing_sigma_dbm = 2.0;

  void validate() const;
  double rss_at(double distance_m) const;
};

/// Corner-anchored regular landmark grid; landmark RSS is the noiseless
/// path-loss value for each AP. AP ids are "ap0".."ap{K-1}".
FingerprintMap generate_synthetic_map(double area_length, double area_width,
                                      std::span<const Point2> ap_positions, double grid_spacing,
                                      const RadioModel& model);

/// Path-loss RSS at the robot's true distance to each AP plus i.i.d.
/// N(0, noise_sigma^2) noise. noise_sigma == 0 draws nothing.
RssVector simulate_measurement(const RadioModel& model, std::span<const Point2> ap_positions,
                               Point2 robot, double noise_sigma, Rng& rng);

double position_error(Point2 estimate, Point2 truth);

/// One AP per corner plus one at the center.
std::vector<Point2> default_ap_positions(double area_length, double area_width);

struct ScenarioConfig {
  std::shared_ptr<const FingerprintMap> map;
  Point2 robot_position{2.4, 3.6};
  std::size_t iterations = 50;
  std::size_t trials = 10;
  FilterConfig filter;
  double observation_noise_sigma = 2.0;
  RadioModel radio;
  std::vector<Point2> ap_positions;
  /// Draw one observation per trial and reuse it every step, instead of a
  /// fresh noisy sample per step.
  bool fixed_observation = false;

  void validate() const;
};

/// 10x10 m area, corner+center APs, 1 m landmark grid, robot at (2.4, 3.6).
ScenarioConfig default_scenario();

struct TrialResult {
  std::size_t trial_index = 0;
  std::uint64_t seed = 0;
  Point2 estimate;
  double error_m = 0.0;
  std::size_t iterations_run = 0;
  std::size_t resample_count = 0;
  /// Set when the filter degenerated; estimate/error_m are then meaningless.
  std::optional<std::string> failure;

  bool ok() const { return !failure.has_value(); }
};

struct BatchSummary {
  std::vector<TrialResult> results;
  double mean_error_m = 0.0;
  double min_error_m = 0.0;
  double max_error_m = 0.0;
  std::size_t failures = 0;

  std::size_t successes() const { return results.size() - failures; }
};

/// Runs init_particles and then `iterations` stationary steps. The filter
/// RNG is seeded with trial_seed; observation noise comes from a separate
/// stream derived from the same seed, so the simulated world does not
/// depend on the particle count. If final_set is given it receives the
/// particle set after the last completed step.
TrialResult run_trial(const ScenarioConfig& scenario, std::uint64_t trial_seed,
                      std::size_t trial_index = 0, ParticleSet* final_set = nullptr);

/// Trial i uses seed filter.seed + i. Statistics cover successful trials only.
BatchSummary run_batch(const ScenarioConfig& scenario);

BatchSummary summarize(std::vector<TrialResult> results);

/// Columns: trial_index,est_x_m,est_y_m,error_m,resample_count,iterations_run
/// followed by mean/min/max summary rows.
void write_batch_csv(const BatchSummary& summary, std::ostream& out);

/// Scenario file (JSON). Relative map paths resolve against the file's
/// directory. See docs/scenario.md for the schema.
ScenarioConfig load_scenario(const std::filesystem::path& path);
std::string serialize_scenario(const ScenarioConfig& scenario, const std::string& map_path);

}  // namespace pfloc
