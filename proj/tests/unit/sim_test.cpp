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

#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include <gtest/gtest.h>

namespace pfloc {
namespace {

TEST(RadioModel, PathLossClosedForm) {
  RadioModel m;
  m.p0_dbm = -40;
  m.path_loss_exponent = 2;
  m.d0_m = 1;
  EXPECT_DOUBLE_EQ(m.rss_at(10.0), -60.0);
  EXPECT_DOUBLE_EQ(m.rss_at(0.3), -40.0);  // floored at d0
  EXPECT_DOUBLE_EQ(m.rss_at(1.0), -40.0);
}

TEST(SyntheticMap, GridCountAndPositions) {
  const std::vector<Point2> aps{{0, 0}, {10, 10}};
  const FingerprintMap map = generate_synthetic_map(10, 10, aps, 2.0, RadioModel{});
  ASSERT_EQ(map.landmarks().size(), 36u);
  std::set<std::pair<double, double>> seen;
  for (const Landmark& lm : map.landmarks()) seen.insert({lm.position.x, lm.position.y});
  for (int i = 0; i <= 10; i += 2) {
    for (int j = 0; j <= 10; j += 2) EXPECT_TRUE(seen.count({i, j})) << i << "," << j;
  }
  EXPECT_EQ(map.ap_ids(), (std::vector<std::string>{"ap0", "ap1"}));
}

TEST(SyntheticMap, LandmarkRssIsNoiselessPathLoss) {
  RadioModel m;
  m.p0_dbm = -40;
  m.path_loss_exponent = 2;
  const std::vector<Point2> aps{{0, 0}, {10, 0}};
  const FingerprintMap map = generate_synthetic_map(10, 10, aps, 10.0, m);
  // landmark at (0,0): coincident with ap0 (floored), 10 m from ap1
  const Landmark& origin = map.landmark(map.nearest_landmark({0, 0}));
  EXPECT_DOUBLE_EQ(origin.rss.dbm[0], -40.0);
  EXPECT_DOUBLE_EQ(origin.rss.dbm[1], -60.0);
  // landmark at (10,10): sqrt(200) m from ap0
  const Landmark& far = map.landmark(map.nearest_landmark({10, 10}));
  EXPECT_NEAR(far.rss.dbm[0], -40.0 - 20.0 * std::log10(std::sqrt(200.0)), 1e-12);
}

TEST(SyntheticMap, RejectsBadGeometry) {
  const std::vector<Point2> aps{{0, 0}};
  EXPECT_THROW(generate_synthetic_map(10, 10, aps, 0.0, RadioModel{}), std::invalid_argument);
  EXPECT_THROW(generate_synthetic_map(10, 4, aps, 5.0, RadioModel{}), std::invalid_argument);
  EXPECT_THROW(generate_synthetic_map(10, 10, {}, 1.0, RadioModel{}), std::invalid_argument);
}

TEST(SimulateMeasurement, NoiselessIsDeterministicPathLoss) {
  RadioModel m;
  const std::vector<Point2> aps = default_ap_positions(10, 10);
  Rng a(1), b(2);
  const RssVector r1 = simulate_measurement(m, aps, {2.4, 3.6}, 0.0, a);
  const RssVector r2 = simulate_measurement(m, aps, {2.4, 3.6}, 0.0, b);
  EXPECT_EQ(r1, r2);
  for (std::size_t j = 0; j < aps.size(); ++j) {
    EXPECT_DOUBLE_EQ(r1.dbm[j], m.rss_at(distance({2.4, 3.6}, aps[j])));
  }
}

TEST(SimulateMeasurement, AtAnApReadsReferencePower) {
  RadioModel m;
  const std::vector<Point2> aps = default_ap_positions(10, 10);
  Rng rng(1);
  EXPECT_DOUBLE_EQ(simulate_measurement(m, aps, {5, 5}, 0.0, rng).dbm[4], m.p0_dbm);
}

TEST(SimulateMeasurement, NoiseIsZeroMean) {
  RadioModel m;
  const std::vector<Point2> aps = default_ap_positions(10, 10);
  const Point2 robot{2.4, 3.6};
  const double sigma = 2.0;
  const std::size_t draws = 100000;
  Rng rng(12);
  std::vector<double> sums(aps.size(), 0.0);
  for (std::size_t i = 0; i < draws; ++i) {
    const RssVector r = simulate_measurement(m, aps, robot, sigma, rng);
    for (std::size_t j = 0; j < aps.size(); ++j) sums[j] += r.dbm[j];
  }
  const double se = sigma / std::sqrt(static_cast<double>(draws));
  for (std::size_t j = 0; j < aps.size(); ++j) {
    EXPECT_NEAR(sums[j] / draws, m.rss_at(distance(robot, aps[j])), 3 * se) << "AP " << j;
  }
}

TEST(PositionError, TableRows) {
  EXPECT_NEAR(position_error({2.110, 3.3734}, {2.4, 3.6}), 0.368, 0.0005);
  EXPECT_NEAR(position_error({2.421, 3.5995}, {2.4, 3.6}), 0.0210, 0.0005);
  EXPECT_NEAR(position_error({2.726, 0.8694}, {2.4, 3.6}), 2.7499, 0.0005);
  EXPECT_EQ(position_error({1.5, -2}, {1.5, -2}), 0.0);
}

ScenarioConfig small_scenario(std::size_t particles, std::size_t iterations, std::size_t trials) {
  ScenarioConfig s = default_scenario();
  s.filter.n_particles = particles;
  s.iterations = iterations;
  s.trials = trials;
  s.filter.seed = 500;
  return s;
}

TEST(RunTrial, SingleIteration) {
  const ScenarioConfig s = small_scenario(200, 1, 1);
  const TrialResult r = run_trial(s, 3);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.iterations_run, 1u);
  EXPECT_LE(r.resample_count, 1u);
  EXPECT_EQ(r.error_m, position_error(r.estimate, s.robot_position));
}

TEST(RunTrial, ZeroIterationsRejected) {
  ScenarioConfig s = small_scenario(10, 1, 1);
  s.iterations = 0;
  EXPECT_THROW(run_trial(s, 1), std::invalid_argument);
}

TEST(RunTrial, Deterministic) {
  const ScenarioConfig s = small_scenario(300, 20, 1);
  const TrialResult a = run_trial(s, 77);
  const TrialResult b = run_trial(s, 77);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.error_m, b.error_m);
  EXPECT_EQ(a.resample_count, b.resample_count);
}

TEST(RunTrial, ThousandParticleBatchMeanIsWithinHalfMeter) {
  // Per-trial errors are limited by observation noise (about 80% of single
  // trials land under 0.5 m even with 5000 particles), so the band is checked
  // on the 10-trial mean.
  ScenarioConfig s = small_scenario(1000, 50, 10);
  double sum = 0;
  for (std::uint64_t i = 0; i < 10; ++i) {
    const TrialResult r = run_trial(s, 9000 + i, i);
    ASSERT_TRUE(r.ok());
    EXPECT_LT(r.error_m, 1.5);
    sum += r.error_m;
  }
  EXPECT_LT(sum / 10, 0.5);
}

TEST(RunTrial, DegeneracyBecomesFailedTrial) {
  ScenarioConfig s = small_scenario(50, 5, 1);
  s.filter.sigma = 0.01;
  s.observation_noise_sigma = 0.0;
  s.robot_position = {0.5, 0.5};  // between landmarks: no fingerprint matches exactly
  const TrialResult r = run_trial(s, 1);
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.failure->find("degenerate"), std::string::npos);
  EXPECT_EQ(r.iterations_run, 0u);
}

TEST(RunTrial, FixedObservationModeRuns) {
  ScenarioConfig s = small_scenario(300, 10, 1);
  s.fixed_observation = true;
  const TrialResult a = run_trial(s, 4);
  EXPECT_TRUE(a.ok());
  EXPECT_EQ(a.iterations_run, 10u);
}

TEST(RunBatch, SingleTrialMeanIsThatTrial) {
  const ScenarioConfig s = small_scenario(200, 10, 1);
  const BatchSummary b = run_batch(s);
  ASSERT_EQ(b.results.size(), 1u);
  EXPECT_EQ(b.mean_error_m, b.results[0].error_m);
  EXPECT_EQ(b.min_error_m, b.results[0].error_m);
  EXPECT_EQ(b.max_error_m, b.results[0].error_m);
}

TEST(RunBatch, SummaryStatisticsAndErrorConsistency) {
  const ScenarioConfig s = small_scenario(200, 15, 7);
  const BatchSummary b = run_batch(s);
  ASSERT_EQ(b.results.size(), 7u);
  EXPECT_EQ(b.failures, 0u);
  double sum = 0, lo = 1e9, hi = -1;
  for (std::size_t i = 0; i < b.results.size(); ++i) {
    const TrialResult& r = b.results[i];
    EXPECT_EQ(r.trial_index, i);
    EXPECT_EQ(r.seed, s.filter.seed + i);
    EXPECT_EQ(r.error_m, position_error(r.estimate, s.robot_position));
    sum += r.error_m;
    lo = std::min(lo, r.error_m);
    hi = std::max(hi, r.error_m);
  }
  EXPECT_NEAR(b.mean_error_m, sum / 7, 1e-12);
  EXPECT_EQ(b.min_error_m, lo);
  EXPECT_EQ(b.max_error_m, hi);
}

TEST(RunBatch, SeedIsolation) {
  const BatchSummary three = run_batch(small_scenario(200, 10, 3));
  const BatchSummary six = run_batch(small_scenario(200, 10, 6));
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(three.results[i].estimate, six.results[i].estimate);
    EXPECT_EQ(three.results[i].error_m, six.results[i].error_m);
  }
}

TEST(Summarize, SkipsFailuresAndCountsThem) {
  TrialResult ok1;
  ok1.error_m = 0.2;
  TrialResult ok2;
  ok2.error_m = 0.4;
  TrialResult bad;
  bad.failure = "degenerate";
  const BatchSummary b = summarize({ok1, bad, ok2});
  EXPECT_EQ(b.failures, 1u);
  EXPECT_EQ(b.successes(), 2u);
  EXPECT_NEAR(b.mean_error_m, 0.3, 1e-15);
  EXPECT_EQ(b.min_error_m, 0.2);
  EXPECT_EQ(b.max_error_m, 0.4);
}

TEST(BatchCsv, ColumnsAndSummaryRows) {
  TrialResult r;
  r.trial_index = 0;
  r.estimate = {2.5, 3.5};
  r.error_m = 0.125;
  r.resample_count = 4;
  r.iterations_run = 50;
  TrialResult bad;
  bad.trial_index = 1;
  bad.failure = "degenerate";
  bad.iterations_run = 3;
  std::ostringstream out;
  write_batch_csv(summarize({r, bad}), out);
  EXPECT_EQ(out.str(),
            "trial_index,est_x_m,est_y_m,error_m,resample_count,iterations_run\n"
            "0,2.5,3.5,0.125,4,50\n"
            "1,,,,0,3\n"
            "mean,,,0.125,,\n"
            "min,,,0.125,,\n"
            "max,,,0.125,,\n");
}

TEST(ScenarioConfig, Validation) {
  ScenarioConfig s = default_scenario();
  EXPECT_NO_THROW(s.validate());
  s.robot_position = {11, 1};
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = default_scenario();
  s.ap_positions.pop_back();
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = default_scenario();
  s.trials = 0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = default_scenario();
  s.map.reset();
  EXPECT_THROW(s.validate(), std::invalid_argument);
}

TEST(ScenarioConfig, DefaultsMirrorTheStationaryExperiment) {
  const ScenarioConfig s = default_scenario();
  EXPECT_EQ(s.map->area_length(), 10.0);
  EXPECT_EQ(s.map->ap_count(), 5u);
  EXPECT_EQ(s.map->landmarks().size(), 121u);
  EXPECT_EQ(s.robot_position, (Point2{2.4, 3.6}));
  EXPECT_EQ(s.iterations, 50u);
  EXPECT_EQ(s.filter.sigma, 4.0);
  EXPECT_EQ(s.filter.jitter, 0.05);
  EXPECT_EQ(s.observation_noise_sigma, 2.0);
  EXPECT_EQ(s.radio.path_loss_exponent, 2.2);
}

}  // namespace
}  // namespace pfloc
