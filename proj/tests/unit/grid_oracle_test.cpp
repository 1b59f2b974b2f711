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

#include <numeric>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "pfloc/particle_filter.hpp"
#include "pfloc/sim.hpp"
#include "support/oracles.hpp"

namespace pfloc {
namespace {

double sum_of(const GridPosterior& g) {
  return std::accumulate(g.probabilities.begin(), g.probabilities.end(), 0.0);
}

TEST(GridPosterior, UninformativeMapGivesUniformPosterior) {
  const RssVector same{{-50, -60}};
  const FingerprintMap map(10, 10, {"a", "b"},
                           {Landmark{0, {1, 1}, same}, Landmark{1, {6, 3}, same},
                            Landmark{2, {4, 9}, same}});
  const GridPosterior g = grid_posterior(map, RssVector{{-45, -70}}, 4.0, 0.5);
  ASSERT_EQ(g.rows * g.cols, 400u);
  for (double p : g.probabilities) EXPECT_NEAR(p, 1.0 / 400, 1e-15);
}

TEST(GridPosterior, SingleLandmarkMapIsUniform) {
  const FingerprintMap map(8, 6, {"a"}, {Landmark{0, {2, 2}, {{-50}}}});
  const GridPosterior g = grid_posterior(map, RssVector{{-58}}, 2.0, 1.0);
  EXPECT_EQ(g.cols, 8u);
  EXPECT_EQ(g.rows, 6u);
  for (double p : g.probabilities) EXPECT_NEAR(p, 1.0 / 48, 1e-15);
  const Point2 m = posterior_mean(g);
  EXPECT_NEAR(m.x, 4.0, 1e-12);
  EXPECT_NEAR(m.y, 3.0, 1e-12);
}

TEST(GridPosterior, MatchesHandEvaluatedCells) {
  const FingerprintMap map(5, 5, {"a", "b"},
                           {Landmark{0, {0.5, 0.5}, {{-40, -62}}},
                            Landmark{1, {4.0, 1.0}, {{-55, -48}}},
                            Landmark{2, {2.0, 4.5}, {{-60, -58}}}});
  const RssVector observed{{-52, -50}};
  const double sigma = 3.0;
  const GridPosterior g = grid_posterior(map, observed, sigma, 1.0);
  ASSERT_EQ(g.rows, 5u);
  ASSERT_EQ(g.cols, 5u);

  std::vector<double> mass(25);
  double total = 0;
  for (int r = 0; r < 5; ++r) {
    for (int c = 0; c < 5; ++c) {
      const Point2 center{c + 0.5, r + 0.5};
      const std::size_t lm = testing::brute_force_nearest(map.landmarks(), center);
      mass[r * 5 + c] = testing::gaussian_product(observed.values(), map.landmark(lm).rss.values(),
                                                  sigma);
      total += mass[r * 5 + c];
    }
  }
  for (int i = 0; i < 25; ++i) EXPECT_NEAR(g.probabilities[i], mass[i] / total, 1e-12) << i;
}

TEST(GridPosterior, NormalizedAtEveryCellSize) {
  const ScenarioConfig s = default_scenario();
  Rng rng(3);
  const RssVector obs = simulate_measurement(s.radio, s.ap_positions, {6.3, 1.7}, 2.0, rng);
  for (double cell : {1.0, 0.5, 0.25, 0.1, 0.05}) {
    const GridPosterior g = grid_posterior(*s.map, obs, 4.0, cell);
    EXPECT_NEAR(sum_of(g), 1.0, 1e-9) << cell;
    for (double p : g.probabilities) ASSERT_GE(p, 0.0);
  }
}

TEST(GridPosterior, CellCountUsesWholeCellsOnly) {
  const ScenarioConfig s = default_scenario();
  Rng rng(1);
  const RssVector obs = simulate_measurement(s.radio, s.ap_positions, {2.4, 3.6}, 0.0, rng);
  EXPECT_EQ(grid_posterior(*s.map, obs, 4.0, 0.1).probabilities.size(), 10000u);
  const GridPosterior g = grid_posterior(*s.map, obs, 4.0, 3.0);
  EXPECT_EQ(g.cols, 3u);
  EXPECT_EQ(g.cell_center(0, 0), (Point2{1.5, 1.5}));
}

TEST(GridPosterior, RefinementStability) {
  const ScenarioConfig s = default_scenario();
  Rng rng(1);
  const RssVector obs = simulate_measurement(s.radio, s.ap_positions, {2.4, 3.6}, 0.0, rng);
  for (double cell : {0.5, 0.25, 0.1}) {
    const Point2 coarse = posterior_mean(grid_posterior(*s.map, obs, 4.0, cell));
    const Point2 fine = posterior_mean(grid_posterior(*s.map, obs, 4.0, cell / 2));
    EXPECT_LT(distance(coarse, fine), cell) << cell;
  }
}

TEST(GridPosterior, Errors) {
  const FingerprintMap map(4, 4, {"a"}, {Landmark{0, {2, 2}, {{-50}}}});
  EXPECT_THROW(grid_posterior(map, RssVector{{-50}}, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(grid_posterior(map, RssVector{{-50}}, 1.0, 5.0), std::invalid_argument);
  EXPECT_THROW(grid_posterior(map, RssVector{{-50, -40}}, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(grid_posterior(map, RssVector{{-100}}, 1e-3, 1.0), DegenerateWeightsError);
}

GridPosterior manual_grid(std::size_t rows, std::size_t cols, std::vector<double> p) {
  GridPosterior g;
  g.cell_size = 0.5;
  g.origin = {1.0, 2.0};
  g.rows = rows;
  g.cols = cols;
  g.probabilities = std::move(p);
  return g;
}

TEST(PosteriorMean, PointMassIsCellCenter) {
  std::vector<double> p(12, 0.0);
  p[1 * 4 + 2] = 1.0;
  const GridPosterior g = manual_grid(3, 4, p);
  EXPECT_EQ(posterior_mean(g), g.cell_center(1, 2));
  EXPECT_EQ(g.cell_center(1, 2), (Point2{2.25, 2.75}));
}

TEST(PosteriorMean, UniformIsCentroid) {
  const GridPosterior g = manual_grid(4, 6, std::vector<double>(24, 1.0 / 24));
  const Point2 m = posterior_mean(g);
  EXPECT_NEAR(m.x, 1.0 + 1.5, 1e-12);
  EXPECT_NEAR(m.y, 2.0 + 1.0, 1e-12);
}

TEST(PosteriorMean, MatchesWeightedSum) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> p(7 * 9);
    for (double& v : p) v = u(rng);
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    for (double& v : p) v /= total;
    const GridPosterior g = manual_grid(7, 9, p);
    long double sx = 0, sy = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      sx += p[i] * (1.0 + (static_cast<double>(i % 9) + 0.5) * 0.5);
      sy += p[i] * (2.0 + (static_cast<double>(i / 9) + 0.5) * 0.5);
    }
    const Point2 m = posterior_mean(g);
    EXPECT_NEAR(m.x, static_cast<double>(sx), 1e-12);
    EXPECT_NEAR(m.y, static_cast<double>(sy), 1e-12);
  }
}

TEST(PosteriorCsv, OneRowPerCell) {
  const GridPosterior g = manual_grid(1, 2, {0.25, 0.75});
  std::ostringstream out;
  write_posterior_csv(g, out);
  EXPECT_EQ(out.str(), "cell_x_m,cell_y_m,probability\n1.25,2.25,0.25\n1.75,2.25,0.75\n");
}

}  // namespace
}  // namespace pfloc
