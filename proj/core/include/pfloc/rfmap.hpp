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
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pfloc {

/// Position in the map's local frame, meters. Origin at the area corner.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

double distance(Point2 a, Point2 b);
bool is_finite(Point2 p);

/// RSS readings in dBm, one per access point, in the map's ap_ids order.
struct RssVector {
  std::vector<double> dbm;

  std::size_t size() const { return dbm.size(); }
  std::span<const double> values() const { return dbm; }

  friend bool operator==(const RssVector&, const RssVector&) = default;
};

inline constexpr double kMinRssDbm = -100.0;
inline constexpr double kMaxRssDbm = 0.0;

struct Landmark {
  std::size_t id = 0;
  Point2 position;
  RssVector rss;

  friend bool operator==(const Landmark&, const Landmark&) = default;
};

/// Raised for any map that violates the schema or the type invariants.
/// what() names the offending field, e.g. "landmarks[3].rss_dbm".
class MapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fingerprint radio map: landmark positions with their RSS vectors.
///
/// Immutable once constructed; the constructor enforces every invariant
/// (positive area, dense ids 0..L-1, K entries per RSS vector within
/// [-100, 0] dBm, landmarks inside the area), so a FingerprintMap in hand
/// is always valid and can be shared read-only between filters.
class FingerprintMap {
 public:
  FingerprintMap(double area_length, double area_width,
                 std::vector<std::string> ap_ids,
                 std::vector<Landmark> landmarks);

  double area_length() const { return area_length_; }
  double area_width() const { return area_width_; }
  const std::vector<std::string>& ap_ids() const { return ap_ids_; }
  std::size_t ap_count() const { return ap_ids_.size(); }
  std::span<const Landmark> landmarks() const { return landmarks_; }
  const Landmark& landmark(std::size_t id) const { return landmarks_.at(id); }

  /// Id of the landmark closest to p (Euclidean). Ties go to the lowest id.
  std::size_t nearest_landmark(Point2 p) const;

  /// RSS vector of nearest_landmark(p), unmodified.
  const RssVector& predicted_rss(Point2 p) const;

  friend bool operator==(const FingerprintMap&, const FingerprintMap&) = default;

 private:
  double area_length_;
  double area_width_;
  std::vector<std::string> ap_ids_;
  std::vector<Landmark> landmarks_;
};

FingerprintMap parse_map(std::string_view json_text);
std::string serialize_map(const FingerprintMap& map);

FingerprintMap load_map(const std::filesystem::path& path);
void save_map(const FingerprintMap& map, const std::filesystem::path& path);

}  // namespace pfloc
