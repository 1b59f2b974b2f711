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

#include "pfloc/rfmap.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include <fmt/format.h>

#include "json.hpp"

namespace pfloc {

using nlohmann::json;

double distance(Point2 a, Point2 b) {
  return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y));
}

bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

FingerprintMap::FingerprintMap(double area_length, double area_width,
                               std::vector<std::string> ap_ids,
                               std::vector<Landmark> landmarks)
    : area_length_(area_length),
      area_width_(area_width),
      ap_ids_(std::move(ap_ids)),
      landmarks_(std::move(landmarks)) {
  if (!(std::isfinite(area_length_) && area_length_ > 0.0)) {
    throw MapError(fmt::format("area.length_m must be > 0 (got {})", area_length_));
  }
  if (!(std::isfinite(area_width_) && area_width_ > 0.0)) {
    throw MapError(fmt::format("area.width_m must be > 0 (got {})", area_width_));
  }
  if (ap_ids_.empty()) throw MapError("ap_ids must list at least one access point");
  if (landmarks_.empty()) throw MapError("landmarks must contain at least one entry");

  const std::size_t k = ap_ids_.size();
  for (std::size_t i = 0; i < landmarks_.size(); ++i) {
    const Landmark& lm = landmarks_[i];
    if (lm.id != i) {
      throw MapError(fmt::format("landmarks[{}].id: ids must be exactly 0..{} in order (got {})",
                                 i, landmarks_.size() - 1, lm.id));
    }
    if (!is_finite(lm.position)) {
      throw MapError(fmt::format("landmarks[{}]: position must be finite", i));
    }
    if (lm.position.x < 0.0 || lm.position.x > area_length_ || lm.position.y < 0.0 ||
        lm.position.y > area_width_) {
      throw MapError(fmt::format("landmarks[{}]: position ({}, {}) lies outside the {}x{} area", i,
                                 lm.position.x, lm.position.y, area_length_, area_width_));
    }
    if (lm.rss.size() != k) {
      throw MapError(fmt::format("landmarks[{}].rss_dbm: expected {} entries (one per ap_id), got {}",
                                 i, k, lm.rss.size()));
    }
    for (std::size_t j = 0; j < k; ++j) {
      const double v = lm.rss.dbm[j];
      if (!std::isfinite(v) || v < kMinRssDbm || v > kMaxRssDbm) {
        throw MapError(fmt::format("landmarks[{}].rss_dbm[{}]: {} dBm outside [{}, {}]", i, j, v,
                                   kMinRssDbm, kMaxRssDbm));
      }
    }
  }
}

std::size_t FingerprintMap::nearest_landmark(Point2 p) const {
  std::size_t best = 0;
  double best_sq = std::numeric_limits<double>::infinity();
  for (const Landmark& lm : landmarks_) {
    const double dx = p.x - lm.position.x;
    const double dy = p.y - lm.position.y;
    const double sq = dx * dx + dy * dy;
    // strict: equal distances keep the earlier (lower) id
    if (sq < best_sq) {
      best_sq = sq;
      best = lm.id;
    }
  }
  return best;
}

const RssVector& FingerprintMap::predicted_rss(Point2 p) const {
  return landmarks_[nearest_landmark(p)].rss;
}

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw MapError(fmt::format("{}: expected an object", where));
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw MapError(fmt::format("{}{}{}: missing field", where, where.empty() ? "" : ".", key));
  }
  return *it;
}

double require_number(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number()) {
    throw MapError(fmt::format("{}{}{}: expected a number", where, where.empty() ? "" : ".", key));
  }
  return v.get<double>();
}

}  // namespace

FingerprintMap parse_map(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw MapError(fmt::format("invalid JSON: {}", e.what()));
  }
  if (!doc.is_object()) throw MapError("map document must be a JSON object");

  const json& area = require(doc, "area", "");
  const double length = require_number(area, "length_m", "area");
  const double width = require_number(area, "width_m", "area");

  const json& ap_json = require(doc, "ap_ids", "");
  if (!ap_json.is_array()) throw MapError("ap_ids: expected an array of strings");
  std::vector<std::string> ap_ids;
  for (std::size_t j = 0; j < ap_json.size(); ++j) {
    if (!ap_json[j].is_string()) throw MapError(fmt::format("ap_ids[{}]: expected a string", j));
    ap_ids.push_back(ap_json[j].get<std::string>());
  }

  const json& lm_json = require(doc, "landmarks", "");
  if (!lm_json.is_array()) throw MapError("landmarks: expected an array");
  std::vector<Landmark> landmarks;
  landmarks.reserve(lm_json.size());
  for (std::size_t i = 0; i < lm_json.size(); ++i) {
    const std::string where = fmt::format("landmarks[{}]", i);
    const json& item = lm_json[i];
    const json& id = require(item, "id", where);
    if (!id.is_number_integer() || id.get<long long>() < 0) {
      throw MapError(where + ".id: expected a non-negative integer");
    }
    Landmark lm;
    lm.id = id.get<std::size_t>();
    lm.position = {require_number(item, "x_m", where), require_number(item, "y_m", where)};
    const json& rss = require(item, "rss_dbm", where);
    if (!rss.is_array()) throw MapError(where + ".rss_dbm: expected an array");
    for (std::size_t j = 0; j < rss.size(); ++j) {
      if (!rss[j].is_number()) {
        throw MapError(fmt::format("{}.rss_dbm[{}]: expected a number", where, j));
      }
      lm.rss.dbm.push_back(rss[j].get<double>());
    }
    landmarks.push_back(std::move(lm));
  }
  return FingerprintMap(length, width, std::move(ap_ids), std::move(landmarks));
}

std::string serialize_map(const FingerprintMap& map) {
  json doc;
  doc["area"] = {{"length_m", map.area_length()}, {"width_m", map.area_width()}};
  doc["ap_ids"] = map.ap_ids();
  json landmarks = json::array();
  for (const Landmark& lm : map.landmarks()) {
    landmarks.push_back({{"id", lm.id},
                         {"x_m", lm.position.x},
                         {"y_m", lm.position.y},
                         {"rss_dbm", lm.rss.dbm}});
  }
  doc["landmarks"] = std::move(landmarks);
  return doc.dump(2) + "\n";
}

FingerprintMap load_map(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MapError(fmt::format("{}: cannot open map file", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_map(buf.str());
  } catch (const MapError& e) {
    throw MapError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void save_map(const FingerprintMap& map, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("{}: cannot open for writing", path.string()));
  out << serialize_map(map);
  out.flush();
  if (!out) throw std::runtime_error(fmt::format("{}: write failed", path.string()));
}

}  // namespace pfloc
