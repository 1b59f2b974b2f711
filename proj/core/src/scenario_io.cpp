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

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"
#include "pfloc/sim.hpp"

namespace pfloc {

using nlohmann::json;

namespace {

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(fmt::format("scenario: field '{}' has the wrong type", key));
  }
}

Point2 parse_point(const json& v, const std::string& where) {
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  if (v.is_object() && v.contains("x_m") && v.contains("y_m")) {
    return {v["x_m"].get<double>(), v["y_m"].get<double>()};
  }
  throw std::invalid_argument(
      fmt::format("scenario: {} must be [x, y] or {{\"x_m\": .., \"y_m\": ..}}", where));
}

}  // namespace

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("{}: cannot open scenario file", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();

  json doc;
  try {
    doc = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(fmt::format("{}: invalid JSON: {}", path.string(), e.what()));
  }
  if (!doc.is_object() || !doc.contains("map") || !doc["map"].is_string()) {
    throw std::invalid_argument(fmt::format("{}: 'map' (path string) is required", path.string()));
  }

  std::filesystem::path map_path = doc["map"].get<std::string>();
  if (map_path.is_relative()) map_path = path.parent_path() / map_path;

  ScenarioConfig s;
  s.map = std::make_shared<const FingerprintMap>(load_map(map_path));
  if (doc.contains("robot")) s.robot_position = parse_point(doc["robot"], "robot");
  s.iterations = get_or<std::size_t>(doc, "iterations", s.iterations);
  s.trials = get_or<std::size_t>(doc, "trials", s.trials);

  if (doc.contains("filter")) {
    const json& f = doc["filter"];
    s.filter.n_particles = get_or<std::size_t>(f, "particles", s.filter.n_particles);
    s.filter.sigma = get_or<double>(f, "sigma_dbm", s.filter.sigma);
    s.filter.jitter = get_or<double>(f, "jitter_m", s.filter.jitter);
    s.filter.resample_fraction = get_or<double>(f, "resample_fraction", s.filter.resample_fraction);
    s.filter.seed = get_or<std::uint64_t>(f, "seed", s.filter.seed);
  }
  if (doc.contains("radio")) {
    const json& r = doc["radio"];
    s.radio.p0_dbm = get_or<double>(r, "p0_dbm", s.radio.p0_dbm);
    s.radio.d0_m = get_or<double>(r, "d0_m", s.radio.d0_m);
    s.radio.path_loss_exponent = get_or<double>(r, "path_loss_exponent", s.radio.path_loss_exponent);
    s.radio.shadowing_sigma_dbm =
        get_or<double>(r, "shadowing_sigma_dbm", s.radio.shadowing_sigma_dbm);
  }
  s.observation_noise_sigma = s.radio.shadowing_sigma_dbm;
  if (doc.contains("observation")) {
    const json& o = doc["observation"];
    s.observation_noise_sigma = get_or<double>(o, "noise_sigma_dbm", s.observation_noise_sigma);
    s.fixed_observation = get_or<bool>(o, "fixed", s.fixed_observation);
  }
  if (doc.contains("ap_positions")) {
    const json& aps = doc["ap_positions"];
    if (!aps.is_array()) throw std::invalid_argument("scenario: ap_positions must be an array");
    for (std::size_t j = 0; j < aps.size(); ++j) {
      s.ap_positions.push_back(parse_point(aps[j], fmt::format("ap_positions[{}]", j)));
    }
  } else {
    s.ap_positions = default_ap_positions(s.map->area_length(), s.map->area_width());
  }

  s.validate();
  return s;
}

std::string serialize_scenario(const ScenarioConfig& s, const std::string& map_path) {
  json doc;
  doc["map"] = map_path;
  doc["robot"] = {{"x_m", s.robot_position.x}, {"y_m", s.robot_position.y}};
  doc["iterations"] = s.iterations;
  doc["trials"] = s.trials;
  doc["filter"] = {{"particles", s.filter.n_particles},
                   {"sigma_dbm", s.filter.sigma},
                   {"jitter_m", s.filter.jitter},
                   {"resample_fraction", s.filter.resample_fraction},
                   {"seed", s.filter.seed}};
  doc["radio"] = {{"p0_dbm", s.radio.p0_dbm},
                  {"d0_m", s.radio.d0_m},
                  {"path_loss_exponent", s.radio.path_loss_exponent},
                  {"shadowing_sigma_dbm", s.radio.shadowing_sigma_dbm}};
  doc["observation"] = {{"noise_sigma_dbm", s.observation_noise_sigma},
                        {"fixed", s.fixed_observation}};
  json aps = json::array();
  for (const Point2& p : s.ap_positions) aps.push_back({p.x, p.y});
  doc["ap_positions"] = std::move(aps);
  return doc.dump(2) + "\n";
}

}  // namespace pfloc
