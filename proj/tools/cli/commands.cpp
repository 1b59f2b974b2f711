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

#include "commands.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "pfloc/grid_oracle.hpp"
#include "pfloc/rfmap.hpp"
#include "pfloc/sim.hpp"
#include "svg_plot.hpp"

namespace pfloc::cli {

namespace {

namespace fs = std::filesystem;

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw std::invalid_argument(fmt::format("{}: '{}' is not a number", what, text));
  }
  return v;
}

Point2 parse_point(const std::string& text, const std::string& what) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw std::invalid_argument(fmt::format("{}: expected X,Y (got '{}')", what, text));
  }
  return {parse_double(text.substr(0, comma), what), parse_double(text.substr(comma + 1), what)};
}

std::vector<Point2> parse_points(const std::string& text, const std::string& what) {
  std::vector<Point2> pts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (!item.empty()) pts.push_back(parse_point(item, what));
  }
  if (pts.empty()) throw std::invalid_argument(fmt::format("{}: no points given", what));
  return pts;
}

std::pair<double, double> parse_area(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) {
    throw std::invalid_argument(fmt::format("--area: expected LxW (got '{}')", text));
  }
  return {parse_double(text.substr(0, x), "--area"), parse_double(text.substr(x + 1), "--area")};
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error(fmt::format("{}: cannot open for writing", path.string()));
  f << content;
  f.flush();
  if (!f) throw std::runtime_error(fmt::format("{}: write failed", path.string()));
}

std::string fmt4(double v) { return fmt::format("{:.4f}", v); }

std::string summary_line(const BatchSummary& s) {
  return fmt::format("mean_error_m={} min={} max={} trials={} failures={}", fmt4(s.mean_error_m),
                     fmt4(s.min_error_m), fmt4(s.max_error_m), s.results.size(), s.failures);
}

// Radio-model flags shared by gen-map, run and oracle.
struct RadioFlags {
  std::string aps;
  double p0 = -40.0;
  double exponent = 2.2;
  double d0 = 1.0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--aps", aps, "AP positions \"x,y;x,y;...\" (default: corners + center)");
    cmd->add_option("--p0", p0, "Reference power at d0, dBm")->capture_default_str();
    cmd->add_option("--exponent", exponent, "Path-loss exponent")->capture_default_str();
    cmd->add_option("--d0", d0, "Reference distance, m")->capture_default_str();
  }

  RadioModel model(double noise_sigma) const {
    RadioModel m;
    m.p0_dbm = p0;
    m.path_loss_exponent = exponent;
    m.d0_m = d0;
    m.shadowing_sigma_dbm = noise_sigma;
    m.validate();
    return m;
  }

  std::vector<Point2> positions(double length, double width) const {
    return aps.empty() ? default_ap_positions(length, width) : parse_points(aps, "--aps");
  }
};

struct GenMapFlags {
  std::string area = "10x10";
  double spacing = 1.0;
  std::uint64_t seed = 0;
  std::string out;
  RadioFlags radio;
};

int cmd_gen_map(const GenMapFlags& f, std::ostream& out) {
  const auto [length, width] = parse_area(f.area);
  const std::vector<Point2> aps = f.radio.positions(length, width);
  const FingerprintMap map =
      generate_synthetic_map(length, width, aps, f.spacing, f.radio.model(0.0));
  save_map(map, f.out);
  out << fmt::format("wrote {} landmarks x {} APs to {}\n", map.landmarks().size(),
                     map.ap_count(), f.out);
  return kOk;
}

struct RunFlags {
  std::string map;
  std::string scenario;
  std::string robot = "2.4,3.6";
  std::size_t particles = 1000;
  std::size_t iters = 50;
  std::size_t trials = 10;
  double sigma = 4.0;
  double jitter = 0.05;
  double resample_fraction = 0.5;
  double obs_noise = 2.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string plot;
  bool fixed_observation = false;
  bool table1 = false;
  RadioFlags radio;
};

ScenarioConfig scenario_from_flags(const RunFlags& f) {
  if (!f.scenario.empty()) {
    ScenarioConfig s = load_scenario(f.scenario);
    return s;
  }
  if (f.map.empty()) throw std::invalid_argument("run: --map or --scenario is required");
  ScenarioConfig s;
  s.map = std::make_shared<const FingerprintMap>(load_map(f.map));
  s.robot_position = parse_point(f.robot, "--robot");
  s.iterations = f.iters;
  s.trials = f.trials;
  s.filter.n_particles = f.particles;
  s.filter.sigma = f.sigma;
  s.filter.jitter = f.jitter;
  s.filter.resample_fraction = f.resample_fraction;
  s.filter.seed = f.seed;
  s.observation_noise_sigma = f.obs_noise;
  s.radio = f.radio.model(f.obs_noise);
  s.ap_positions = f.radio.positions(s.map->area_length(), s.map->area_width());
  s.fixed_observation = f.fixed_observation;
  s.validate();
  return s;
}

struct BatchOutput {
  BatchSummary summary;
  ParticleSet last_particles;
};

BatchOutput run_with_particles(const ScenarioConfig& s) {
  BatchOutput b;
  b.summary = run_batch(s);
  // Replaying trial 0 reproduces it exactly and yields its final particles.
  run_trial(s, s.filter.seed, 0, &b.last_particles);
  return b;
}

void write_outputs(const ScenarioConfig& s, const BatchOutput& b, const fs::path& csv_path,
                   const std::string& plot_path) {
  std::ostringstream csv;
  write_batch_csv(b.summary, csv);
  write_file(csv_path, csv.str());
  if (!plot_path.empty()) {
    std::vector<Point2> estimates;
    for (const TrialResult& r : b.summary.results) {
      if (r.ok()) estimates.push_back(r.estimate);
    }
    std::ostringstream svg;
    write_svg_plot({s.map.get(), b.last_particles.particles, s.robot_position, estimates}, svg);
    write_file(plot_path, svg.str());
  }
}

fs::path with_suffix(const fs::path& path, const std::string& suffix) {
  fs::path p = path;
  p.replace_filename(path.stem().string() + suffix + path.extension().string());
  return p;
}

int cmd_run(const RunFlags& f, std::ostream& out, std::ostream& err) {
  ScenarioConfig s = scenario_from_flags(f);

  if (!f.table1) {
    const BatchOutput b = run_with_particles(s);
    write_outputs(s, b, f.out, f.plot);
    out << summary_line(b.summary) << '\n';
    for (const TrialResult& r : b.summary.results) {
      if (!r.ok()) err << fmt::format("trial {}: {}\n", r.trial_index, *r.failure);
    }
    return b.summary.successes() == 0 ? kDegenerate : kOk;
  }

  const std::size_t counts[] = {300, 1000};
  std::vector<BatchOutput> batches;
  for (const std::size_t n : counts) {
    ScenarioConfig sn = s;
    sn.filter.n_particles = n;
    batches.push_back(run_with_particles(sn));
    const std::string suffix = fmt::format("_np{}", n);
    write_outputs(sn, batches.back(), with_suffix(f.out, suffix),
                  f.plot.empty() ? std::string{} : with_suffix(f.plot, suffix).string());
  }

  auto cell = [](const TrialResult& r) {
    if (!r.ok()) return fmt::format("{:<20}{:>8}", "(failed)", "-");
    return fmt::format("{:<20}{:>8}", fmt::format("({}, {})", fmt4(r.estimate.x), fmt4(r.estimate.y)),
                       fmt4(r.error_m));
  };
  out << fmt::format("{:>5} | {:<28} | {:<28}\n", "N_p", "300", "1000");
  out << fmt::format("{:>5} | {:<20}{:>8} | {:<20}{:>8}\n", "trial", "estimated position",
                     "error", "estimated position", "error");
  const std::size_t rows = std::max(batches[0].summary.results.size(),
                                    batches[1].summary.results.size());
  for (std::size_t i = 0; i < rows; ++i) {
    out << fmt::format("{:>5} | {} | {}\n", i + 1, cell(batches[0].summary.results[i]),
                       cell(batches[1].summary.results[i]));
  }
  out << fmt::format("{:>5} | {:<20}{:>8} | {:<20}{:>8}\n", "mean", "",
                     fmt4(batches[0].summary.mean_error_m), "",
                     fmt4(batches[1].summary.mean_error_m));
  for (std::size_t k = 0; k < 2; ++k) {
    out << fmt::format("particles={} ", counts[k]) << summary_line(batches[k].summary) << '\n';
  }
  const bool any_empty = std::any_of(batches.begin(), batches.end(),
                                     [](const BatchOutput& b) { return b.summary.successes() == 0; });
  return any_empty ? kDegenerate : kOk;
}

struct OracleFlags {
  std::string map;
  std::string robot = "2.4,3.6";
  double sigma = 4.0;
  double cell = 0.1;
  std::string out;
  RadioFlags radio;
};

int cmd_oracle(const OracleFlags& f, std::ostream& out) {
  const FingerprintMap map = load_map(f.map);
  const Point2 robot = parse_point(f.robot, "--robot");
  const std::vector<Point2> aps = f.radio.positions(map.area_length(), map.area_width());
  if (aps.size() != map.ap_count()) {
    throw std::invalid_argument(
        fmt::format("oracle: {} AP positions but the map has {} APs", aps.size(), map.ap_count()));
  }
  Rng unused(0);
  const RssVector observed = simulate_measurement(f.radio.model(0.0), aps, robot, 0.0, unused);
  const GridPosterior g = grid_posterior(map, observed, f.sigma, f.cell);

  std::ostringstream csv;
  write_posterior_csv(g, csv);
  write_file(f.out, csv.str());

  const Point2 mean = posterior_mean(g);
  out << fmt::format("posterior_mean_x_m={} posterior_mean_y_m={} cells={}\n", fmt4(mean.x),
                     fmt4(mean.y), g.probabilities.size());
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"pfloc: WiFi RSS particle-filter localization toolkit", "pfloc"};
  app.require_subcommand(1);

  GenMapFlags gen;
  CLI::App* gen_cmd = app.add_subcommand("gen-map", "Generate a synthetic fingerprint map");
  gen_cmd->add_option("--area", gen.area, "Area as LxW in meters")->capture_default_str();
  gen_cmd->add_option("--spacing", gen.spacing, "Landmark grid spacing, m")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Seed (the generated map is noiseless)")
      ->envname("PFLOC_SEED");
  gen_cmd->add_option("--out", gen.out, "Output map JSON")->required();
  gen.radio.add_to(gen_cmd);

  RunFlags run;
  CLI::App* run_cmd = app.add_subcommand("run", "Run repeated stationary-robot trials");
  run_cmd->add_option("--map", run.map, "Fingerprint map JSON");
  run_cmd->add_option("--scenario", run.scenario, "Scenario JSON (replaces the other flags)");
  run_cmd->add_option("--robot", run.robot, "True robot position X,Y")->capture_default_str();
  run_cmd->add_option("--particles", run.particles, "Particle count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run_cmd->add_option("--iters", run.iters, "Filter steps per trial")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run_cmd->add_option("--trials", run.trials, "Trials per batch")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run_cmd->add_option("--sigma", run.sigma, "Likelihood sigma, dBm")->capture_default_str();
  run_cmd->add_option("--jitter", run.jitter, "Uniform position noise half-width, m")
      ->capture_default_str();
  run_cmd->add_option("--resample-fraction", run.resample_fraction,
                      "Resample when ESS <= N * fraction")
      ->capture_default_str();
  run_cmd->add_option("--obs-noise", run.obs_noise, "Observation noise sigma, dBm")
      ->capture_default_str();
  run_cmd->add_option("--seed", run.seed, "Base seed; trial i uses seed + i")
      ->envname("PFLOC_SEED")
      ->capture_default_str();
  run_cmd->add_option("--out", run.out, "Results CSV")->required();
  run_cmd->add_option("--plot", run.plot, "Optional SVG scatter plot");
  run_cmd->add_flag("--fixed-observation", run.fixed_observation,
                    "Reuse one noisy observation for every step of a trial");
  run_cmd->add_flag("--table1", run.table1, "Run N_p = 300 and 1000 and print a comparison table");
  run.radio.add_to(run_cmd);

  OracleFlags oracle;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Brute-force grid posterior for one observation");
  oracle_cmd->add_option("--map", oracle.map, "Fingerprint map JSON")->required();
  oracle_cmd->add_option("--robot", oracle.robot, "True robot position X,Y")->capture_default_str();
  oracle_cmd->add_option("--sigma", oracle.sigma, "Likelihood sigma, dBm")->capture_default_str();
  oracle_cmd->add_option("--cell", oracle.cell, "Cell size, m")->capture_default_str();
  oracle_cmd->add_option("--out", oracle.out, "Posterior CSV")->required();
  oracle.radio.add_to(oracle_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen_map(gen, out);
    if (run_cmd->parsed()) return cmd_run(run, out, err);
    if (oracle_cmd->parsed()) return cmd_oracle(oracle, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace pfloc::cli
