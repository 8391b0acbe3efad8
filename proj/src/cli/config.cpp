#include "config.hpp"

#include <fstream>
#include <json.hpp>

#include "multiloc/core/errors.hpp"

namespace multiloc::cli {

using nlohmann::json;

std::vector<Eigen::Vector3d> default_mic_positions() {
  return {{0.1, 0.1, 0.5},  {1.4, 0.05, 2.2}, {2.8, 0.1, 0.8},  {4.1, 0.15, 1.9},
          {4.15, 1.25, 0.6}, {4.1, 2.4, 2.1},  {2.8, 2.45, 0.7}, {1.4, 2.4, 2.3},
          {0.1, 2.35, 1.0},  {0.05, 1.25, 2.0}, {1.0, 1.0, 2.45}, {3.2, 1.5, 2.45}};
}

ExperimentConfig default_config() {
  ExperimentConfig cfg;
  cfg.scene.mic_array = MicArray(default_mic_positions());
  cfg.scene.antenna_count = 24;
  cfg.scene.subcarrier_count = 32;
  cfg.scene.bandwidth = 200e6;  // desk-scale band, resolvable delay taps
  TrajectoryEntry circle;
  circle.name = "circle1";
  circle.spec.pattern = sim::PathPattern::Circle;
  circle.spec.radius = 0.8;
  circle.spec.duration = 8.5;
  cfg.trajectories.push_back(circle);
  return cfg;
}

void ExperimentConfig::validate() const {
  scene.validate();
  if (trajectories.empty()) throw ConfigError("trajectories: at least one required");
  for (const auto& t : trajectories) {
    if (t.name.empty()) throw ConfigError("trajectories[].name: must not be empty");
    if (t.name.find('/') != std::string::npos) {
      throw ConfigError("trajectories[].name: must not contain '/'");
    }
  }
  if (source.kind != "wideband" && source.kind != "chirp") {
    throw ConfigError("source.kind: expected 'wideband' or 'chirp'");
  }
  if (!(source.duration > 0.0)) throw ConfigError("source.duration: must be positive");
  if (audio.enabled && scene.mic_array.empty()) {
    throw ConfigError("scene.mics: audio pipeline needs microphone positions");
  }
  if (!(radio.snapshot_rate > 0.0)) {
    throw ConfigError("radio.snapshot_rate: must be positive");
  }
  if (radio.cir_taps < 1 || radio.cir_taps > scene.subcarrier_count) {
    throw ConfigError("radio.cir_taps: must lie in [1, subcarrier_count]");
  }
  audio.pipeline.gcc.validate();
  audio.pipeline.ransac.validate();
  audio.pipeline.smoother.validate();
}

namespace {

Eigen::Vector3d vec3_from(const json& j, const char* field) {
  if (!j.is_array() || j.size() != 3) {
    throw ConfigError(std::string(field) + ": expected [x, y, z]");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

sim::PathPattern pattern_from(const std::string& s) {
  if (s == "grid") return sim::PathPattern::Grid;
  if (s == "circle") return sim::PathPattern::Circle;
  if (s == "rectangle") return sim::PathPattern::Rectangle;
  if (s == "waypoints") return sim::PathPattern::Waypoints;
  throw ConfigError("trajectories[].pattern: unknown pattern '" + s + "'");
}

std::string pattern_name(sim::PathPattern p) {
  switch (p) {
    case sim::PathPattern::Grid: return "grid";
    case sim::PathPattern::Circle: return "circle";
    case sim::PathPattern::Rectangle: return "rectangle";
    case sim::PathPattern::Waypoints: return "waypoints";
  }
  return "grid";
}

template <typename T>
void read_if(const json& j, const char* key, T& out) {
  if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg = default_config();
  read_if(j, "seed", cfg.seed);

  if (j.contains("scene")) {
    const json& s = j.at("scene");
    read_if(s, "area_x", cfg.scene.area_x);
    read_if(s, "area_y", cfg.scene.area_y);
    read_if(s, "antenna_count", cfg.scene.antenna_count);
    read_if(s, "subcarrier_count", cfg.scene.subcarrier_count);
    read_if(s, "center_frequency", cfg.scene.center_frequency);
    read_if(s, "bandwidth", cfg.scene.bandwidth);
    read_if(s, "audio_sample_rate", cfg.scene.audio_sample_rate);
    read_if(s, "temperature", cfg.scene.temperature);
    if (s.contains("mics") && !s.at("mics").is_null()) {
      std::vector<Eigen::Vector3d> mics;
      for (const auto& m : s.at("mics")) mics.push_back(vec3_from(m, "scene.mics[]"));
      cfg.scene.mic_array = MicArray(std::move(mics));
    }
  }

  if (j.contains("trajectories")) {
    cfg.trajectories.clear();
    for (const auto& t : j.at("trajectories")) {
      TrajectoryEntry entry;
      entry.name = t.value("name", "");
      if (t.contains("pattern")) entry.spec.pattern = pattern_from(t.at("pattern"));
      read_if(t, "speed", entry.spec.speed);
      read_if(t, "rate", entry.spec.rate);
      read_if(t, "z", entry.spec.z);
      read_if(t, "margin", entry.spec.margin);
      read_if(t, "line_spacing", entry.spec.line_spacing);
      read_if(t, "radius", entry.spec.radius);
      read_if(t, "start_time", entry.spec.start_time);
      if (t.contains("duration") && !t.at("duration").is_null()) {
        entry.spec.duration = t.at("duration").get<double>();
      }
      if (t.contains("center") && !t.at("center").is_null()) {
        const auto& c = t.at("center");
        entry.spec.center = {{c.at(0).get<double>(), c.at(1).get<double>()}};
      }
      if (t.contains("waypoints") && !t.at("waypoints").is_null()) {
        for (const auto& w : t.at("waypoints")) {
          entry.spec.waypoints.push_back({w.at(0).get<double>(), w.at(1).get<double>()});
        }
      }
      cfg.trajectories.push_back(std::move(entry));
    }
  }

  if (j.contains("source")) {
    const json& s = j.at("source");
    read_if(s, "kind", cfg.source.kind);
    read_if(s, "duration", cfg.source.duration);
    if (s.contains("band") && !s.at("band").is_null()) {
      cfg.source.band_lo = s.at("band").at(0).get<double>();
      cfg.source.band_hi = s.at("band").at(1).get<double>();
    }
  }

  if (j.contains("audio")) {
    const json& a = j.at("audio");
    read_if(a, "enabled", cfg.audio.enabled);
    if (a.contains("snr_db") && !a.at("snr_db").is_null()) {
      cfg.audio.snr_db = a.at("snr_db").get<double>();
    }
    if (a.contains("echo_gain") && !a.at("echo_gain").is_null()) {
      cfg.audio.echo_gain = a.at("echo_gain").get<double>();
    }
    if (a.contains("interferer") && !a.at("interferer").is_null()) {
      InterfererSpec spec;
      const json& i = a.at("interferer");
      if (i.contains("position")) spec.position = vec3_from(i.at("position"), "audio.interferer.position");
      read_if(i, "gain", spec.gain);
      cfg.audio.interferer = spec;
    }
    if (a.contains("gcc")) {
      const json& g = a.at("gcc");
      read_if(g, "window", cfg.audio.pipeline.gcc.window);
      read_if(g, "hop", cfg.audio.pipeline.gcc.hop);
      read_if(g, "max_lag", cfg.audio.pipeline.gcc.max_lag);
      read_if(g, "score_threshold", cfg.audio.pipeline.gcc.score_threshold);
    }
    if (a.contains("ransac")) {
      const json& r = a.at("ransac");
      read_if(r, "iterations", cfg.audio.pipeline.ransac.iterations);
      read_if(r, "inlier_threshold_s", cfg.audio.pipeline.ransac.inlier_threshold_s);
      read_if(r, "min_inliers", cfg.audio.pipeline.ransac.min_inliers);
    }
    if (a.contains("smoother")) {
      const json& s = a.at("smoother");
      read_if(s, "accel_noise", cfg.audio.pipeline.smoother.accel_noise);
      read_if(s, "meas_noise", cfg.audio.pipeline.smoother.meas_noise);
    }
    if (a.contains("planar_z") && !a.at("planar_z").is_null()) {
      cfg.audio.pipeline.planar_z = a.at("planar_z").get<double>();
    }
  }

  if (j.contains("radio")) {
    const json& r = j.at("radio");
    read_if(r, "enabled", cfg.radio.enabled);
    read_if(r, "snapshot_rate", cfg.radio.snapshot_rate);
    read_if(r, "reflection_gain", cfg.radio.reflection_gain);
    if (r.contains("regime")) {
      const std::string regime = r.at("regime").get<std::string>();
      if (regime == "baseline") {
        cfg.radio.regime = sim::MultipathRegime::Baseline;
      } else if (regime == "rotated") {
        cfg.radio.regime = sim::MultipathRegime::Rotated;
      } else {
        throw ConfigError("radio.regime: expected 'baseline' or 'rotated'");
      }
    }
    if (r.contains("snr_db") && !r.at("snr_db").is_null()) {
      cfg.radio.snr_db = r.at("snr_db").get<double>();
    }
    read_if(r, "cir_taps", cfg.radio.cir_taps);
    read_if(r, "hidden_layers", cfg.radio.hidden_layers);
    read_if(r, "cov_width", cfg.radio.cov_width);
    read_if(r, "cir_width", cfg.radio.cir_width);
    read_if(r, "learning_rate", cfg.radio.learning_rate);
    read_if(r, "epochs", cfg.radio.epochs);
    read_if(r, "batch_size", cfg.radio.batch_size);
    read_if(r, "lr_decay", cfg.radio.lr_decay);
  }
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["seed"] = cfg.seed;

  json scene;
  scene["area_x"] = cfg.scene.area_x;
  scene["area_y"] = cfg.scene.area_y;
  scene["antenna_count"] = cfg.scene.antenna_count;
  scene["subcarrier_count"] = cfg.scene.subcarrier_count;
  scene["center_frequency"] = cfg.scene.center_frequency;
  scene["bandwidth"] = cfg.scene.bandwidth;
  scene["audio_sample_rate"] = cfg.scene.audio_sample_rate;
  scene["temperature"] = cfg.scene.temperature;
  json mics = json::array();
  for (const auto& m : cfg.scene.mic_array.positions()) {
    mics.push_back({m.x(), m.y(), m.z()});
  }
  scene["mics"] = mics;
  j["scene"] = scene;

  json trajectories = json::array();
  for (const auto& t : cfg.trajectories) {
    json entry;
    entry["name"] = t.name;
    entry["pattern"] = pattern_name(t.spec.pattern);
    entry["speed"] = t.spec.speed;
    entry["rate"] = t.spec.rate;
    entry["z"] = t.spec.z;
    entry["margin"] = t.spec.margin;
    entry["line_spacing"] = t.spec.line_spacing;
    entry["radius"] = t.spec.radius;
    entry["start_time"] = t.spec.start_time;
    if (t.spec.duration) entry["duration"] = *t.spec.duration;
    if (t.spec.center) entry["center"] = {(*t.spec.center)[0], (*t.spec.center)[1]};
    if (!t.spec.waypoints.empty()) {
      json w = json::array();
      for (const auto& p : t.spec.waypoints) w.push_back({p[0], p[1]});
      entry["waypoints"] = w;
    }
    trajectories.push_back(entry);
  }
  j["trajectories"] = trajectories;

  j["source"] = {{"kind", cfg.source.kind},
                 {"duration", cfg.source.duration},
                 {"band", {cfg.source.band_lo, cfg.source.band_hi}}};

  json audio;
  audio["enabled"] = cfg.audio.enabled;
  audio["snr_db"] = cfg.audio.snr_db ? json(*cfg.audio.snr_db) : json();
  audio["echo_gain"] = cfg.audio.echo_gain ? json(*cfg.audio.echo_gain) : json();
  if (cfg.audio.interferer) {
    audio["interferer"] = {{"position",
                            {cfg.audio.interferer->position.x(),
                             cfg.audio.interferer->position.y(),
                             cfg.audio.interferer->position.z()}},
                           {"gain", cfg.audio.interferer->gain}};
  } else {
    audio["interferer"] = json();
  }
  audio["gcc"] = {{"window", cfg.audio.pipeline.gcc.window},
                  {"hop", cfg.audio.pipeline.gcc.hop},
                  {"max_lag", cfg.audio.pipeline.gcc.max_lag},
                  {"score_threshold", cfg.audio.pipeline.gcc.score_threshold}};
  audio["ransac"] = {{"iterations", cfg.audio.pipeline.ransac.iterations},
                     {"inlier_threshold_s", cfg.audio.pipeline.ransac.inlier_threshold_s},
                     {"min_inliers", cfg.audio.pipeline.ransac.min_inliers}};
  audio["smoother"] = {{"accel_noise", cfg.audio.pipeline.smoother.accel_noise},
                       {"meas_noise", cfg.audio.pipeline.smoother.meas_noise}};
  audio["planar_z"] =
      cfg.audio.pipeline.planar_z ? json(*cfg.audio.pipeline.planar_z) : json();
  j["audio"] = audio;

  json radio;
  radio["enabled"] = cfg.radio.enabled;
  radio["snapshot_rate"] = cfg.radio.snapshot_rate;
  radio["regime"] =
      cfg.radio.regime == sim::MultipathRegime::Baseline ? "baseline" : "rotated";
  radio["reflection_gain"] = cfg.radio.reflection_gain;
  radio["snr_db"] = cfg.radio.snr_db ? json(*cfg.radio.snr_db) : json();
  radio["cir_taps"] = cfg.radio.cir_taps;
  radio["hidden_layers"] = cfg.radio.hidden_layers;
  radio["cov_width"] = cfg.radio.cov_width;
  radio["cir_width"] = cfg.radio.cir_width;
  radio["learning_rate"] = cfg.radio.learning_rate;
  radio["epochs"] = cfg.radio.epochs;
  radio["batch_size"] = cfg.radio.batch_size;
  radio["lr_decay"] = cfg.radio.lr_decay;
  j["radio"] = radio;
  return j;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config parse error in " + path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

void apply_override(json& j, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override must look like key.path=value: " + assignment);
  }
  const std::string path = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);

  json* node = &j;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot - start);
    if (key.empty()) throw ConfigError("override has an empty path segment: " + assignment);
    if (dot == std::string::npos) {
      json parsed = json::parse(value, nullptr, false);
      (*node)[key] = parsed.is_discarded() ? json(value) : parsed;
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

}  // namespace multiloc::cli
