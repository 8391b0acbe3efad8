#pragma once

#include <filesystem>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "multiloc/audio/pipeline.hpp"
#include "multiloc/core/types.hpp"
#include "multiloc/sim/audio_synth.hpp"
#include "multiloc/sim/channel.hpp"
#include "multiloc/sim/trajectory_gen.hpp"

namespace multiloc::cli {

struct SourceSpec {
  std::string kind = "wideband";  // wideband | chirp
  double duration = 8.0;
  double band_lo = 100.0;
  double band_hi = 8000.0;
};

struct InterfererSpec {
  Eigen::Vector3d position{0.3, 0.2, 0.8};
  double gain = 1.0;
};

struct AudioSection {
  bool enabled = true;
  std::optional<double> snr_db;
  std::optional<double> echo_gain;
  std::optional<InterfererSpec> interferer;
  audio::AudioPipelineConfig pipeline;
};

struct RadioSection {
  bool enabled = true;
  double snapshot_rate = 2.5;
  sim::MultipathRegime regime = sim::MultipathRegime::Baseline;
  double reflection_gain = 0.8;
  std::optional<double> snr_db;
  int cir_taps = 16;
  int hidden_layers = 8;
  int cov_width = 512;
  int cir_width = 256;
  double learning_rate = 3e-3;
  int epochs = 50;
  int batch_size = 32;
  double lr_decay = 0.99;
};

struct TrajectoryEntry {
  std::string name;
  sim::TrajectorySpec spec;
};

struct ExperimentConfig {
  std::uint64_t seed = 1;
  SceneConfig scene;
  std::vector<TrajectoryEntry> trajectories;
  SourceSpec source;
  AudioSection audio;
  RadioSection radio;

  // Throws ConfigError with a field-level message on the first bad field.
  void validate() const;
};

// Twelve microphones around the paper-scale room at varied heights; the
// default when a config does not list its own.
std::vector<Eigen::Vector3d> default_mic_positions();

ExperimentConfig default_config();

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

ExperimentConfig load_config(const std::filesystem::path& path);

// Applies one "dotted.path=value" override onto a JSON document; values
// parse as JSON when possible, else as strings.
void apply_override(nlohmann::json& j, const std::string& assignment);

}  // namespace multiloc::cli
