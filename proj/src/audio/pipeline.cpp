#include "multiloc/audio/pipeline.hpp"

#include "multiloc/audio/sound_speed.hpp"
#include "multiloc/audio/tdoa.hpp"
#include "multiloc/core/errors.hpp"

namespace multiloc::audio {

std::string to_string(FrameStatus status) {
  switch (status) {
    case FrameStatus::Localized: return "localized";
    case FrameStatus::NoMeasurements: return "no_measurements";
    case FrameStatus::Insufficient: return "insufficient";
    case FrameStatus::NoConsensus: return "no_consensus";
  }
  return "unknown";
}

AudioResult localize_audio(const sim::MultichannelRecording& rec, const MicArray& mics,
                           double temperature_c, const AudioPipelineConfig& cfg) {
  if (rec.channel_count() != mics.count()) {
    throw ShapeError("recording channel count does not match the microphone array");
  }
  const double c = speed_of_sound(temperature_c);

  const auto frames = extract_tdoa_frames(rec, mics, cfg.gcc);
  if (frames.empty()) throw PipelineError("recording too short for one analysis frame");

  const std::size_t minimal = cfg.planar_z ? 3 : 4;
  SolveOptions solve_opts{cfg.planar_z};

  AudioRunReport report;
  report.speed_of_sound = c;
  report.seed = cfg.ransac.seed;
  report.total_frames = static_cast<int>(frames.size());
  report.frames.reserve(frames.size());

  std::vector<RawFrameEstimate> raw;
  raw.reserve(frames.size());
  std::optional<Eigen::Vector3d> prior;

  for (const auto& frame : frames) {
    FrameRecord record;
    record.t = frame.t;

    std::size_t reference_count = 0;
    for (const auto& m : frame.measurements) {
      if (m.mic_i == 0) ++reference_count;
    }

    RawFrameEstimate estimate;
    estimate.t = frame.t;
    if (frame.measurements.empty()) {
      record.status = FrameStatus::NoMeasurements;
    } else if (reference_count < minimal) {
      record.status = FrameStatus::Insufficient;
    } else {
      const auto solution =
          multilaterate_frame(frame, mics, c, cfg.ransac, prior, solve_opts);
      if (solution) {
        record.status = FrameStatus::Localized;
        record.inliers = solution->inlier_count;
        record.residual_s = solution->residual_rms_s;
        estimate.position = solution->position;
        estimate.inlier_count = solution->inlier_count;
        prior = solution->position;  // recent estimate seeds the next frame
        ++report.localized_frames;
      } else {
        record.status = FrameStatus::NoConsensus;
      }
    }
    report.frames.push_back(record);
    raw.push_back(std::move(estimate));
  }

  if (report.localized_frames == 0) {
    throw PipelineError("no frame could be localized");
  }

  SmootherConfig smoother_cfg = cfg.smoother;
  smoother_cfg.rate = rec.sample_rate / cfg.gcc.hop;
  Trajectory trajectory = smooth_trajectory(raw, smoother_cfg);
  return {std::move(trajectory), std::move(report)};
}

}  // namespace multiloc::audio
