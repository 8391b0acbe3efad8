#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "multiloc/core/types.hpp"
#include "multiloc/radio/features.hpp"

namespace multiloc::radio {

// Odd trajectory numbers train, even numbers test.
struct DatasetSplit {
  std::vector<int> train_ids;
  std::vector<int> test_ids;
  std::optional<std::string> warning;  // set when the test side is empty
};

DatasetSplit build_split(std::span<const int> trajectory_ids);

struct RadioSample {
  FeatureVector features;
  Eigen::Vector3d label = Eigen::Vector3d::Zero();
  double t = 0.0;
  int trajectory_id = 0;
};

// Features per snapshot with ground-truth labels interpolated at the
// snapshot timestamps. The covariance of a sample is computed over one
// snapshot ("instantaneous").
std::vector<RadioSample> build_samples(std::span<const ChannelSnapshot> snapshots,
                                       const Trajectory& ground_truth, int cir_taps,
                                       int trajectory_id);

// Column-stacked matrices for training.
Eigen::MatrixXd stack_cov(std::span<const RadioSample> samples);
Eigen::MatrixXd stack_cir(std::span<const RadioSample> samples);
Eigen::MatrixXd stack_labels(std::span<const RadioSample> samples);

}  // namespace multiloc::radio
