#include "multiloc/radio/dataset.hpp"

#include <algorithm>
#include <set>

#include "multiloc/core/errors.hpp"

namespace multiloc::radio {

DatasetSplit build_split(std::span<const int> trajectory_ids) {
  if (trajectory_ids.empty()) throw InputError("no trajectory ids to split");
  std::set<int> seen;
  DatasetSplit split;
  for (int id : trajectory_ids) {
    if (!seen.insert(id).second) {
      throw InputError("duplicate trajectory id " + std::to_string(id));
    }
    if (id % 2 != 0) {
      split.train_ids.push_back(id);
    } else {
      split.test_ids.push_back(id);
    }
  }
  if (split.train_ids.empty()) {
    throw InputError("split has an empty training set (no odd-numbered trajectories)");
  }
  if (split.test_ids.empty()) {
    split.warning = "split has an empty test set (no even-numbered trajectories)";
  }
  return split;
}

std::vector<RadioSample> build_samples(std::span<const ChannelSnapshot> snapshots,
                                       const Trajectory& ground_truth, int cir_taps,
                                       int trajectory_id) {
  std::vector<RadioSample> samples;
  samples.reserve(snapshots.size());
  for (const auto& snap : snapshots) {
    RadioSample s;
    s.features = extract_features({&snap, 1}, snap, cir_taps);
    s.label = ground_truth.position_at(snap.t);
    s.t = snap.t;
    s.trajectory_id = trajectory_id;
    samples.push_back(std::move(s));
  }
  return samples;
}

namespace {

template <typename Get>
Eigen::MatrixXd stack(std::span<const RadioSample> samples, Get get) {
  if (samples.empty()) throw InputError("no samples to stack");
  const Eigen::Index dim = get(samples.front()).rows();
  Eigen::MatrixXd out(dim, static_cast<Eigen::Index>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (get(samples[i]).rows() != dim) {
      throw ShapeError("inconsistent feature dimensions across samples");
    }
    out.col(static_cast<Eigen::Index>(i)) = get(samples[i]);
  }
  return out;
}

}  // namespace

Eigen::MatrixXd stack_cov(std::span<const RadioSample> samples) {
  return stack(samples, [](const RadioSample& s) -> const Eigen::VectorXd& {
    return s.features.cov;
  });
}

Eigen::MatrixXd stack_cir(std::span<const RadioSample> samples) {
  return stack(samples, [](const RadioSample& s) -> const Eigen::VectorXd& {
    return s.features.cir;
  });
}

Eigen::MatrixXd stack_labels(std::span<const RadioSample> samples) {
  if (samples.empty()) throw InputError("no samples to stack");
  Eigen::MatrixXd out(3, static_cast<Eigen::Index>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out.col(static_cast<Eigen::Index>(i)) = samples[i].label;
  }
  return out;
}

}  // namespace multiloc::radio
