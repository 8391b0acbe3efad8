#pragma once

#include <Eigen/Core>
#include <span>

#include "multiloc/core/types.hpp"

namespace multiloc::radio {

// R = 1/(S*K) * sum over snapshots s and subcarriers k of h h^H, with h the
// per-subcarrier antenna vector. Hermitian positive semidefinite.
Eigen::MatrixXcd spatial_covariance(std::span<const ChannelSnapshot> snapshots);

// Real/imaginary parts of the upper triangle including the diagonal, with
// the (identically zero) diagonal imaginary parts dropped: row-major upper
// triangle, Re then Im per off-diagonal entry. Length A^2 for A antennas.
Eigen::VectorXd covariance_features(const Eigen::MatrixXcd& r);

// Per antenna, unitary inverse DFT across subcarriers; magnitudes of the
// first `taps` delay taps, concatenated over antennas.
Eigen::VectorXd cir_features(const ChannelSnapshot& snapshot, int taps);

struct FeatureVector {
  Eigen::VectorXd cov;
  Eigen::VectorXd cir;
};

FeatureVector extract_features(std::span<const ChannelSnapshot> cov_window,
                               const ChannelSnapshot& snapshot, int taps);

}  // namespace multiloc::radio
