#include "multiloc/radio/features.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "multiloc/core/errors.hpp"
#include "multiloc/core/fft.hpp"

namespace multiloc::radio {

Eigen::MatrixXcd spatial_covariance(std::span<const ChannelSnapshot> snapshots) {
  if (snapshots.empty()) throw InputError("spatial covariance needs at least one snapshot");
  const int antennas = snapshots.front().antennas();
  const int subcarriers = snapshots.front().subcarriers();
  if (antennas < 1 || subcarriers < 1) throw ShapeError("empty channel snapshot");

  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(antennas, antennas);
  for (const auto& s : snapshots) {
    if (s.antennas() != antennas || s.subcarriers() != subcarriers) {
      throw ShapeError("snapshot dimensions differ within the covariance window");
    }
    for (int k = 0; k < subcarriers; ++k) {
      r.noalias() += s.H.col(k) * s.H.col(k).adjoint();
    }
  }
  r /= static_cast<double>(snapshots.size() * subcarriers);
  return r;
}

Eigen::VectorXd covariance_features(const Eigen::MatrixXcd& r) {
  if (r.rows() != r.cols()) throw ShapeError("covariance matrix must be square");
  const int a = static_cast<int>(r.rows());
  Eigen::VectorXd features(static_cast<Eigen::Index>(a) * a);
  Eigen::Index idx = 0;
  for (int i = 0; i < a; ++i) {
    features(idx++) = r(i, i).real();
    for (int j = i + 1; j < a; ++j) {
      features(idx++) = r(i, j).real();
      features(idx++) = r(i, j).imag();
    }
  }
  return features;
}

Eigen::VectorXd cir_features(const ChannelSnapshot& snapshot, int taps) {
  const int antennas = snapshot.antennas();
  const int subcarriers = snapshot.subcarriers();
  if (taps < 1 || taps > subcarriers) {
    throw ConfigError("cir tap count must lie in [1, subcarrier_count]");
  }

  const double unitary = std::sqrt(static_cast<double>(subcarriers));
  Eigen::VectorXd features(static_cast<Eigen::Index>(antennas) * taps);
  std::vector<std::complex<double>> row(subcarriers);
  for (int a = 0; a < antennas; ++a) {
    for (int k = 0; k < subcarriers; ++k) row[k] = snapshot.H(a, k);
    const auto cir = fft::inverse(row);  // 1/K-scaled; x sqrt(K) is unitary
    for (int t = 0; t < taps; ++t) {
      features(static_cast<Eigen::Index>(a) * taps + t) = std::abs(cir[t]) * unitary;
    }
  }
  return features;
}

FeatureVector extract_features(std::span<const ChannelSnapshot> cov_window,
                               const ChannelSnapshot& snapshot, int taps) {
  FeatureVector fv;
  fv.cov = covariance_features(spatial_covariance(cov_window));
  fv.cir = cir_features(snapshot, taps);
  return fv;
}

}  // namespace multiloc::radio
