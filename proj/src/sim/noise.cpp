#include "multiloc/sim/noise.hpp"

#include <cmath>

#include "multiloc/core/errors.hpp"
#include "multiloc/core/rng.hpp"

namespace multiloc::sim {

std::vector<double> add_awgn(std::span<const double> data, double snr_db,
                             std::uint64_t seed) {
  double power = 0.0;
  for (double v : data) power += v * v;
  power /= static_cast<double>(data.empty() ? 1 : data.size());
  if (!(power > 0.0)) throw ConfigError("add_awgn: zero-power input, SNR undefined");

  const double sigma = std::sqrt(power / std::pow(10.0, snr_db / 10.0));
  Rng rng(derive_seed(seed, "awgn.real"));
  std::vector<double> out(data.begin(), data.end());
  for (auto& v : out) v += sigma * rng.gaussian();
  return out;
}

Eigen::MatrixXcd add_awgn(const Eigen::MatrixXcd& data, double snr_db,
                          std::uint64_t seed) {
  const double power = data.size() > 0
      ? data.squaredNorm() / static_cast<double>(data.size())
      : 0.0;
  if (!(power > 0.0)) throw ConfigError("add_awgn: zero-power input, SNR undefined");

  const double noise_power = power / std::pow(10.0, snr_db / 10.0);
  const double sigma_component = std::sqrt(noise_power / 2.0);
  Rng rng(derive_seed(seed, "awgn.complex"));
  Eigen::MatrixXcd out = data;
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      out(r, c) += std::complex<double>(sigma_component * rng.gaussian(),
                                        sigma_component * rng.gaussian());
    }
  }
  return out;
}

}  // namespace multiloc::sim
