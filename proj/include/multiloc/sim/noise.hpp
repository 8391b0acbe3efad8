#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace multiloc::sim {

// Adds zero-mean white Gaussian noise with power = data power / 10^(snr/10).
// Deterministic given the seed. Throws ConfigError on zero-power input
// (undefined SNR).
std::vector<double> add_awgn(std::span<const double> data, double snr_db,
                             std::uint64_t seed);

// Complex variant: circularly symmetric noise, half the power per component.
Eigen::MatrixXcd add_awgn(const Eigen::MatrixXcd& data, double snr_db,
                          std::uint64_t seed);

}  // namespace multiloc::sim
