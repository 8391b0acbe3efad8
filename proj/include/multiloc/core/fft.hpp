#pragma once

#include <complex>
#include <span>
#include <vector>

namespace multiloc::fft {

// Unnormalized forward DFT.
std::vector<std::complex<double>> forward(std::span<const std::complex<double>> in);

// Inverse DFT scaled by 1/N, so inverse(forward(x)) == x.
std::vector<std::complex<double>> inverse(std::span<const std::complex<double>> in);

// Forward DFT of a real signal, zero-padded (or truncated) to nfft points.
std::vector<std::complex<double>> forward_real(std::span<const double> in,
                                               std::size_t nfft);

}  // namespace multiloc::fft
