#include "multiloc/core/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <unordered_map>

#include "multiloc/core/errors.hpp"

namespace multiloc::fft {

namespace {

// Plans are cached per (size, direction) and created under a lock; fftw plan
// creation is not thread-safe, execution on distinct buffers is. Plans are
// created with FFTW_UNALIGNED so they can execute on any caller buffer.
class PlanCache {
 public:
  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto& table = sign == FFTW_FORWARD ? forward_ : backward_;
    auto it = table.find(n);
    if (it != table.end()) return it->second;
    std::vector<std::complex<double>> scratch_in(n), scratch_out(n);
    fftw_plan plan = fftw_plan_dft_1d(
        static_cast<int>(n), reinterpret_cast<fftw_complex*>(scratch_in.data()),
        reinterpret_cast<fftw_complex*>(scratch_out.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw Error("fftw plan creation failed");
    table.emplace(n, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::unordered_map<std::size_t, fftw_plan> forward_;
  std::unordered_map<std::size_t, fftw_plan> backward_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

std::vector<std::complex<double>> execute(std::span<const std::complex<double>> in,
                                          int sign) {
  if (in.empty()) return {};
  std::vector<std::complex<double>> buf(in.begin(), in.end());
  std::vector<std::complex<double>> out(in.size());
  fftw_plan plan = cache().get(in.size(), sign);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(buf.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace

std::vector<std::complex<double>> forward(std::span<const std::complex<double>> in) {
  return execute(in, FFTW_FORWARD);
}

std::vector<std::complex<double>> inverse(std::span<const std::complex<double>> in) {
  auto out = execute(in, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(out.size());
  for (auto& v : out) v *= scale;
  return out;
}

std::vector<std::complex<double>> forward_real(std::span<const double> in,
                                               std::size_t nfft) {
  std::vector<std::complex<double>> padded(nfft, {0.0, 0.0});
  const std::size_t n = std::min(in.size(), nfft);
  for (std::size_t i = 0; i < n; ++i) padded[i] = {in[i], 0.0};
  return forward(padded);
}

}  // namespace multiloc::fft
