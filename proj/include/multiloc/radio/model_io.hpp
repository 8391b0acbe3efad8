#pragma once

#include <filesystem>

#include "multiloc/radio/mlp.hpp"

namespace multiloc::radio {

// Model container: magic "MLPM", u32 layer count, per layer u32 rows,
// u32 cols, f32 weights row-major, f32 biases, activation byte; then the
// standardization vectors as u32 dim, f32 means, f32 stddevs. Little-endian.
void save_mlpm(const MlpModel& model, const std::filesystem::path& path);
MlpModel load_mlpm(const std::filesystem::path& path);

}  // namespace multiloc::radio
