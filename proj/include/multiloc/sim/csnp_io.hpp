#pragma once

#include <filesystem>
#include <vector>

#include "multiloc/core/types.hpp"

namespace multiloc::sim {

// Channel snapshot container: magic "CSNP", u32 antenna count, u32
// subcarrier count, u64 snapshot count, then interleaved (real, imag)
// 32-bit floats, all little-endian. Timestamps travel in a sidecar CSV.
void write_csnp(const std::filesystem::path& path,
                const std::vector<ChannelSnapshot>& snapshots);
std::vector<ChannelSnapshot> read_csnp(const std::filesystem::path& path);

// Sidecar CSV with header "t", one row per snapshot.
void write_snapshot_times(const std::filesystem::path& path,
                          const std::vector<ChannelSnapshot>& snapshots);
std::vector<double> read_snapshot_times(const std::filesystem::path& path);

// Reads the pair and stitches timestamps onto the snapshots.
std::vector<ChannelSnapshot> load_snapshots(const std::filesystem::path& csnp_path,
                                            const std::filesystem::path& times_path);

}  // namespace multiloc::sim
