#include "multiloc/sim/csnp_io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "multiloc/core/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "CSNP I/O assumes a little-endian host");

namespace multiloc::sim {

namespace {

template <typename T>
void write_raw(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <typename T>
T read_raw(std::ifstream& in, const std::filesystem::path& path) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(v))) {
    throw IoError("truncated csnp file " + path.string());
  }
  return v;
}

}  // namespace

void write_csnp(const std::filesystem::path& path,
                const std::vector<ChannelSnapshot>& snapshots) {
  if (snapshots.empty()) throw InputError("no snapshots to write");
  const int antennas = snapshots.front().antennas();
  const int subcarriers = snapshots.front().subcarriers();
  for (const auto& s : snapshots) {
    if (s.antennas() != antennas || s.subcarriers() != subcarriers) {
      throw ShapeError("snapshots have inconsistent dimensions");
    }
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write csnp file " + path.string());
  out.write("CSNP", 4);
  write_raw<std::uint32_t>(out, static_cast<std::uint32_t>(antennas));
  write_raw<std::uint32_t>(out, static_cast<std::uint32_t>(subcarriers));
  write_raw<std::uint64_t>(out, snapshots.size());
  for (const auto& s : snapshots) {
    for (int a = 0; a < antennas; ++a) {
      for (int k = 0; k < subcarriers; ++k) {
        write_raw<float>(out, static_cast<float>(s.H(a, k).real()));
        write_raw<float>(out, static_cast<float>(s.H(a, k).imag()));
      }
    }
  }
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<ChannelSnapshot> read_csnp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open csnp file " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "CSNP", 4) != 0) {
    throw IoError("bad magic in csnp file " + path.string());
  }
  const auto antennas = read_raw<std::uint32_t>(in, path);
  const auto subcarriers = read_raw<std::uint32_t>(in, path);
  const auto count = read_raw<std::uint64_t>(in, path);
  if (antennas == 0 || subcarriers == 0) {
    throw IoError("zero dimensions in csnp file " + path.string());
  }

  std::vector<ChannelSnapshot> snapshots(count);
  for (auto& s : snapshots) {
    s.H.resize(antennas, subcarriers);
    for (std::uint32_t a = 0; a < antennas; ++a) {
      for (std::uint32_t k = 0; k < subcarriers; ++k) {
        const float re = read_raw<float>(in, path);
        const float im = read_raw<float>(in, path);
        s.H(a, k) = {static_cast<double>(re), static_cast<double>(im)};
      }
    }
  }
  return snapshots;
}

void write_snapshot_times(const std::filesystem::path& path,
                          const std::vector<ChannelSnapshot>& snapshots) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write timestamp file " + path.string());
  out << "t\n";
  char buf[64];
  for (const auto& s : snapshots) {
    auto res = std::to_chars(buf, buf + sizeof(buf), s.t, std::chars_format::general, 12);
    out.write(buf, res.ptr - buf);
    out << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<double> read_snapshot_times(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open timestamp file " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty timestamp file " + path.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t") throw IoError("expected header 't' in " + path.string());
  std::vector<double> times;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    double v = 0.0;
    auto res = std::from_chars(line.data(), line.data() + line.size(), v);
    if (res.ec != std::errc{}) throw IoError("bad timestamp in " + path.string());
    times.push_back(v);
  }
  return times;
}

std::vector<ChannelSnapshot> load_snapshots(const std::filesystem::path& csnp_path,
                                            const std::filesystem::path& times_path) {
  auto snapshots = read_csnp(csnp_path);
  const auto times = read_snapshot_times(times_path);
  if (times.size() != snapshots.size()) {
    throw ShapeError("timestamp count does not match snapshot count");
  }
  for (std::size_t i = 0; i < snapshots.size(); ++i) snapshots[i].t = times[i];
  return snapshots;
}

}  // namespace multiloc::sim
