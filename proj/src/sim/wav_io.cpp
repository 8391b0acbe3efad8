#include "multiloc/sim/wav_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "multiloc/core/errors.hpp"

namespace multiloc::sim {

namespace {

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
  put_u16(out, static_cast<std::uint16_t>(v & 0xffff));
  put_u16(out, static_cast<std::uint16_t>(v >> 16));
}

std::uint32_t get_u32(const char* p) {
  return static_cast<std::uint32_t>(static_cast<unsigned char>(p[0])) |
         static_cast<std::uint32_t>(static_cast<unsigned char>(p[1])) << 8 |
         static_cast<std::uint32_t>(static_cast<unsigned char>(p[2])) << 16 |
         static_cast<std::uint32_t>(static_cast<unsigned char>(p[3])) << 24;
}

std::uint16_t get_u16(const char* p) {
  return static_cast<std::uint16_t>(static_cast<unsigned char>(p[0]) |
                                    static_cast<unsigned char>(p[1]) << 8);
}

}  // namespace

void write_wav16(const std::filesystem::path& path, std::span<const double> samples,
                 int sample_rate, double scale) {
  if (sample_rate <= 0) throw ConfigError("wav sample rate must be positive");
  const auto data_bytes = static_cast<std::uint32_t>(samples.size() * 2);

  std::string header;
  header.reserve(44);
  header += "RIFF";
  put_u32(header, 36 + data_bytes);
  header += "WAVE";
  header += "fmt ";
  put_u32(header, 16);
  put_u16(header, 1);  // PCM
  put_u16(header, 1);  // mono
  put_u32(header, static_cast<std::uint32_t>(sample_rate));
  put_u32(header, static_cast<std::uint32_t>(sample_rate) * 2);  // byte rate
  put_u16(header, 2);   // block align
  put_u16(header, 16);  // bits per sample
  header += "data";
  put_u32(header, data_bytes);

  std::string body;
  body.reserve(samples.size() * 2);
  for (double v : samples) {
    const double scaled = std::clamp(v * scale, -1.0, 1.0);
    const auto q = static_cast<std::int16_t>(std::lround(scaled * 32767.0));
    put_u16(body, static_cast<std::uint16_t>(q));
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write wav file " + path.string());
  out << header << body;
  if (!out) throw IoError("write failed for " + path.string());
}

WavData read_wav16(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open wav file " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() < 44 || bytes.compare(0, 4, "RIFF") != 0 ||
      bytes.compare(8, 4, "WAVE") != 0) {
    throw IoError("not a RIFF/WAVE file: " + path.string());
  }

  WavData wav;
  std::size_t pos = 12;
  bool have_fmt = false;
  while (pos + 8 <= bytes.size()) {
    const std::string id = bytes.substr(pos, 4);
    const std::uint32_t size = get_u32(bytes.data() + pos + 4);
    pos += 8;
    if (pos + size > bytes.size()) throw IoError("truncated wav chunk in " + path.string());
    if (id == "fmt ") {
      if (size < 16) throw IoError("short fmt chunk in " + path.string());
      const std::uint16_t format = get_u16(bytes.data() + pos);
      const std::uint16_t channels = get_u16(bytes.data() + pos + 2);
      const std::uint16_t bits = get_u16(bytes.data() + pos + 14);
      if (format != 1 || channels != 1 || bits != 16) {
        throw IoError("expected mono 16-bit PCM in " + path.string());
      }
      wav.sample_rate = static_cast<int>(get_u32(bytes.data() + pos + 4));
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw IoError("data chunk before fmt in " + path.string());
      const std::size_t count = size / 2;
      wav.samples.resize(count);
      for (std::size_t i = 0; i < count; ++i) {
        const auto raw = static_cast<std::int16_t>(get_u16(bytes.data() + pos + 2 * i));
        wav.samples[i] = static_cast<double>(raw) / 32767.0;
      }
      return wav;
    }
    pos += size + (size % 2);  // chunks are word-aligned
  }
  throw IoError("no data chunk in " + path.string());
}

}  // namespace multiloc::sim
