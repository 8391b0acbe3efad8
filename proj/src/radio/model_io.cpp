#include "multiloc/radio/model_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "multiloc/core/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "MLPM I/O assumes a little-endian host");

namespace multiloc::radio {

namespace {

template <typename T>
void write_raw(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <typename T>
T read_raw(std::ifstream& in, const std::filesystem::path& path) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(v))) {
    throw IoError("truncated model file " + path.string());
  }
  return v;
}

void write_vector_f32(std::ofstream& out, const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    write_raw<float>(out, static_cast<float>(v(i)));
  }
}

Eigen::VectorXd read_vector_f32(std::ifstream& in, Eigen::Index n,
                                const std::filesystem::path& path) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = static_cast<double>(read_raw<float>(in, path));
  }
  return v;
}

}  // namespace

void save_mlpm(const MlpModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write model file " + path.string());
  out.write("MLPM", 4);
  write_raw<std::uint32_t>(out, static_cast<std::uint32_t>(model.layers().size()));
  for (const auto& layer : model.layers()) {
    write_raw<std::uint32_t>(out, static_cast<std::uint32_t>(layer.weights.rows()));
    write_raw<std::uint32_t>(out, static_cast<std::uint32_t>(layer.weights.cols()));
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) {
        write_raw<float>(out, static_cast<float>(layer.weights(r, c)));
      }
    }
    write_vector_f32(out, layer.bias);
    write_raw<std::uint8_t>(out, static_cast<std::uint8_t>(layer.activation));
  }
  write_raw<std::uint32_t>(out, static_cast<std::uint32_t>(model.standardizer().mean.rows()));
  write_vector_f32(out, model.standardizer().mean);
  write_vector_f32(out, model.standardizer().stddev);
  if (!out) throw IoError("write failed for " + path.string());
}

MlpModel load_mlpm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "MLPM", 4) != 0) {
    throw IoError("bad magic in model file " + path.string());
  }
  const auto layer_count = read_raw<std::uint32_t>(in, path);
  if (layer_count == 0) throw IoError("model file has no layers: " + path.string());

  std::vector<Layer> layers;
  layers.reserve(layer_count);
  for (std::uint32_t l = 0; l < layer_count; ++l) {
    const auto rows = read_raw<std::uint32_t>(in, path);
    const auto cols = read_raw<std::uint32_t>(in, path);
    if (rows == 0 || cols == 0) throw IoError("zero layer dimension in " + path.string());
    Layer layer;
    layer.weights.resize(rows, cols);
    for (std::uint32_t r = 0; r < rows; ++r) {
      for (std::uint32_t c = 0; c < cols; ++c) {
        layer.weights(r, c) = static_cast<double>(read_raw<float>(in, path));
      }
    }
    layer.bias = read_vector_f32(in, rows, path);
    const auto act = read_raw<std::uint8_t>(in, path);
    if (act > 1) throw IoError("unknown activation tag in " + path.string());
    layer.activation = static_cast<Activation>(act);
    layers.push_back(std::move(layer));
  }

  Standardizer standardizer;
  const auto dim = read_raw<std::uint32_t>(in, path);
  standardizer.mean = read_vector_f32(in, dim, path);
  standardizer.stddev = read_vector_f32(in, dim, path);
  return MlpModel(std::move(layers), std::move(standardizer));
}

}  // namespace multiloc::radio
