#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "multiloc/radio/features.hpp"

namespace multiloc::radio {

enum class Activation : std::uint8_t { Linear = 0, Relu = 1 };

struct Layer {
  Eigen::MatrixXd weights;  // out x in
  Eigen::VectorXd bias;
  Activation activation = Activation::Relu;
};

// Per-dimension zero-mean/unit-variance transform fitted on training
// features only.
struct Standardizer {
  Eigen::VectorXd mean;
  Eigen::VectorXd stddev;

  static Standardizer fit(const Eigen::MatrixXd& features);  // dim x n
  Eigen::MatrixXd apply(const Eigen::MatrixXd& features) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& feature) const;
};

// Fully connected network with ReLU hidden layers and a linear position
// output. Holds the standardizer of its training features so raw feature
// vectors can be fed directly.
class MlpModel {
 public:
  MlpModel() = default;
  MlpModel(std::vector<Layer> layers, Standardizer standardizer);

  int input_dim() const;
  int output_dim() const;
  const std::vector<Layer>& layers() const { return layers_; }
  const Standardizer& standardizer() const { return standardizer_; }

  // Forward pass on raw (unstandardized) inputs, one column per sample.
  Eigen::MatrixXd predict(const Eigen::MatrixXd& features) const;
  Eigen::Vector3d predict_one(const Eigen::VectorXd& feature) const;

  // Forward pass on already-standardized inputs.
  Eigen::MatrixXd forward(const Eigen::MatrixXd& standardized) const;

 private:
  std::vector<Layer> layers_;
  Standardizer standardizer_;
};

struct MlpArch {
  int input_dim = 0;
  int hidden_layers = 8;
  int hidden_width = 512;
  int output_dim = 3;
};

struct TrainConfig {
  double learning_rate = 3e-3;
  int epochs = 80;
  int batch_size = 32;
  std::uint64_t seed = 0;
  double momentum = 0.9;
  double lr_decay = 0.985;  // multiplicative, per epoch
};

struct TrainResult {
  MlpModel model;
  std::vector<double> loss_curve;  // full-set MSE (m^2) after each epoch
};

struct Gradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> bias;
};

// Mean squared position error over the batch (columns of x/y) and its
// parameter gradients. x must already be standardized.
double mlp_loss_and_gradients(const std::vector<Layer>& layers, const Eigen::MatrixXd& x,
                              const Eigen::MatrixXd& y, Gradients& grads);

// Seeded He-initialized layers for the architecture.
std::vector<Layer> init_layers(const MlpArch& arch, std::uint64_t seed);

// Mini-batch SGD with momentum on mean squared position error. The
// standardizer is fitted on the given features, which must be the training
// split. Deterministic given the seed.
TrainResult train_fcnn(const Eigen::MatrixXd& features, const Eigen::MatrixXd& labels,
                       const MlpArch& arch, const TrainConfig& cfg);

// Fusion rule: average of the two network outputs.
Eigen::Vector3d predict_fused(const MlpModel& cov_model, const MlpModel& cir_model,
                              const FeatureVector& features);

}  // namespace multiloc::radio
