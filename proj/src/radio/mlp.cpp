#include "multiloc/radio/mlp.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "multiloc/core/errors.hpp"
#include "multiloc/core/rng.hpp"

namespace multiloc::radio {

Standardizer Standardizer::fit(const Eigen::MatrixXd& features) {
  if (features.cols() < 1) throw InputError("cannot fit standardizer on empty data");
  Standardizer s;
  s.mean = features.rowwise().mean();
  const Eigen::MatrixXd centered = features.colwise() - s.mean;
  s.stddev = centered.array().square().rowwise().mean().sqrt().matrix();
  // Constant dimensions pass through unscaled.
  s.stddev = s.stddev.array().max(1e-12).matrix();
  return s;
}

Eigen::MatrixXd Standardizer::apply(const Eigen::MatrixXd& features) const {
  if (features.rows() != mean.rows()) {
    throw ShapeError("feature dimension does not match the standardizer");
  }
  return ((features.colwise() - mean).array().colwise() / stddev.array()).matrix();
}

Eigen::VectorXd Standardizer::apply(const Eigen::VectorXd& feature) const {
  if (feature.rows() != mean.rows()) {
    throw ShapeError("feature dimension does not match the standardizer");
  }
  return ((feature - mean).array() / stddev.array()).matrix();
}

MlpModel::MlpModel(std::vector<Layer> layers, Standardizer standardizer)
    : layers_(std::move(layers)), standardizer_(std::move(standardizer)) {
  if (layers_.empty()) throw ShapeError("network needs at least one layer");
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const auto& l = layers_[i];
    if (l.weights.rows() != l.bias.rows()) {
      throw ShapeError("bias length does not match layer output dimension");
    }
    if (i > 0 && layers_[i - 1].weights.rows() != l.weights.cols()) {
      throw ShapeError("consecutive layer dimensions do not chain");
    }
  }
  if (standardizer_.mean.rows() != layers_.front().weights.cols()) {
    throw ShapeError("standardizer dimension does not match the input layer");
  }
}

int MlpModel::input_dim() const { return static_cast<int>(layers_.front().weights.cols()); }
int MlpModel::output_dim() const { return static_cast<int>(layers_.back().weights.rows()); }

Eigen::MatrixXd MlpModel::forward(const Eigen::MatrixXd& standardized) const {
  Eigen::MatrixXd a = standardized;
  for (const auto& layer : layers_) {
    a = (layer.weights * a).colwise() + layer.bias;
    if (layer.activation == Activation::Relu) a = a.cwiseMax(0.0);
  }
  return a;
}

Eigen::MatrixXd MlpModel::predict(const Eigen::MatrixXd& features) const {
  return forward(standardizer_.apply(features));
}

Eigen::Vector3d MlpModel::predict_one(const Eigen::VectorXd& feature) const {
  const Eigen::MatrixXd out = forward(standardizer_.apply(feature));
  if (out.rows() != 3) throw ShapeError("model output is not a 3D position");
  return out.col(0);
}

double mlp_loss_and_gradients(const std::vector<Layer>& layers, const Eigen::MatrixXd& x,
                              const Eigen::MatrixXd& y, Gradients& grads) {
  const auto batch = static_cast<double>(x.cols());
  const std::size_t depth = layers.size();

  // Forward, keeping activations for the backward pass.
  std::vector<Eigen::MatrixXd> activations(depth + 1);
  activations[0] = x;
  for (std::size_t l = 0; l < depth; ++l) {
    Eigen::MatrixXd z = (layers[l].weights * activations[l]).colwise() + layers[l].bias;
    if (layers[l].activation == Activation::Relu) z = z.cwiseMax(0.0);
    activations[l + 1] = std::move(z);
  }

  const Eigen::MatrixXd diff = activations[depth] - y;
  const double loss = diff.squaredNorm() / batch;

  grads.weights.resize(depth);
  grads.bias.resize(depth);
  Eigen::MatrixXd delta = 2.0 * diff / batch;
  for (std::size_t l = depth; l-- > 0;) {
    if (layers[l].activation == Activation::Relu) {
      delta = ((activations[l + 1].array() > 0.0).cast<double>() * delta.array()).matrix();
    }
    grads.weights[l].noalias() = delta * activations[l].transpose();
    grads.bias[l] = delta.rowwise().sum();
    if (l > 0) delta = layers[l].weights.transpose() * delta;
  }
  return loss;
}

std::vector<Layer> init_layers(const MlpArch& arch, std::uint64_t seed) {
  if (arch.input_dim < 1 || arch.output_dim < 1 || arch.hidden_width < 1 ||
      arch.hidden_layers < 0) {
    throw ConfigError("invalid network architecture");
  }
  Rng rng(derive_seed(seed, "mlp.init"));
  std::vector<Layer> layers;
  int in = arch.input_dim;
  for (int l = 0; l < arch.hidden_layers; ++l) {
    Layer layer;
    layer.activation = Activation::Relu;
    layer.weights.resize(arch.hidden_width, in);
    const double scale = std::sqrt(2.0 / in);  // He initialization
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) {
        layer.weights(r, c) = scale * rng.gaussian();
      }
    }
    layer.bias = Eigen::VectorXd::Zero(arch.hidden_width);
    layers.push_back(std::move(layer));
    in = arch.hidden_width;
  }
  Layer out;
  out.activation = Activation::Linear;
  out.weights.resize(arch.output_dim, in);
  const double scale = std::sqrt(1.0 / in);
  for (Eigen::Index r = 0; r < out.weights.rows(); ++r) {
    for (Eigen::Index c = 0; c < out.weights.cols(); ++c) {
      out.weights(r, c) = scale * rng.gaussian();
    }
  }
  out.bias = Eigen::VectorXd::Zero(arch.output_dim);
  layers.push_back(std::move(out));
  return layers;
}

TrainResult train_fcnn(const Eigen::MatrixXd& features, const Eigen::MatrixXd& labels,
                       const MlpArch& arch, const TrainConfig& cfg) {
  if (features.cols() != labels.cols()) {
    throw ShapeError("feature and label counts differ");
  }
  if (features.cols() < 1) throw InputError("empty training set");
  if (features.rows() != arch.input_dim) {
    throw ShapeError("feature dimension does not match the architecture");
  }
  if (labels.rows() != arch.output_dim) {
    throw ShapeError("label dimension does not match the architecture");
  }
  if (cfg.batch_size < 1 || cfg.epochs < 1 || !(cfg.learning_rate > 0.0)) {
    throw ConfigError("invalid training hyperparameters");
  }

  const Standardizer standardizer = Standardizer::fit(features);
  const Eigen::MatrixXd x = standardizer.apply(features);
  const auto n = static_cast<std::size_t>(x.cols());

  std::vector<Layer> layers = init_layers(arch, cfg.seed);
  std::vector<Eigen::MatrixXd> velocity_w;
  std::vector<Eigen::VectorXd> velocity_b;
  for (const auto& l : layers) {
    velocity_w.push_back(Eigen::MatrixXd::Zero(l.weights.rows(), l.weights.cols()));
    velocity_b.push_back(Eigen::VectorXd::Zero(l.bias.rows()));
  }

  Rng shuffle_rng(derive_seed(cfg.seed, "mlp.shuffle"));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  TrainResult result;
  result.loss_curve.reserve(cfg.epochs);
  Gradients grads;
  double lr = cfg.learning_rate;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (std::size_t i = n; i-- > 1;) {
      std::swap(order[i], order[shuffle_rng.uniform_int(0, static_cast<int>(i))]);
    }

    for (std::size_t start = 0; start < n; start += cfg.batch_size) {
      const std::size_t count = std::min<std::size_t>(cfg.batch_size, n - start);
      Eigen::MatrixXd bx(x.rows(), count);
      Eigen::MatrixXd by(labels.rows(), count);
      for (std::size_t i = 0; i < count; ++i) {
        bx.col(i) = x.col(static_cast<Eigen::Index>(order[start + i]));
        by.col(i) = labels.col(static_cast<Eigen::Index>(order[start + i]));
      }

      const double batch_loss = mlp_loss_and_gradients(layers, bx, by, grads);
      if (!std::isfinite(batch_loss)) {
        throw PipelineError("training diverged at epoch " + std::to_string(epoch));
      }
      for (std::size_t l = 0; l < layers.size(); ++l) {
        velocity_w[l] = cfg.momentum * velocity_w[l] - lr * grads.weights[l];
        velocity_b[l] = cfg.momentum * velocity_b[l] - lr * grads.bias[l];
        layers[l].weights += velocity_w[l];
        layers[l].bias += velocity_b[l];
      }
    }
    lr *= cfg.lr_decay;

    // Full-set loss after the epoch, the reported training curve.
    Eigen::MatrixXd a = x;
    for (const auto& layer : layers) {
      a = (layer.weights * a).colwise() + layer.bias;
      if (layer.activation == Activation::Relu) a = a.cwiseMax(0.0);
    }
    const double epoch_loss = (a - labels).squaredNorm() / static_cast<double>(n);
    if (!std::isfinite(epoch_loss)) {
      throw PipelineError("training diverged at epoch " + std::to_string(epoch));
    }
    result.loss_curve.push_back(epoch_loss);
  }

  result.model = MlpModel(std::move(layers), standardizer);
  return result;
}

Eigen::Vector3d predict_fused(const MlpModel& cov_model, const MlpModel& cir_model,
                              const FeatureVector& features) {
  if (features.cov.rows() != cov_model.input_dim()) {
    throw ShapeError("covariance feature length does not match the model");
  }
  if (features.cir.rows() != cir_model.input_dim()) {
    throw ShapeError("cir feature length does not match the model");
  }
  return 0.5 * (cov_model.predict_one(features.cov) + cir_model.predict_one(features.cir));
}

}  // namespace multiloc::radio
