#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <numbers>

#include "multiloc/core/errors.hpp"
#include "multiloc/core/rng.hpp"
#include "multiloc/radio/dataset.hpp"
#include "multiloc/radio/features.hpp"
#include "multiloc/radio/mlp.hpp"
#include "multiloc/radio/model_io.hpp"
#include "multiloc/sim/channel.hpp"
#include "multiloc/sim/trajectory_gen.hpp"

using namespace multiloc;
using namespace multiloc::radio;

namespace {

ChannelSnapshot snapshot_from(const Eigen::MatrixXcd& h, double t = 0.0) {
  ChannelSnapshot s;
  s.H = h;
  s.t = t;
  return s;
}

}  // namespace

TEST_CASE("rank-1 covariance from a single snapshot and subcarrier") {
  Eigen::MatrixXcd h(3, 1);
  h << std::complex<double>(1, 2), std::complex<double>(-0.5, 0.25),
      std::complex<double>(0, -1);
  const auto snap = snapshot_from(h);
  const auto r = spatial_covariance({&snap, 1});
  const Eigen::MatrixXcd expect = h.col(0) * h.col(0).adjoint();
  CHECK((r - expect).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(r.trace().real() == doctest::Approx(h.col(0).squaredNorm()));
}

TEST_CASE("covariance matches a hand-computed outer-product average") {
  // Two subcarriers of a 2-antenna snapshot, averaged by hand.
  Eigen::MatrixXcd h(2, 2);
  h(0, 0) = {1.0, 0.0};
  h(1, 0) = {0.0, 1.0};
  h(0, 1) = {2.0, -1.0};
  h(1, 1) = {0.5, 0.5};
  const auto snap = snapshot_from(h);
  const auto r = spatial_covariance({&snap, 1});
  const Eigen::MatrixXcd expect =
      0.5 * (h.col(0) * h.col(0).adjoint() + h.col(1) * h.col(1).adjoint());
  CHECK((r - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("covariance is Hermitian PSD and phase invariant, features sized A^2") {
  Rng rng(3);
  Eigen::MatrixXcd h(5, 7);
  for (Eigen::Index c = 0; c < 7; ++c) {
    for (Eigen::Index r = 0; r < 5; ++r) h(r, c) = {rng.gaussian(), rng.gaussian()};
  }
  const auto snap = snapshot_from(h);
  const auto r = spatial_covariance({&snap, 1});
  CHECK((r - r.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  const Eigen::VectorXcd probe = Eigen::VectorXcd::Random(5);
  CHECK((probe.adjoint() * r * probe)(0).real() >= -1e-12);

  const auto rotated = snapshot_from(h * std::polar(1.0, 1.234));
  const auto r2 = spatial_covariance({&rotated, 1});
  CHECK((r - r2).cwiseAbs().maxCoeff() < 1e-10);

  CHECK(covariance_features(r).rows() == 25);
  CHECK(covariance_features(Eigen::MatrixXcd::Zero(100, 100)).rows() == 10000);
}

TEST_CASE("cir of a flat spectrum is an impulse of sqrt(K)") {
  const int k = 16;
  const auto snap = snapshot_from(Eigen::MatrixXcd::Ones(2, k));
  const auto f = cir_features(snap, k);
  REQUIRE(f.rows() == 2 * k);
  for (int a = 0; a < 2; ++a) {
    CHECK(f(a * k) == doctest::Approx(std::sqrt(double(k))).epsilon(1e-9));
    for (int t = 1; t < k; ++t) CHECK(std::abs(f(a * k + t)) < 1e-9);
  }
}

TEST_CASE("linear phase ramp maps to a single delayed tap") {
  const int k = 32, d = 5;
  Eigen::MatrixXcd h(1, k);
  for (int i = 0; i < k; ++i) {
    h(0, i) = std::polar(1.0, -2.0 * std::numbers::pi * i * d / double(k));
  }
  const auto f = cir_features(snapshot_from(h), k);
  for (int t = 0; t < k; ++t) {
    if (t == d) {
      CHECK(f(t) == doctest::Approx(std::sqrt(double(k))).epsilon(1e-9));
    } else {
      CHECK(std::abs(f(t)) < 1e-9);
    }
  }
}

TEST_CASE("cir satisfies Parseval and constant-phase invariance") {
  Rng rng(5);
  const int k = 24;
  Eigen::MatrixXcd h(3, k);
  for (Eigen::Index c = 0; c < k; ++c) {
    for (Eigen::Index r = 0; r < 3; ++r) h(r, c) = {rng.gaussian(), rng.gaussian()};
  }
  const auto f = cir_features(snapshot_from(h), k);
  for (int a = 0; a < 3; ++a) {
    double time_power = 0.0;
    for (int t = 0; t < k; ++t) time_power += f(a * k + t) * f(a * k + t);
    const double freq_power = h.row(a).squaredNorm();
    CHECK(time_power == doctest::Approx(freq_power).epsilon(1e-9));
  }

  Eigen::MatrixXcd shifted = h;
  shifted.row(1) *= std::polar(1.0, 0.77);
  const auto f2 = cir_features(snapshot_from(shifted), k);
  CHECK((f - f2).cwiseAbs().maxCoeff() < 1e-9);

  CHECK_THROWS_AS(cir_features(snapshot_from(h), k + 1), ConfigError);
  CHECK_THROWS_AS(cir_features(snapshot_from(h), 0), ConfigError);
}

TEST_CASE("odd/even split") {
  const std::vector<int> ids{1, 2, 3, 4, 5, 6};
  const auto split = build_split(ids);
  CHECK(split.train_ids == std::vector<int>{1, 3, 5});
  CHECK(split.test_ids == std::vector<int>{2, 4, 6});
  CHECK_FALSE(split.warning.has_value());

  const std::vector<int> solo{1};
  const auto one = build_split(solo);
  CHECK(one.train_ids == std::vector<int>{1});
  CHECK(one.test_ids.empty());
  CHECK(one.warning.has_value());

  const std::vector<int> evens{2, 4};
  CHECK_THROWS_AS(build_split(evens), InputError);
  const std::vector<int> dupes{1, 2, 1};
  CHECK_THROWS_AS(build_split(dupes), InputError);
}

TEST_CASE("a single sample is memorized") {
  Eigen::MatrixXd x(6, 1), y(3, 1);
  x << 0.3, -1.2, 0.7, 0.0, 2.0, -0.5;
  y << 1.5, 0.75, 1.0;
  MlpArch arch;
  arch.input_dim = 6;
  arch.hidden_layers = 2;
  arch.hidden_width = 16;
  TrainConfig cfg;
  cfg.epochs = 400;
  cfg.learning_rate = 1e-2;
  cfg.batch_size = 1;
  cfg.seed = 1;
  const auto result = train_fcnn(x, y, arch, cfg);
  CHECK(result.loss_curve.back() < 1e-4);
}

TEST_CASE("analytic gradients match central finite differences") {
  Rng rng(11);
  MlpArch arch;
  arch.input_dim = 5;
  arch.hidden_layers = 1;
  arch.hidden_width = 7;
  auto layers = init_layers(arch, 17);
  Eigen::MatrixXd x(5, 4), y(3, 4);
  for (Eigen::Index c = 0; c < 4; ++c) {
    for (Eigen::Index r = 0; r < 5; ++r) x(r, c) = rng.gaussian();
    for (Eigen::Index r = 0; r < 3; ++r) y(r, c) = rng.gaussian();
  }

  Gradients grads;
  mlp_loss_and_gradients(layers, x, y, grads);

  const double h = 1e-6;
  double max_rel = 0.0;
  Gradients scratch;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    for (Eigen::Index r = 0; r < layers[l].weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < layers[l].weights.cols(); ++c) {
        const double saved = layers[l].weights(r, c);
        layers[l].weights(r, c) = saved + h;
        const double up = mlp_loss_and_gradients(layers, x, y, scratch);
        layers[l].weights(r, c) = saved - h;
        const double down = mlp_loss_and_gradients(layers, x, y, scratch);
        layers[l].weights(r, c) = saved;
        const double numeric = (up - down) / (2.0 * h);
        const double analytic = grads.weights[l](r, c);
        max_rel = std::max(max_rel, std::abs(numeric - analytic) /
                                        std::max({std::abs(numeric), std::abs(analytic), 1e-8}));
      }
    }
    for (Eigen::Index r = 0; r < layers[l].bias.rows(); ++r) {
      const double saved = layers[l].bias(r);
      layers[l].bias(r) = saved + h;
      const double up = mlp_loss_and_gradients(layers, x, y, scratch);
      layers[l].bias(r) = saved - h;
      const double down = mlp_loss_and_gradients(layers, x, y, scratch);
      layers[l].bias(r) = saved;
      const double numeric = (up - down) / (2.0 * h);
      max_rel = std::max(max_rel, std::abs(numeric - grads.bias[l](r)) /
                                      std::max({std::abs(numeric), std::abs(grads.bias[l](r)), 1e-8}));
    }
  }
  CHECK(max_rel < 1e-4);
}

TEST_CASE("training is bitwise reproducible for a fixed seed") {
  Rng rng(29);
  Eigen::MatrixXd x(4, 24), y(3, 24);
  for (Eigen::Index c = 0; c < 24; ++c) {
    for (Eigen::Index r = 0; r < 4; ++r) x(r, c) = rng.gaussian();
    for (Eigen::Index r = 0; r < 3; ++r) y(r, c) = rng.gaussian();
  }
  MlpArch arch;
  arch.input_dim = 4;
  arch.hidden_layers = 2;
  arch.hidden_width = 8;
  TrainConfig cfg;
  cfg.epochs = 15;
  cfg.seed = 77;
  const auto a = train_fcnn(x, y, arch, cfg);
  const auto b = train_fcnn(x, y, arch, cfg);
  REQUIRE(a.model.layers().size() == b.model.layers().size());
  for (std::size_t l = 0; l < a.model.layers().size(); ++l) {
    CHECK((a.model.layers()[l].weights.array() == b.model.layers()[l].weights.array()).all());
    CHECK((a.model.layers()[l].bias.array() == b.model.layers()[l].bias.array()).all());
  }
  CHECK(a.loss_curve == b.loss_curve);
}

TEST_CASE("diverging training reports the epoch") {
  Eigen::MatrixXd x(2, 8), y(3, 8);
  x.setRandom();
  y.setRandom();
  MlpArch arch;
  arch.input_dim = 2;
  arch.hidden_layers = 2;
  arch.hidden_width = 8;
  TrainConfig cfg;
  cfg.learning_rate = 1e8;  // guaranteed blow-up
  cfg.epochs = 60;
  CHECK_THROWS_AS(train_fcnn(x, y, arch, cfg), PipelineError);
}

TEST_CASE("standardization statistics come from the training features only") {
  Rng rng(31);
  Eigen::MatrixXd train(3, 50);
  for (Eigen::Index c = 0; c < train.cols(); ++c) {
    for (Eigen::Index r = 0; r < 3; ++r) train(r, c) = 5.0 + 2.0 * rng.gaussian();
  }
  Eigen::MatrixXd labels = Eigen::MatrixXd::Zero(3, 50);
  MlpArch arch;
  arch.input_dim = 3;
  arch.hidden_layers = 1;
  arch.hidden_width = 4;
  TrainConfig cfg;
  cfg.epochs = 2;
  const auto result = train_fcnn(train, labels, arch, cfg);
  const Eigen::VectorXd mean = train.rowwise().mean();
  CHECK((result.model.standardizer().mean - mean).cwiseAbs().maxCoeff() < 1e-12);
  const Eigen::MatrixXd centered = train.colwise() - mean;
  const Eigen::VectorXd sd =
      centered.array().square().rowwise().mean().sqrt().matrix();
  CHECK((result.model.standardizer().stddev - sd).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("fusion is the average of the two network outputs") {
  // Identity-ish hand-built models: one layer, fixed outputs via zero
  // weights and bias = target.
  auto constant_model = [](int in_dim, const Eigen::Vector3d& out) {
    Layer l;
    l.weights = Eigen::MatrixXd::Zero(3, in_dim);
    l.bias = out;
    l.activation = Activation::Linear;
    Standardizer s;
    s.mean = Eigen::VectorXd::Zero(in_dim);
    s.stddev = Eigen::VectorXd::Ones(in_dim);
    return MlpModel({l}, s);
  };
  const auto ma = constant_model(4, {1.0, 2.0, 0.5});
  const auto mb = constant_model(6, {3.0, 0.0, 1.5});
  FeatureVector fv;
  fv.cov = Eigen::VectorXd::Zero(4);
  fv.cir = Eigen::VectorXd::Zero(6);
  const Eigen::Vector3d fused = predict_fused(ma, mb, fv);
  CHECK((fused - Eigen::Vector3d(2.0, 1.0, 1.0)).norm() < 1e-12);

  const auto same = predict_fused(ma, constant_model(6, {1.0, 2.0, 0.5}), fv);
  CHECK((same - Eigen::Vector3d(1.0, 2.0, 0.5)).norm() < 1e-12);

  fv.cov = Eigen::VectorXd::Zero(5);
  CHECK_THROWS_AS(predict_fused(ma, mb, fv), ShapeError);
}

TEST_CASE("model file round trip") {
  Rng rng(41);
  Eigen::MatrixXd x(6, 30), y(3, 30);
  for (Eigen::Index c = 0; c < 30; ++c) {
    for (Eigen::Index r = 0; r < 6; ++r) x(r, c) = rng.gaussian();
    for (Eigen::Index r = 0; r < 3; ++r) y(r, c) = rng.gaussian();
  }
  MlpArch arch;
  arch.input_dim = 6;
  arch.hidden_layers = 2;
  arch.hidden_width = 10;
  TrainConfig cfg;
  cfg.epochs = 10;
  cfg.seed = 5;
  const auto trained = train_fcnn(x, y, arch, cfg);

  const auto path = std::filesystem::temp_directory_path() / "multiloc_model.mlpm";
  save_mlpm(trained.model, path);
  const auto loaded = load_mlpm(path);
  REQUIRE(loaded.layers().size() == trained.model.layers().size());
  const Eigen::MatrixXd a = trained.model.predict(x);
  const Eigen::MatrixXd b = loaded.predict(x);
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-4);  // f32 storage
  std::filesystem::remove(path);

  const auto bogus = std::filesystem::temp_directory_path() / "multiloc_bogus.mlpm";
  {
    std::ofstream out(bogus, std::ios::binary);
    out << "NOPE";
  }
  CHECK_THROWS_AS(load_mlpm(bogus), IoError);
  std::filesystem::remove(bogus);
}

TEST_CASE("grid-trained fusion beats or matches the single networks on the test split") {
  SceneConfig scene;
  scene.antenna_count = 8;
  scene.subcarrier_count = 16;
  scene.bandwidth = 200e6;  // resolvable delay structure at room scale

  const int cir_taps = 16;
  std::vector<RadioSample> train_samples, test_samples;
  std::vector<int> ids;
  for (int id = 1; id <= 6; ++id) {
    sim::TrajectorySpec spec;
    spec.pattern = sim::PathPattern::Grid;
    spec.margin = 0.3 + 0.05 * id;
    spec.line_spacing = 0.35 + 0.03 * id;
    spec.speed = 0.5;
    spec.rate = 20.0;
    const Trajectory traj = gen_trajectory(spec, scene);
    const auto snaps = sim::synth_channel_track(traj, scene, 8.0,
                                                sim::MultipathRegime::Baseline, 0.8);
    const auto samples = build_samples(snaps, traj, cir_taps, id);
    ids.push_back(id);
    auto& bucket = (id % 2 != 0) ? train_samples : test_samples;
    bucket.insert(bucket.end(), samples.begin(), samples.end());
  }
  const auto split = build_split(ids);
  CHECK(split.train_ids.size() == 3);

  MlpArch cov_arch{static_cast<int>(train_samples.front().features.cov.rows()), 8, 32, 3};
  MlpArch cir_arch{static_cast<int>(train_samples.front().features.cir.rows()), 8, 32, 3};
  TrainConfig cfg;
  cfg.epochs = 200;
  cfg.learning_rate = 3e-3;
  cfg.lr_decay = 0.99;
  cfg.seed = 123;
  const auto cov_net = train_fcnn(stack_cov(train_samples), stack_labels(train_samples),
                                  cov_arch, cfg);
  const auto cir_net = train_fcnn(stack_cir(train_samples), stack_labels(train_samples),
                                  cir_arch, cfg);

  double err_cov = 0.0, err_cir = 0.0, err_fused = 0.0;
  for (const auto& s : test_samples) {
    const Eigen::Vector3d pc = cov_net.model.predict_one(s.features.cov);
    const Eigen::Vector3d pi = cir_net.model.predict_one(s.features.cir);
    const Eigen::Vector3d pf = predict_fused(cov_net.model, cir_net.model, s.features);
    err_cov += (pc.head<2>() - s.label.head<2>()).norm();
    err_cir += (pi.head<2>() - s.label.head<2>()).norm();
    err_fused += (pf.head<2>() - s.label.head<2>()).norm();
  }
  const auto n = static_cast<double>(test_samples.size());
  err_cov /= n;
  err_cir /= n;
  err_fused /= n;

  CHECK(err_fused <= std::min(err_cov, err_cir) * 1.10);
  // In-support accuracy sanity at mini scale: inside 10 % of the diagonal.
  CHECK(err_fused < 0.1 * std::hypot(scene.area_x, scene.area_y));
}

TEST_CASE("dataset labels are interpolated at snapshot timestamps") {
  Trajectory gt({{0.0, 0.0, 0.0, 1.0}, {1.0, 2.0, 1.0, 1.0}});
  std::vector<ChannelSnapshot> snaps(1);
  snaps[0].t = 0.25;
  snaps[0].H = Eigen::MatrixXcd::Ones(2, 4);
  const auto samples = build_samples(snaps, gt, 2, 3);
  REQUIRE(samples.size() == 1);
  CHECK((samples[0].label - Eigen::Vector3d(0.5, 0.25, 1.0)).norm() < 1e-12);
  CHECK(samples[0].trajectory_id == 3);
}
