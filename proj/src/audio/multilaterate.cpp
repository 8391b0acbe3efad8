#include "multiloc/audio/multilaterate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "multiloc/core/errors.hpp"
#include "multiloc/core/rng.hpp"

namespace multiloc::audio {

namespace {

struct ReferenceMeasurement {
  int mic_j;
  double range_diff;  // c * tau_0j, meters
};

// Count of measurements within the residual gate of position p.
int consensus(const Eigen::Vector3d& p, const MicArray& mics,
              const std::vector<TdoaMeasurement>& ms, double c, double threshold_s) {
  int count = 0;
  for (const auto& m : ms) {
    const double di = (p - mics.at(m.mic_i)).norm();
    const double dj = (p - mics.at(m.mic_j)).norm();
    if (std::abs((dj - di) / c - m.delay_s) <= threshold_s) ++count;
  }
  return count;
}

double residual_rms(const Eigen::Vector3d& p, const MicArray& mics,
                    const std::vector<TdoaMeasurement>& ms, double c,
                    double threshold_s, int* inliers_out) {
  double sum = 0.0;
  int inliers = 0;
  for (const auto& m : ms) {
    const double di = (p - mics.at(m.mic_i)).norm();
    const double dj = (p - mics.at(m.mic_j)).norm();
    const double r = (dj - di) / c - m.delay_s;
    if (std::abs(r) <= threshold_s) {
      sum += r * r;
      ++inliers;
    }
  }
  if (inliers_out) *inliers_out = inliers;
  return inliers > 0 ? std::sqrt(sum / inliers) : 0.0;
}

// Linearized solver: ||p - m_j|| = d0 + delta_j with d0 the unknown range
// to the reference mic. Subtracting the squared reference equation gives
//   2 (m_j - m_0) . p + 2 delta_j d0 = ||m_j||^2 - ||m_0||^2 - delta_j^2,
// linear in (p, d0). Planar mode folds the fixed z into the right side.
// A minimum-norm solve keeps degenerate subsets (e.g. all deltas zero)
// usable; consensus scoring weeds out the rest.
std::optional<Eigen::Vector3d> solve_linear(
    std::span<const ReferenceMeasurement> subset, const MicArray& mics,
    const SolveOptions& opts) {
  const bool planar = opts.planar_z.has_value();
  const int unknowns = planar ? 3 : 4;  // (x, y[, z], d0)
  const Eigen::Vector3d m0 = mics.at(0);

  Eigen::MatrixXd a(subset.size(), unknowns);
  Eigen::VectorXd b(subset.size());
  for (std::size_t r = 0; r < subset.size(); ++r) {
    const Eigen::Vector3d mj = mics.at(subset[r].mic_j);
    const double delta = subset[r].range_diff;
    double rhs = mj.squaredNorm() - m0.squaredNorm() - delta * delta;
    if (planar) {
      a(r, 0) = 2.0 * (mj.x() - m0.x());
      a(r, 1) = 2.0 * (mj.y() - m0.y());
      a(r, 2) = 2.0 * delta;
      rhs -= 2.0 * (mj.z() - m0.z()) * *opts.planar_z;
    } else {
      a.row(r).head<3>() = 2.0 * (mj - m0).transpose();
      a(r, 3) = 2.0 * delta;
    }
    b(r) = rhs;
  }

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  cod.setThreshold(1e-10);
  const Eigen::VectorXd x = cod.solve(b);
  if (!x.allFinite()) return std::nullopt;
  if (planar) return Eigen::Vector3d(x(0), x(1), *opts.planar_z);
  return Eigen::Vector3d(x(0), x(1), x(2));
}

// Damped Gauss-Newton on the reference-pair range-difference cost.
Eigen::Vector3d refine(Eigen::Vector3d p, const MicArray& mics,
                       const std::vector<TdoaMeasurement>& ref_inliers, double c,
                       const SolveOptions& opts) {
  const bool planar = opts.planar_z.has_value();
  const int dims = planar ? 2 : 3;
  const Eigen::Vector3d m0 = mics.at(0);
  if (planar) p.z() = *opts.planar_z;

  double cost = tdoa_cost(p, mics, ref_inliers, c);
  for (int iter = 0; iter < 100; ++iter) {
    Eigen::MatrixXd jac(ref_inliers.size(), dims);
    Eigen::VectorXd res(ref_inliers.size());
    for (std::size_t r = 0; r < ref_inliers.size(); ++r) {
      const Eigen::Vector3d mj = mics.at(ref_inliers[r].mic_j);
      const double dj = std::max((p - mj).norm(), 1e-12);
      const double d0 = std::max((p - m0).norm(), 1e-12);
      res(r) = dj - d0 - c * ref_inliers[r].delay_s;
      const Eigen::Vector3d grad = (p - mj) / dj - (p - m0) / d0;
      for (int d = 0; d < dims; ++d) jac(r, d) = grad(d);
    }
    Eigen::VectorXd step =
        jac.completeOrthogonalDecomposition().solve(-res);
    if (!step.allFinite()) break;

    // Backtrack until the cost stops increasing.
    double scale = 1.0;
    bool accepted = false;
    for (int half = 0; half < 25; ++half) {
      Eigen::Vector3d candidate = p;
      for (int d = 0; d < dims; ++d) candidate(d) += scale * step(d);
      const double candidate_cost = tdoa_cost(candidate, mics, ref_inliers, c);
      if (candidate_cost <= cost) {
        p = candidate;
        cost = candidate_cost;
        accepted = true;
        break;
      }
      scale *= 0.5;
    }
    if (!accepted || step.norm() * scale < 1e-12) break;
  }
  return p;
}

}  // namespace

void RansacConfig::validate() const {
  if (iterations < 1) throw ConfigError("ransac needs at least one iteration");
  if (!(inlier_threshold_s > 0.0)) throw ConfigError("inlier threshold must be positive");
  if (min_inliers < 1) throw ConfigError("min_inliers must be at least 1");
}

double tdoa_cost(const Eigen::Vector3d& p, const MicArray& mics,
                 std::span<const TdoaMeasurement> measurements, double c) {
  double cost = 0.0;
  for (const auto& m : measurements) {
    if (m.mic_i != 0) continue;
    const double dj = (p - mics.at(m.mic_j)).norm();
    const double d0 = (p - mics.at(0)).norm();
    const double r = dj - d0 - c * m.delay_s;
    cost += r * r;
  }
  return cost;
}

std::optional<FrameSolution> multilaterate_frame(
    const TdoaFrame& frame, const MicArray& mics, double c, const RansacConfig& cfg,
    std::optional<Eigen::Vector3d> prior, const SolveOptions& opts) {
  cfg.validate();
  if (!(c > 0.0)) throw ConfigError("speed of sound must be positive");
  const bool planar = opts.planar_z.has_value();
  if (mics.count() < (planar ? 4u : 5u)) {
    throw GeometryError(planar ? "planar solving needs at least 4 microphones"
                               : "3D solving needs at least 5 microphones");
  }

  std::vector<ReferenceMeasurement> reference;
  std::vector<TdoaMeasurement> ref_measurements;
  for (const auto& m : frame.measurements) {
    if (m.mic_i == 0) {
      reference.push_back({m.mic_j, c * m.delay_s});
      ref_measurements.push_back(m);
    }
  }
  const std::size_t minimal = planar ? 3 : 4;
  if (reference.size() < minimal) return std::nullopt;

  Rng rng(derive_seed(cfg.seed, "ransac"));
  std::optional<Eigen::Vector3d> best;
  int best_consensus = -1;
  double best_prior_dist = 0.0;

  std::vector<std::size_t> indices(reference.size());
  for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;

  for (int iter = 0; iter < cfg.iterations; ++iter) {
    // Partial Fisher-Yates draw of a minimal subset.
    for (std::size_t k = 0; k < minimal; ++k) {
      const auto swap_with =
          k + static_cast<std::size_t>(
                  rng.uniform_int(0, static_cast<int>(indices.size() - k - 1)));
      std::swap(indices[k], indices[swap_with]);
    }
    std::vector<ReferenceMeasurement> subset;
    subset.reserve(minimal);
    for (std::size_t k = 0; k < minimal; ++k) subset.push_back(reference[indices[k]]);

    const auto hypothesis = solve_linear(subset, mics, opts);
    if (!hypothesis) continue;
    const int support =
        consensus(*hypothesis, mics, frame.measurements, c, cfg.inlier_threshold_s);
    const double prior_dist = prior ? (*hypothesis - *prior).norm() : 0.0;
    if (support > best_consensus ||
        (support == best_consensus && prior && prior_dist < best_prior_dist)) {
      best = hypothesis;
      best_consensus = support;
      best_prior_dist = prior_dist;
    }
  }

  if (!best || best_consensus < cfg.min_inliers) return std::nullopt;

  // Refine on the reference measurements consistent with the hypothesis.
  std::vector<TdoaMeasurement> ref_inliers;
  for (const auto& m : ref_measurements) {
    const double di = (*best - mics.at(m.mic_i)).norm();
    const double dj = (*best - mics.at(m.mic_j)).norm();
    if (std::abs((dj - di) / c - m.delay_s) <= cfg.inlier_threshold_s) {
      ref_inliers.push_back(m);
    }
  }

  Eigen::Vector3d position = *best;
  if (ref_inliers.size() >= minimal) {
    const Eigen::Vector3d start = prior ? *prior : *best;
    const Eigen::Vector3d refined = refine(start, mics, ref_inliers, c, opts);
    // A diverged refinement falls back to the linear hypothesis.
    if (refined.allFinite() &&
        tdoa_cost(refined, mics, ref_inliers, c) <=
            tdoa_cost(position, mics, ref_inliers, c)) {
      position = refined;
    }
  }

  FrameSolution solution;
  solution.position = position;
  solution.residual_rms_s = residual_rms(position, mics, frame.measurements, c,
                                         cfg.inlier_threshold_s, &solution.inlier_count);
  return solution;
}

}  // namespace multiloc::audio
