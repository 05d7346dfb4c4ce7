#pragma once

#include <Eigen/Core>
#include <vector>

#include "resup/errors.hpp"
#include "resup/signal.hpp"

namespace resup {

// Range floor for constant bins; keeps the affine map invertible without
// perturbing bins that actually vary.
inline constexpr double kRangeFloor = 1e-8;

// Per-bin affine normalization statistics learned on training spectra and
// reapplied verbatim to test spectra.
struct NormStats {
  Eigen::VectorXd bin_min;    // length 161
  Eigen::VectorXd bin_range;  // length 161, >= kRangeFloor

  void validate() const;
};

// Per bin: min over every frame of every spectrogram, and (max - min)
// floored at kRangeFloor. Throws DataError on empty input.
template <typename Scalar>
NormStats fit_norm(const std::vector<const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>*>& amplitude_mats) {
  Eigen::Index total_frames = 0;
  for (const auto* m : amplitude_mats) {
    if (m == nullptr) throw DataError("fit_norm: null spectrogram");
    if (m->cols() != kNumBins) throw DataError("fit_norm: spectrogram must have 161 bins");
    total_frames += m->rows();
  }
  if (total_frames == 0) throw DataError("fit_norm: no frames to fit");

  NormStats stats;
  stats.bin_min = Eigen::VectorXd::Constant(kNumBins, std::numeric_limits<double>::infinity());
  Eigen::VectorXd bin_max =
      Eigen::VectorXd::Constant(kNumBins, -std::numeric_limits<double>::infinity());
  for (const auto* m : amplitude_mats) {
    if (m->rows() == 0) continue;
    stats.bin_min = stats.bin_min.cwiseMin(m->template cast<double>().colwise().minCoeff().transpose());
    bin_max = bin_max.cwiseMax(m->template cast<double>().colwise().maxCoeff().transpose());
  }
  stats.bin_range = (bin_max - stats.bin_min).cwiseMax(kRangeFloor);
  return stats;
}

template <typename Scalar>
NormStats fit_norm(const std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>>& mats) {
  std::vector<const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>*> ptrs;
  ptrs.reserve(mats.size());
  for (const auto& m : mats) ptrs.push_back(&m);
  return fit_norm(ptrs);
}

// (amp - min) / range per bin. Values are deliberately not clamped: test
// amplitudes outside the training envelope map outside [0, 1].
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> apply_norm(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& amp, const NormStats& stats) {
  stats.validate();
  if (amp.cols() != kNumBins) throw DataError("apply_norm: spectrogram must have 161 bins");
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Mat min_row = stats.bin_min.transpose().cast<Scalar>();
  const Mat inv_range = stats.bin_range.cwiseInverse().transpose().cast<Scalar>();
  return (amp.rowwise() - min_row.row(0)).array().rowwise() * inv_range.row(0).array();
}

// Exact affine inverse of apply_norm, floored at zero (amplitudes are
// nonnegative).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> invert_norm(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& pred, const NormStats& stats) {
  stats.validate();
  if (pred.cols() != kNumBins) throw DataError("invert_norm: prediction must have 161 bins");
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Mat range_row = stats.bin_range.transpose().cast<Scalar>();
  const Mat min_row = stats.bin_min.transpose().cast<Scalar>();
  Mat out = (pred.array().rowwise() * range_row.row(0).array()).rowwise() + min_row.row(0).array();
  return out.cwiseMax(Scalar(0));
}

struct GainResult {
  Eigen::VectorXd scaled;
  double gain = 0.0;
  bool zero_energy = false;  // prediction had no energy on the given frames
};

// Least-squares scalar g minimizing ||g*pred - reference||^2 over the sample
// spans of the given frame indices (framing grid: 320 samples, hop 160).
GainResult compensate_gain(const Eigen::Ref<const Eigen::VectorXd>& pred,
                           const Eigen::Ref<const Eigen::VectorXd>& reference,
                           const std::vector<Eigen::Index>& frames);

}  // namespace resup
