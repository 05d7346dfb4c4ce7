#include "resup/normalize.hpp"

#include <limits>

namespace resup {

void NormStats::validate() const {
  if (bin_min.size() != kNumBins || bin_range.size() != kNumBins) {
    throw DataError("NormStats: expected vectors of length 161");
  }
  if ((bin_range.array() <= 0.0).any()) {
    throw DataError("NormStats: bin_range must be positive");
  }
}

GainResult compensate_gain(const Eigen::Ref<const Eigen::VectorXd>& pred,
                           const Eigen::Ref<const Eigen::VectorXd>& reference,
                           const std::vector<Eigen::Index>& frames) {
  if (frames.empty()) {
    throw DataError("compensate_gain: need at least one reference frame");
  }
  const Eigen::Index n = std::min(pred.size(), reference.size());
  double cross = 0.0;
  double energy = 0.0;
  for (const Eigen::Index f : frames) {
    const Eigen::Index start = f * kHop;
    if (start < 0 || start + kFrameLen > n) {
      throw DataError("compensate_gain: frame index out of range");
    }
    cross += pred.segment(start, kFrameLen).dot(reference.segment(start, kFrameLen));
    energy += pred.segment(start, kFrameLen).squaredNorm();
  }
  GainResult result;
  if (energy <= 0.0) {
    result.gain = 0.0;
    result.zero_energy = true;
    result.scaled = Eigen::VectorXd::Zero(pred.size());
    return result;
  }
  result.gain = cross / energy;
  result.scaled = result.gain * pred;
  return result;
}

}  // namespace resup
