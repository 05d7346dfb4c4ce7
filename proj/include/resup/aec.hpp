#pragma once

#include <Eigen/Core>
#include <complex>
#include <vector>

#include "resup/signal.hpp"

namespace resup {

// Stand-in linear echo canceler: partitioned-block frequency-domain NLMS on
// the pipeline's framing grid (320-point DFT blocks advancing 160 samples,
// so each partition models 160 taps and the default 150 ms filter holds
// exactly 2400 coefficients).
struct AecConfig {
  int filter_taps = 2400;         // positive multiple of 160
  double step_size = 0.5;         // NLMS step, in (0, 2)
  double regularization = 1e-6;   // denominator floor, per unit signal power
  double guard_threshold_db = 3.0;  // freeze when error tops estimate by this
  bool adapt = true;              // false emulates the pre-convergence state

  void validate() const;
};

struct AecOutput {
  TimeSignal error;     // e = m - a, sample for sample
  TimeSignal estimate;  // a, the adaptive filter output
};

// Runtime counters; fft_count and complex_macs feed the instrumented
// cross-check of the analytic flops estimate.
struct AecStats {
  long long blocks = 0;
  long long adapted_blocks = 0;
  long long guard_frozen_blocks = 0;
  long long silent_blocks = 0;
  long long divergence_resets = 0;
  long long fft_count = 0;
  long long complex_macs = 0;
  bool converged = false;
};

class LinearAec {
 public:
  explicit LinearAec(const AecConfig& config);

  // Filters one stream. mic and far_end must be the same length; shorter
  // than one block is fine (processing pads internally and truncates back).
  // Adaptation state persists across calls, so consecutive calls continue
  // the same stream.
  AecOutput process(const TimeSignal& mic, const TimeSignal& far_end);

  // Loads fixed taps (length <= filter_taps); combined with adapt=false this
  // turns the canceler into a known FIR filter.
  void set_impulse_response(const Eigen::Ref<const Eigen::VectorXd>& taps);

  // Current time-domain taps, length filter_taps.
  Eigen::VectorXd impulse_response() const;

  void reset();

  const AecConfig& config() const { return config_; }
  const AecStats& stats() const { return stats_; }
  bool converged() const { return stats_.converged; }

 private:
  void process_block(const Eigen::Ref<const Eigen::VectorXd>& mic_block,
                     const Eigen::Ref<const Eigen::VectorXd>& far_block, double* estimate_out);

  AecConfig config_;
  int partitions_;
  AecStats stats_;

  Eigen::VectorXd ref_tail_;                 // previous 160 reference samples
  std::vector<Eigen::VectorXcd> spectra_;    // reference spectra ring, newest at head_
  int head_ = 0;
  std::vector<Eigen::VectorXcd> weights_;    // partition weight spectra
  Eigen::VectorXd sum_power_;                // per-bin power over the partition span
  double smoothed_mic_energy_ = 0.0;
  double smoothed_err_energy_ = 0.0;
};

// Analytic multiply-add count per second of audio for the partitioned
// structure above (counting a real MAC as 2 flops and complex arithmetic at
// its real-op cost). Zero-length filters cost nothing.
double aec_flops_per_second(const AecConfig& config);

}  // namespace resup
