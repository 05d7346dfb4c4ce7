#include "resup/aec.hpp"

#include <cmath>

#include <unsupported/Eigen/FFT>

#include "resup/errors.hpp"

namespace resup {

namespace {

constexpr int kBlock = kHop;        // 160 new samples per block
constexpr int kFft = kFrameLen;     // 320-point DFT, matching the framing
constexpr double kSilenceFloor = 1e-8;   // mean-square, about -80 dBFS
constexpr double kGuardFloorRatio = 1e-3;  // estimate counts once it carries energy
constexpr double kConvergedDb = 15.0;

double fft_flops(int n) { return 2.5 * n * std::log2(static_cast<double>(n)); }

}  // namespace

void AecConfig::validate() const {
  if (filter_taps <= 0 || filter_taps % kBlock != 0) {
    throw DataError("aec: filter_taps must be a positive multiple of " + std::to_string(kBlock));
  }
  if (!(step_size > 0.0 && step_size < 2.0)) {
    throw DataError("aec: step_size must lie in (0, 2)");
  }
  if (!(regularization > 0.0)) {
    throw DataError("aec: regularization must be positive");
  }
}

LinearAec::LinearAec(const AecConfig& config) : config_(config) {
  config_.validate();
  partitions_ = config_.filter_taps / kBlock;
  reset();
}

void LinearAec::reset() {
  ref_tail_ = Eigen::VectorXd::Zero(kBlock);
  spectra_.assign(partitions_, Eigen::VectorXcd::Zero(kFft));
  weights_.assign(partitions_, Eigen::VectorXcd::Zero(kFft));
  sum_power_ = Eigen::VectorXd::Zero(kFft);
  head_ = 0;
  smoothed_mic_energy_ = 0.0;
  smoothed_err_energy_ = 0.0;
  stats_ = AecStats{};
}

void LinearAec::set_impulse_response(const Eigen::Ref<const Eigen::VectorXd>& taps) {
  if (taps.size() > config_.filter_taps) {
    throw DataError("aec: impulse response longer than the configured filter");
  }
  Eigen::VectorXd padded = Eigen::VectorXd::Zero(config_.filter_taps);
  padded.head(taps.size()) = taps;
  Eigen::FFT<double> fft;
  Eigen::VectorXd buf = Eigen::VectorXd::Zero(kFft);
  for (int p = 0; p < partitions_; ++p) {
    buf.head(kBlock) = padded.segment(p * kBlock, kBlock);
    buf.tail(kFft - kBlock).setZero();
    fft.fwd(weights_[p], buf);
  }
}

Eigen::VectorXd LinearAec::impulse_response() const {
  Eigen::FFT<double> fft;
  Eigen::VectorXd taps(config_.filter_taps);
  Eigen::VectorXd buf(kFft);
  for (int p = 0; p < partitions_; ++p) {
    Eigen::VectorXcd spectrum = weights_[p];
    fft.inv(buf, spectrum);
    taps.segment(p * kBlock, kBlock) = buf.head(kBlock);
  }
  return taps;
}

AecOutput LinearAec::process(const TimeSignal& mic, const TimeSignal& far_end) {
  validate_signal(mic);
  validate_signal(far_end);
  if (mic.samples.size() != far_end.samples.size()) {
    throw DataError("aec: mic and far-end lengths differ (" +
                    std::to_string(mic.samples.size()) + " vs " +
                    std::to_string(far_end.samples.size()) + ")");
  }
  const Eigen::Index n = mic.samples.size();
  const Eigen::Index padded_len = (n + kBlock - 1) / kBlock * kBlock;
  Eigen::VectorXd mic_padded = Eigen::VectorXd::Zero(padded_len);
  Eigen::VectorXd far_padded = Eigen::VectorXd::Zero(padded_len);
  mic_padded.head(n) = mic.samples;
  far_padded.head(n) = far_end.samples;

  Eigen::VectorXd estimate_padded(padded_len);
  for (Eigen::Index start = 0; start < padded_len; start += kBlock) {
    process_block(mic_padded.segment(start, kBlock), far_padded.segment(start, kBlock),
                  estimate_padded.data() + start);
  }

  AecOutput out;
  out.estimate.samples = estimate_padded.head(n);
  out.estimate.role = SignalRole::kAecEstimate;
  // e = m - a by definition; recomputed on the untruncated inputs so the
  // identity holds bit-exactly at every sample.
  out.error.samples = mic.samples - out.estimate.samples;
  out.error.role = SignalRole::kAecError;
  return out;
}

void LinearAec::process_block(const Eigen::Ref<const Eigen::VectorXd>& mic_block,
                              const Eigen::Ref<const Eigen::VectorXd>& far_block,
                              double* estimate_out) {
  Eigen::FFT<double> fft;
  ++stats_.blocks;

  // Overlap-save input block: previous tail plus the new reference samples.
  Eigen::VectorXd ref_frame(kFft);
  ref_frame.head(kBlock) = ref_tail_;
  ref_frame.tail(kBlock) = far_block;
  ref_tail_ = far_block;

  head_ = (head_ + 1) % partitions_;
  sum_power_ -= spectra_[head_].cwiseAbs2();
  fft.fwd(spectra_[head_], ref_frame);
  ++stats_.fft_count;
  sum_power_ += spectra_[head_].cwiseAbs2();
  sum_power_ = sum_power_.cwiseMax(0.0);  // guard against incremental drift

  Eigen::VectorXcd accum = Eigen::VectorXcd::Zero(kFft);
  for (int p = 0; p < partitions_; ++p) {
    const int slot = (head_ - p + partitions_) % partitions_;
    accum += spectra_[slot].cwiseProduct(weights_[p]);
    stats_.complex_macs += kFft;
  }
  Eigen::VectorXd y(kFft);
  fft.inv(y, accum);
  ++stats_.fft_count;

  // Only the second half of the inverse transform is a valid linear
  // convolution segment.
  Eigen::Map<Eigen::VectorXd>(estimate_out, kBlock) = y.tail(kBlock);
  const Eigen::VectorXd err_block = mic_block - y.tail(kBlock);

  const double mic_energy = mic_block.squaredNorm();
  const double err_energy = err_block.squaredNorm();
  const double est_energy = y.tail(kBlock).squaredNorm();
  const double far_energy = far_block.squaredNorm();

  const bool far_silent = far_energy / kBlock < kSilenceFloor;
  const double guard_ratio = std::pow(10.0, config_.guard_threshold_db / 10.0);
  const bool near_end_dominates =
      est_energy > kGuardFloorRatio * mic_energy && err_energy > guard_ratio * est_energy;

  if (!far_silent) {
    smoothed_mic_energy_ = 0.98 * smoothed_mic_energy_ + 0.02 * mic_energy;
    smoothed_err_energy_ = 0.98 * smoothed_err_energy_ + 0.02 * err_energy;
    if (smoothed_err_energy_ > 0.0 &&
        smoothed_mic_energy_ >
            std::pow(10.0, kConvergedDb / 10.0) * smoothed_err_energy_) {
      stats_.converged = true;
    }
  }

  if (!config_.adapt) return;
  if (far_silent) {
    ++stats_.silent_blocks;
    return;
  }
  if (near_end_dominates) {
    ++stats_.guard_frozen_blocks;
    return;
  }
  ++stats_.adapted_blocks;

  Eigen::VectorXd err_frame = Eigen::VectorXd::Zero(kFft);
  err_frame.tail(kBlock) = err_block;
  Eigen::VectorXcd err_spectrum(kFft);
  fft.fwd(err_spectrum, err_frame);
  ++stats_.fft_count;

  const double floor = config_.regularization * partitions_ * kFft;
  const Eigen::VectorXcd gain =
      (config_.step_size * err_spectrum.array() / (sum_power_.array() + floor)).matrix();

  Eigen::VectorXd taps_buf(kFft);
  bool blew_up = false;
  for (int p = 0; p < partitions_; ++p) {
    const int slot = (head_ - p + partitions_) % partitions_;
    weights_[p] += spectra_[slot].conjugate().cwiseProduct(gain);
    stats_.complex_macs += kFft;
    // Constrain each partition to its 160 causal taps; without this the
    // frequency-domain update leaks circular-convolution components and the
    // filter is no longer the FIR it claims to be.
    Eigen::VectorXcd spectrum = weights_[p];
    fft.inv(taps_buf, spectrum);
    stats_.fft_count += 2;
    taps_buf.tail(kFft - kBlock).setZero();
    fft.fwd(weights_[p], taps_buf);
    if (!weights_[p].allFinite()) blew_up = true;
  }
  if (blew_up) {
    for (auto& w : weights_) w.setZero();
    ++stats_.divergence_resets;
  }
}

double aec_flops_per_second(const AecConfig& config) {
  if (config.filter_taps <= 0) return 0.0;
  const double p = static_cast<double>(config.filter_taps) / kBlock;
  const double blocks_per_second = static_cast<double>(kSampleRate) / kBlock;
  const double fft = fft_flops(kFft);
  const double stream_ffts = 3.0 * fft;                     // reference, error, output
  const double constraint_ffts = 2.0 * p * fft;             // per-partition projection
  const double filter_accumulate = 8.0 * p * kFft;          // complex MAC
  const double weight_update = 8.0 * p * kFft + 8.0 * kFft; // update MAC + gain vector
  const double elementwise = 6.0 * kBlock + 4.0 * kFft;     // energies, error, power track
  return blocks_per_second *
         (stream_ffts + constraint_ffts + filter_accumulate + weight_update + elementwise);
}

}  // namespace resup
