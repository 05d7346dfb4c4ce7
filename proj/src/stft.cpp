#include "resup/stft.hpp"

#include <cmath>
#include <complex>

#include <unsupported/Eigen/FFT>

namespace resup {

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::VectorXd make_analysis_window() {
  Eigen::VectorXd w(kFrameLen);
  for (int n = 0; n < kFrameLen; ++n) {
    w[n] = 0.5 * (1.0 - std::cos(2.0 * kPi * n / kFrameLen));
  }
  return w;
}

Eigen::VectorXd make_synthesis_window() {
  const Eigen::VectorXd h = make_analysis_window();
  // Divide by the hop-periodic sum of squared analysis windows, which makes
  // sum_k h[n - k*hop] * ws[n - k*hop] == 1 exactly for interior samples.
  Eigen::VectorXd ws(kFrameLen);
  for (int n = 0; n < kFrameLen; ++n) {
    const double overlap = h[n] * h[n] + h[(n + kHop) % kFrameLen] * h[(n + kHop) % kFrameLen];
    ws[n] = h[n] / overlap;
  }
  return ws;
}

}  // namespace

Eigen::VectorXd analysis_window() {
  static const Eigen::VectorXd w = make_analysis_window();
  return w;
}

Eigen::VectorXd synthesis_window() {
  static const Eigen::VectorXd w = make_synthesis_window();
  return w;
}

Eigen::MatrixXd frame_signal(const Eigen::Ref<const Eigen::VectorXd>& samples) {
  const Eigen::Index frames = num_frames(samples.size());
  Eigen::MatrixXd out(kFrameLen, frames);
  for (Eigen::Index k = 0; k < frames; ++k) {
    out.col(k) = samples.segment(k * kHop, kFrameLen);
  }
  return out;
}

Spectrogram stft(const Eigen::Ref<const Eigen::VectorXd>& samples) {
  if (!samples.allFinite()) {
    throw DataError("stft: input contains non-finite samples");
  }
  const Eigen::MatrixXd frames = frame_signal(samples);
  const Eigen::VectorXd window = analysis_window();

  Spectrogram spec;
  spec.amplitudes.resize(frames.cols(), kNumBins);
  spec.phases.resize(frames.cols(), kNumBins);

  Eigen::FFT<double> fft;
  Eigen::VectorXd buf(kFrameLen);
  Eigen::VectorXcd bins(kFrameLen);
  for (Eigen::Index k = 0; k < frames.cols(); ++k) {
    buf = frames.col(k).cwiseProduct(window);
    fft.fwd(bins, buf);
    for (int b = 0; b < kNumBins; ++b) {
      spec.amplitudes(k, b) = std::abs(bins[b]);
      spec.phases(k, b) = std::arg(bins[b]);
    }
  }
  return spec;
}

void validate_spectrogram(const Spectrogram& spec) {
  if (spec.amplitudes.rows() != spec.phases.rows() ||
      spec.amplitudes.cols() != spec.phases.cols()) {
    throw DataError("spectrogram: amplitude/phase shape mismatch");
  }
  if (spec.amplitudes.cols() != kNumBins) {
    throw DataError("spectrogram: expected " + std::to_string(kNumBins) + " bins, got " +
                    std::to_string(spec.amplitudes.cols()));
  }
  if ((spec.amplitudes.array() < 0.0).any()) {
    throw DataError("spectrogram: negative amplitude");
  }
}

Eigen::VectorXd istft(const Spectrogram& spec) {
  validate_spectrogram(spec);
  const Eigen::Index frames = spec.amplitudes.rows();
  const Eigen::Index out_len = (frames - 1) * kHop + kFrameLen;
  const Eigen::VectorXd window = synthesis_window();

  Eigen::VectorXd out = Eigen::VectorXd::Zero(out_len);
  Eigen::FFT<double> fft;
  Eigen::VectorXcd bins(kFrameLen);
  Eigen::VectorXd frame(kFrameLen);
  for (Eigen::Index k = 0; k < frames; ++k) {
    for (int b = 0; b < kNumBins; ++b) {
      bins[b] = std::polar(spec.amplitudes(k, b), spec.phases(k, b));
    }
    // One-sided spectrum; rebuild the conjugate half for a real inverse.
    for (int b = kNumBins; b < kFrameLen; ++b) {
      bins[b] = std::conj(bins[kFrameLen - b]);
    }
    fft.inv(frame, bins);
    out.segment(k * kHop, kFrameLen) += frame.cwiseProduct(window);
  }
  return out;
}

}  // namespace resup
