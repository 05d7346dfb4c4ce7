#pragma once

#include <Eigen/Core>

#include "resup/signal.hpp"

namespace resup {

// Amplitude STFT of one signal. Row t is the 161-bin one-sided spectrum of
// the frame starting at sample t*160; the source phase is retained so a
// modified amplitude can be resynthesized against it.
struct Spectrogram {
  Eigen::MatrixXd amplitudes;  // n_frames x 161, nonnegative
  Eigen::MatrixXd phases;      // n_frames x 161, radians
};

// Periodic Hann analysis window of length 320.
Eigen::VectorXd analysis_window();

// Synthesis window paired with the analysis window so that the product
// window sums to exactly one at hop 160 (constant overlap-add).
Eigen::VectorXd synthesis_window();

// Splits a signal into unwindowed 320-sample frames at hop 160, one frame
// per column; trailing samples that do not fill a frame are dropped.
Eigen::MatrixXd frame_signal(const Eigen::Ref<const Eigen::VectorXd>& samples);

Spectrogram stft(const Eigen::Ref<const Eigen::VectorXd>& samples);

// Overlap-add resynthesis. Output length is the framing-grid span,
// (n_frames - 1) * 160 + 320; the first and last half frame carry edge
// attenuation inherent to overlap-add and are not exact.
Eigen::VectorXd istft(const Spectrogram& spec);

void validate_spectrogram(const Spectrogram& spec);

}  // namespace resup
