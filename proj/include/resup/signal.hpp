#pragma once

#include <Eigen/Core>
#include <string>

#include "resup/errors.hpp"

namespace resup {

// Fixed pipeline framing: 16 kHz audio, 20 ms frames, 10 ms hop, one-sided
// 320-point transform.
inline constexpr int kSampleRate = 16000;
inline constexpr int kFrameLen = 320;
inline constexpr int kHop = 160;
inline constexpr int kNumBins = 161;

enum class SignalRole {
  kFarEnd,
  kNearEnd,
  kMicrophone,
  kEcho,
  kNoise,
  kAecEstimate,
  kAecError,
  kPrediction,
};

const char* to_string(SignalRole role);

// Sampled audio plus its role in the echo path. Samples are nominally within
// [-1, 1]; intermediate signals (e.g. the AEC error) may exceed that range
// transiently and are clamped only at WAV emission.
struct TimeSignal {
  Eigen::VectorXd samples;
  int sample_rate = kSampleRate;
  SignalRole role = SignalRole::kMicrophone;
};

// Throws DataError unless the sample rate is 16 kHz and all samples finite.
void validate_signal(const TimeSignal& signal);

// Number of full 320-sample frames at hop 160; the trailing partial frame is
// discarded. Throws DataError("signal too short") below one frame.
Eigen::Index num_frames(Eigen::Index n_samples);

// Per-frame activity classes on the shared framing grid.
enum class FrameLabel : std::uint8_t {
  kSilence = 0,
  kFarEndSingleTalk = 1,
  kNearEndSingleTalk = 2,
  kDoubleTalk = 3,
};

const char* to_string(FrameLabel label);
FrameLabel frame_label_from_string(const std::string& name);

}  // namespace resup
