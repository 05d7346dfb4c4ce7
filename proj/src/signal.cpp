#include "resup/signal.hpp"

namespace resup {

const char* to_string(SignalRole role) {
  switch (role) {
    case SignalRole::kFarEnd: return "far_end";
    case SignalRole::kNearEnd: return "near_end";
    case SignalRole::kMicrophone: return "microphone";
    case SignalRole::kEcho: return "echo";
    case SignalRole::kNoise: return "noise";
    case SignalRole::kAecEstimate: return "aec_estimate";
    case SignalRole::kAecError: return "aec_error";
    case SignalRole::kPrediction: return "prediction";
  }
  return "unknown";
}

void validate_signal(const TimeSignal& signal) {
  if (signal.sample_rate != kSampleRate) {
    throw DataError("unsupported sample rate " + std::to_string(signal.sample_rate) +
                    " Hz (pipeline is fixed at 16000 Hz)");
  }
  if (!signal.samples.allFinite()) {
    throw DataError("signal contains non-finite samples");
  }
}

Eigen::Index num_frames(Eigen::Index n_samples) {
  if (n_samples < kFrameLen) {
    throw DataError("signal too short: " + std::to_string(n_samples) +
                    " samples, need at least " + std::to_string(kFrameLen));
  }
  return (n_samples - kFrameLen) / kHop + 1;
}

const char* to_string(FrameLabel label) {
  switch (label) {
    case FrameLabel::kSilence: return "silence";
    case FrameLabel::kFarEndSingleTalk: return "far_end_single_talk";
    case FrameLabel::kNearEndSingleTalk: return "near_end_single_talk";
    case FrameLabel::kDoubleTalk: return "double_talk";
  }
  return "unknown";
}

FrameLabel frame_label_from_string(const std::string& name) {
  if (name == "silence") return FrameLabel::kSilence;
  if (name == "far_end_single_talk") return FrameLabel::kFarEndSingleTalk;
  if (name == "near_end_single_talk") return FrameLabel::kNearEndSingleTalk;
  if (name == "double_talk") return FrameLabel::kDoubleTalk;
  throw DataError("unknown frame label '" + name + "'");
}

}  // namespace resup
