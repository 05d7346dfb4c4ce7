#pragma once

#include <Eigen/Core>
#include <filesystem>

namespace resup {

// Reads a 16-bit PCM mono 16 kHz little-endian RIFF file; anything else is
// rejected with a DataError describing the offending field. Samples are
// scaled to [-1, 1) as k / 32768.
Eigen::VectorXd read_wav(const std::filesystem::path& path);

// Writes samples as 16-bit PCM mono 16 kHz. Values are rounded to the
// nearest 1/32768 step and clamped to the representable range, so a signal
// already on that grid round-trips bit-exactly.
void write_wav(const std::filesystem::path& path,
               const Eigen::Ref<const Eigen::VectorXd>& samples);

// Rounds one sample to the int16 grid without writing a file; the simulator
// uses this so that stems and their mixture obey the same quantization.
double quantize_to_pcm16(double x);

}  // namespace resup
