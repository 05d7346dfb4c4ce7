#pragma once

#include <Eigen/Core>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "resup/signal.hpp"

namespace resup {

// Frame-energy floor and dB cap that keep ratios finite in reports.
inline constexpr double kEnergyFloor = 1e-12;
inline constexpr double kMetricCapDb = 80.0;

// How frame ratios are folded into one utterance value: mean of per-frame dB
// values, or the dB of summed energies.
enum class Aggregation { kFrameMean, kEnergyRatio };

// Echo attenuation of the suppressor on far-end single-talk frames:
// 10 log10(||e||^2 / ||p||^2) per 20 ms frame (50% overlap). Absent when no
// frame qualifies.
std::optional<double> erle_db(const Eigen::Ref<const Eigen::VectorXd>& error,
                              const Eigen::Ref<const Eigen::VectorXd>& prediction,
                              const std::vector<FrameLabel>& labels,
                              Aggregation aggregation = Aggregation::kFrameMean);

// Desired-signal fidelity, 10 log10(||d||^2 / ||p - d||^2), on near-end
// single-talk frames.
std::optional<double> sar_db(const Eigen::Ref<const Eigen::VectorXd>& near_end,
                             const Eigen::Ref<const Eigen::VectorXd>& prediction,
                             const std::vector<FrameLabel>& labels,
                             Aggregation aggregation = Aggregation::kFrameMean);

// Same ratio as SAR, evaluated on double-talk frames.
std::optional<double> sdr_db(const Eigen::Ref<const Eigen::VectorXd>& near_end,
                             const Eigen::Ref<const Eigen::VectorXd>& prediction,
                             const std::vector<FrameLabel>& labels,
                             Aggregation aggregation = Aggregation::kFrameMean);

// Signal-to-echo and signal-to-noise ratios of the stems: summed frame
// energies over frames where both signals are active (frame energy above
// -40 dB relative to that signal's own loudest frame, which makes the
// measure invariant to rescaling either stem). Absent when no frame
// qualifies or the denominator is empty.
std::optional<double> measure_ser_db(const Eigen::Ref<const Eigen::VectorXd>& near_end,
                                     const Eigen::Ref<const Eigen::VectorXd>& echo);
std::optional<double> measure_snr_db(const Eigen::Ref<const Eigen::VectorXd>& near_end,
                                     const Eigen::Ref<const Eigen::VectorXd>& noise);

struct UtteranceMetrics {
  std::string name;
  std::optional<double> erle_db;
  std::optional<double> sar_db;
  std::optional<double> sdr_db;
  std::optional<double> ser_db;
  std::optional<double> snr_db;
  std::array<Eigen::Index, 4> label_counts{};  // indexed by FrameLabel
};

struct MetricSummary {
  std::optional<double> mean;
  std::optional<double> stddev;  // sample std across utterances
  int count = 0;
};

struct CorpusReport {
  std::vector<UtteranceMetrics> utterances;
  MetricSummary erle, sar, sdr, ser, snr;

  static CorpusReport aggregate(std::vector<UtteranceMetrics> utterances);
  std::string to_keyvalue() const;
  std::string to_table() const;
};

}  // namespace resup
