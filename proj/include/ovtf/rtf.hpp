// ovtf/rtf.hpp
//
// Copyright 2026 The ovtf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef OVTF_RTF_HPP
#define OVTF_RTF_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ovtf/labels.hpp"
#include "ovtf/stft.hpp"

namespace ovtf {

/// Mergeable running sums for least-squares RTF estimation: per frequency bin
/// the cross-spectrum sum conj(Y_outer) * Y_inear and the outer power sum
/// |Y_outer|^2, kept once globally and once per phoneme class. Unlabeled
/// frames enter only the global sums.
struct RtfAccumulator {
  StftConfig config;
  int num_classes = 0;   // P; 0 means speech-independent only
  int delay_samples = 0; // prediction delay applied to the in-ear clip

  Eigen::ArrayXcd global_cross;  // num_bins
  Eigen::ArrayXd global_power;   // num_bins
  std::int64_t global_frames = 0;

  Eigen::ArrayXXcd class_cross;  // num_bins x num_classes
  Eigen::ArrayXXd class_power;   // num_bins x num_classes
  std::vector<std::int64_t> class_frames;  // num_classes
};

RtfAccumulator make_accumulator(const StftConfig& cfg, int num_classes,
                                int delay_samples);

/// Adds one paired utterance to the sums. The in-ear spectrogram must come
/// from a clip already shifted by delay_samples. Both grids must share the
/// accumulator's config and frame count; labels, when present, must match in
/// length and class count.
void accumulate(RtfAccumulator& acc, const Spectrogram& outer,
                const Spectrogram& inear, const FrameLabels* labels = nullptr);

/// Elementwise sum of two accumulators over identical configurations.
RtfAccumulator merge(const RtfAccumulator& a, const RtfAccumulator& b);

/// Estimated model: a global RTF plus one RTF per phoneme class that reached
/// min_frames accumulated frames. Classes below the threshold keep their
/// frame count but carry no RTF; simulation falls back to the global RTF for
/// them.
struct RtfModel {
  StftConfig config;
  int delay_samples = 0;
  int num_classes = 0;
  double eps = 0.0;   // absolute regularizer used in the quotients
  int min_frames = 0;
  std::string talker_id;

  Eigen::ArrayXcd global_rtf;  // num_bins
  std::int64_t global_frames = 0;
  std::vector<std::optional<Eigen::ArrayXcd>> per_phoneme;  // num_classes
  std::vector<std::int64_t> class_frames;                   // num_classes
};

struct FinalizeOptions {
  /// Absolute regularizer added to the power sums. Unset selects the default
  /// relative floor 1e-10 * mean(global power).
  std::optional<double> eps;
  int min_frames = 5;
  std::string talker_id;
};

/// The regularizer finalize uses when none is given explicitly.
double default_eps(const RtfAccumulator& acc);

/// Global least-squares quotient H(k) = cross(k) / (power(k) + eps).
/// Bins with zero accumulated power yield 0.
Eigen::ArrayXcd finalize_speech_independent(const RtfAccumulator& acc,
                                            std::optional<double> eps = {});

/// Per-class quotients for classes with at least min_frames frames, plus the
/// global quotient. A single eps (resolved from the global power) is used
/// throughout.
RtfModel finalize_speech_dependent(const RtfAccumulator& acc,
                                   const FinalizeOptions& options = {});

/// Versioned JSON persistence; load(save(m)) reproduces every field exactly.
void save_model(const RtfModel& model, const std::filesystem::path& path);
RtfModel load_model(const std::filesystem::path& path);

}  // namespace ovtf

#endif  // OVTF_RTF_HPP
