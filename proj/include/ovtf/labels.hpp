// ovtf/labels.hpp
//
// Copyright 2026 The ovtf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef OVTF_LABELS_HPP
#define OVTF_LABELS_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ovtf/stft.hpp"

namespace ovtf {

inline constexpr int kUnlabeled = -1;

/// Half-open sample range [start_sample, end_sample) carrying one class id.
/// Sample positions refer to the outer-microphone clip before any prediction
/// delay is applied.
struct LabelSegment {
  std::int64_t start_sample = 0;
  std::int64_t end_sample = 0;
  int class_id = 0;
};

/// Per-frame class sequence aligned to a Spectrogram: one entry per frame,
/// each a class in [0, num_classes) or kUnlabeled.
struct FrameLabels {
  Eigen::ArrayXi labels;
  int num_classes = 0;
};

/// Reads a segment file: UTF-8 CSV, one `start_sample,end_sample,class_id`
/// per line, '#' comment lines permitted. Overlapping segments are rejected
/// naming the two offending lines. num_classes < 0 disables the class-id
/// upper-bound check (used when inferring the class count from files).
std::vector<LabelSegment> load_segments(const std::filesystem::path& path,
                                        int num_classes);

/// Writes segments in the format load_segments reads.
void save_segments(std::span<const LabelSegment> segments,
                   const std::filesystem::path& path);

/// Assigns each analysis frame the class covering the majority of its
/// samples; samples covered by no segment vote for kUnlabeled. Ties between
/// classes go to the class whose covering segment starts earliest, and a
/// class beats kUnlabeled on a tie.
FrameLabels segments_to_frames(std::span<const LabelSegment> segments,
                               const StftConfig& cfg, Eigen::Index num_frames,
                               int num_classes);

/// Pseudo-phoneme fallback: seeded k-means (k-means++ initialization, at most
/// 100 iterations, centroid-movement tolerance 1e-6) over per-frame feature
/// vectors log10(|Y(k,l)| + 1e-10). Identical input and seed give identical
/// labels.
FrameLabels cluster_pseudo_phonemes(const Spectrogram& spec, int num_classes,
                                    std::uint64_t seed);

}  // namespace ovtf

#endif  // OVTF_LABELS_HPP
