// ovtf/metrics.hpp
//
// Copyright 2026 The ovtf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef OVTF_METRICS_HPP
#define OVTF_METRICS_HPP

#include <cstdint>

#include <Eigen/Dense>

#include "ovtf/stft.hpp"

namespace ovtf {

struct LsdResult {
  double utterance_lsd_db = 0.0;
  Eigen::ArrayXd per_frame_lsd_db;
  std::int64_t frames_used = 0;
};

/// Log-spectral distance in dB between two spectrograms of identical shape:
/// per frame the RMS over bins of the difference of 20*log10(|.| + floor)
/// magnitude spectra, averaged over all frames (no voice-activity gating).
/// Lower is better; equal magnitudes give exactly 0.
LsdResult lsd(const Spectrogram& reference, const Spectrogram& estimate,
              double floor = 1e-8);

}  // namespace ovtf

#endif  // OVTF_METRICS_HPP
