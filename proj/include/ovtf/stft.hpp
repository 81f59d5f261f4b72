// ovtf/stft.hpp
//
// Copyright 2026 The ovtf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef OVTF_STFT_HPP
#define OVTF_STFT_HPP

#include <Eigen/Dense>

namespace ovtf {

/// STFT framing parameters. Only 50% overlap (hop == frame_len / 2) is
/// supported; this is the one window/hop pair for which the square-root Hann
/// window gives exact overlap-add reconstruction.
struct StftConfig {
  int frame_len = 256;            // K, even, >= 4
  int hop = 128;                  // frame advance, must equal frame_len / 2
  double sample_rate_hz = 5000.0;

  int num_bins() const { return frame_len / 2 + 1; }
};

bool operator==(const StftConfig& a, const StftConfig& b);
inline bool operator!=(const StftConfig& a, const StftConfig& b) { return !(a == b); }

/// Throws ValidationError if the config violates its invariants.
void validate(const StftConfig& cfg);

/// Mono waveform, nominal sample range [-1, 1].
struct AudioClip {
  Eigen::ArrayXd samples;
  double sample_rate_hz = 0.0;
};

/// One-sided STFT coefficient grid, coefficients(k, l) with frequency bin
/// k in [0, frame_len/2] and frame index l.
struct Spectrogram {
  Eigen::ArrayXXcd coefficients;  // num_bins x num_frames
  StftConfig config;

  Eigen::Index num_bins() const { return coefficients.rows(); }
  Eigen::Index num_frames() const { return coefficients.cols(); }
};

/// Elementwise square root of the periodic Hann window
/// w[n] = 0.5 * (1 - cos(2*pi*n/K)), n = 0..K-1. The squared window sums to
/// one over 50%-overlapped shifts.
Eigen::ArrayXd sqrt_hann_window(int frame_len);

/// Frame count for a clip of num_samples: floor((N - K) / hop) + 1,
/// or 0 if the clip is shorter than one frame.
Eigen::Index num_frames_for(Eigen::Index num_samples, const StftConfig& cfg);

/// Windowed one-sided DFT per frame. Frame l covers samples
/// [l*hop, l*hop + frame_len); there is no leading padding and the trailing
/// partial frame is dropped. The forward transform is un-normalized (the
/// 1/K factor sits on the inverse).
Spectrogram analyze(const AudioClip& clip, const StftConfig& cfg);

/// Weighted overlap-add resynthesis with the same square-root Hann window.
/// Output length is (L-1)*hop + frame_len; samples in
/// [hop, length - hop) reproduce the analyze() input exactly up to rounding.
AudioClip synthesize(const Spectrogram& spec);

}  // namespace ovtf

#endif  // OVTF_STFT_HPP
