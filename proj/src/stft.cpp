// ovtf/stft.cpp
//
// Copyright 2026 The ovtf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "ovtf/stft.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <unsupported/Eigen/FFT>

#include "ovtf/errors.hpp"

namespace ovtf {

bool operator==(const StftConfig& a, const StftConfig& b) {
  return a.frame_len == b.frame_len && a.hop == b.hop &&
         a.sample_rate_hz == b.sample_rate_hz;
}

void validate(const StftConfig& cfg) {
  if (cfg.frame_len < 4 || cfg.frame_len % 2 != 0)
    throw ValidationError("stft: frame_len must be even and >= 4, got " +
                          std::to_string(cfg.frame_len));
  if (cfg.hop != cfg.frame_len / 2)
    throw ValidationError("stft: only 50% overlap is supported, hop must be frame_len/2 (got hop=" +
                          std::to_string(cfg.hop) + ", frame_len=" +
                          std::to_string(cfg.frame_len) + ")");
  if (!(cfg.sample_rate_hz > 0.0))
    throw ValidationError("stft: sample_rate_hz must be positive");
}

Eigen::ArrayXd sqrt_hann_window(int frame_len) {
  if (frame_len < 4 || frame_len % 2 != 0)
    throw ValidationError("stft: window length must be even and >= 4, got " +
                          std::to_string(frame_len));
  const double step = 2.0 * std::numbers::pi / frame_len;
  const Eigen::ArrayXd n =
      Eigen::ArrayXd::LinSpaced(frame_len, 0.0, double(frame_len - 1));
  return (0.5 * (1.0 - (step * n).cos())).sqrt();
}

Eigen::Index num_frames_for(Eigen::Index num_samples, const StftConfig& cfg) {
  if (num_samples < cfg.frame_len) return 0;
  return (num_samples - cfg.frame_len) / cfg.hop + 1;
}

Spectrogram analyze(const AudioClip& clip, const StftConfig& cfg) {
  validate(cfg);
  if (clip.sample_rate_hz != cfg.sample_rate_hz)
    throw ValidationError("stft: clip sample rate " +
                          std::to_string(clip.sample_rate_hz) +
                          " Hz does not match config rate " +
                          std::to_string(cfg.sample_rate_hz) + " Hz");
  const Eigen::Index num_samples = clip.samples.size();
  if (num_samples < cfg.frame_len)
    throw ValidationError("stft: clip of " + std::to_string(num_samples) +
                          " samples is shorter than one frame (" +
                          std::to_string(cfg.frame_len) + ")");
  if (!clip.samples.allFinite())
    throw ValidationError("stft: clip contains non-finite samples");

  const int frame_len = cfg.frame_len;
  const Eigen::Index num_frames = num_frames_for(num_samples, cfg);
  const Eigen::ArrayXd window = sqrt_hann_window(frame_len);

  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);

  Spectrogram spec;
  spec.config = cfg;
  spec.coefficients.resize(cfg.num_bins(), num_frames);
  Eigen::ArrayXd frame(frame_len);
  for (Eigen::Index l = 0; l < num_frames; ++l) {
    frame = clip.samples.segment(l * cfg.hop, frame_len) * window;
    fft.fwd(spec.coefficients.col(l).data(), frame.data(), frame_len);
  }
  return spec;
}

AudioClip synthesize(const Spectrogram& spec) {
  validate(spec.config);
  if (spec.num_bins() != spec.config.num_bins())
    throw ValidationError("stft: spectrogram has " +
                          std::to_string(spec.num_bins()) +
                          " bins, config requires " +
                          std::to_string(spec.config.num_bins()));
  if (spec.num_frames() < 1)
    throw ValidationError("stft: spectrogram has no frames");
  if (!spec.coefficients.allFinite())
    throw ValidationError("stft: spectrogram contains non-finite coefficients");

  const int frame_len = spec.config.frame_len;
  const int hop = spec.config.hop;
  const Eigen::Index num_frames = spec.num_frames();
  const Eigen::Index out_len = (num_frames - 1) * hop + frame_len;
  const Eigen::ArrayXd window = sqrt_hann_window(frame_len);

  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);

  AudioClip clip;
  clip.sample_rate_hz = spec.config.sample_rate_hz;
  clip.samples = Eigen::ArrayXd::Zero(out_len);
  Eigen::ArrayXd frame(frame_len);
  for (Eigen::Index l = 0; l < num_frames; ++l) {
    fft.inv(frame.data(), spec.coefficients.col(l).data(), frame_len);
    clip.samples.segment(l * hop, frame_len) += frame * window;
  }
  return clip;
}

}  // namespace ovtf
