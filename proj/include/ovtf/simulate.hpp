// ovtf/simulate.hpp
//
// Copyright 2026 The ovtf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef OVTF_SIMULATE_HPP
#define OVTF_SIMULATE_HPP

#include <cstdint>

#include <Eigen/Dense>

#include "ovtf/labels.hpp"
#include "ovtf/rtf.hpp"
#include "ovtf/stft.hpp"

namespace ovtf {

/// Simulation parameters. The simulated signal lives on the delayed in-ear
/// timeline (the same one identification used); compensate_delay removes the
/// leading delay_samples to return to the physical timeline.
struct SimulationConfig {
  int delay_samples = 11;
  bool compensate_delay = false;
  StftConfig stft;
};

/// Shifts the clip right by delay_samples, zero-filling the front and keeping
/// the length unchanged.
AudioClip apply_prediction_delay(const AudioClip& clip, int delay_samples);

/// S(k,l) = rtf(k) * Y(k,l) for every frame.
Spectrogram apply_speech_independent(const Spectrogram& spec,
                                     const Eigen::ArrayXcd& rtf);

struct SpeechDependentResult {
  Spectrogram spectrogram;
  /// Frames filtered by the global RTF: unlabeled frames plus frames whose
  /// class has no model entry.
  std::int64_t fallback_frames = 0;
};

/// S(k,l) = H_{p(l)}(k) * Y(k,l), falling back to the global RTF for
/// unlabeled frames and classes below the model's min_frames threshold.
SpeechDependentResult apply_speech_dependent(const Spectrogram& spec,
                                             const FrameLabels& labels,
                                             const RtfModel& model);

struct SimulationResult {
  AudioClip clip;
  std::int64_t num_frames = 0;
  std::int64_t fallback_frames = 0;
  bool used_speech_dependent = false;
  /// True when the model carries per-phoneme RTFs but no labels were given,
  /// so the output degraded to speech-independent filtering.
  bool degraded_to_speech_independent = false;
};

/// Full pipeline: analyze -> per-frame filtering -> overlap-add synthesis.
/// Uses the speech-dependent path when the model has per-phoneme entries and
/// labels are provided; absent labels degrade to the global RTF (flagged,
/// never fatal).
SimulationResult simulate_inear(const AudioClip& outer,
                                const FrameLabels* labels,
                                const RtfModel& model,
                                const SimulationConfig& sim);

}  // namespace ovtf

#endif  // OVTF_SIMULATE_HPP
