// ovtf/simulate.cpp
//
// Copyright 2026 The ovtf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "ovtf/simulate.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "ovtf/errors.hpp"

namespace ovtf {

AudioClip apply_prediction_delay(const AudioClip& clip, int delay_samples) {
  if (delay_samples < 0)
    throw ValidationError("simulate: delay_samples must be >= 0");
  const Eigen::Index n = clip.samples.size();
  AudioClip out;
  out.sample_rate_hz = clip.sample_rate_hz;
  out.samples = Eigen::ArrayXd::Zero(n);
  if (delay_samples < n)
    out.samples.tail(n - delay_samples) = clip.samples.head(n - delay_samples);
  return out;
}

Spectrogram apply_speech_independent(const Spectrogram& spec,
                                     const Eigen::ArrayXcd& rtf) {
  if (rtf.size() != spec.num_bins())
    throw ValidationError("simulate: RTF has " + std::to_string(rtf.size()) +
                          " bins, spectrogram has " +
                          std::to_string(spec.num_bins()));
  Spectrogram out = spec;
  out.coefficients.colwise() *= rtf;
  return out;
}

SpeechDependentResult apply_speech_dependent(const Spectrogram& spec,
                                             const FrameLabels& labels,
                                             const RtfModel& model) {
  if (labels.num_classes != model.num_classes)
    throw ValidationError("simulate: label class count " +
                          std::to_string(labels.num_classes) +
                          " does not match model P=" +
                          std::to_string(model.num_classes));
  if (labels.labels.size() != spec.num_frames())
    throw ValidationError("simulate: label length " +
                          std::to_string(labels.labels.size()) +
                          " does not match " + std::to_string(spec.num_frames()) +
                          " frames");
  if (model.global_rtf.size() != spec.num_bins())
    throw ValidationError("simulate: model bin count does not match spectrogram");

  SpeechDependentResult result;
  result.spectrogram = spec;
  for (Eigen::Index l = 0; l < spec.num_frames(); ++l) {
    const int c = labels.labels[l];
    const bool has_entry =
        c != kUnlabeled && c >= 0 && c < model.num_classes && model.per_phoneme[c];
    const Eigen::ArrayXcd& rtf =
        has_entry ? *model.per_phoneme[c] : model.global_rtf;
    result.spectrogram.coefficients.col(l) *= rtf;
    if (!has_entry) ++result.fallback_frames;
  }
  return result;
}

SimulationResult simulate_inear(const AudioClip& outer,
                                const FrameLabels* labels,
                                const RtfModel& model,
                                const SimulationConfig& sim) {
  if (sim.stft != model.config)
    throw ValidationError("simulate: simulation STFT config does not match the model");
  if (sim.delay_samples != model.delay_samples)
    throw ValidationError("simulate: delay " + std::to_string(sim.delay_samples) +
                          " does not match the model's delay " +
                          std::to_string(model.delay_samples));
  if (outer.sample_rate_hz != model.config.sample_rate_hz)
    throw ValidationError("simulate: clip sample rate does not match the model");

  const Spectrogram spec = analyze(outer, model.config);
  const bool model_has_phonemes =
      std::any_of(model.per_phoneme.begin(), model.per_phoneme.end(),
                  [](const auto& h) { return h.has_value(); });

  SimulationResult result;
  result.num_frames = spec.num_frames();
  Spectrogram filtered;
  if (model_has_phonemes && labels) {
    SpeechDependentResult dep = apply_speech_dependent(spec, *labels, model);
    filtered = std::move(dep.spectrogram);
    result.fallback_frames = dep.fallback_frames;
    result.used_speech_dependent = true;
  } else {
    filtered = apply_speech_independent(spec, model.global_rtf);
    result.degraded_to_speech_independent = model_has_phonemes && !labels;
  }

  result.clip = synthesize(filtered);
  if (sim.compensate_delay && sim.delay_samples > 0) {
    const Eigen::Index n = result.clip.samples.size();
    if (sim.delay_samples >= n)
      throw ValidationError("simulate: delay compensation would consume the whole clip");
    result.clip.samples = result.clip.samples.tail(n - sim.delay_samples).eval();
  }
  return result;
}

}  // namespace ovtf
