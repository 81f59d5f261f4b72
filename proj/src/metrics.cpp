// ovtf/metrics.cpp
//
// Copyright 2026 The ovtf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "ovtf/metrics.hpp"

#include "ovtf/errors.hpp"

namespace ovtf {

LsdResult lsd(const Spectrogram& reference, const Spectrogram& estimate,
              double floor) {
  if (!(floor > 0.0))
    throw ValidationError("metrics: spectral floor must be positive");
  if (reference.config != estimate.config ||
      reference.num_bins() != estimate.num_bins() ||
      reference.num_frames() != estimate.num_frames())
    throw ValidationError("metrics: spectrogram shapes or configs differ");

  const Eigen::ArrayXXd ref_db = 20.0 * (reference.coefficients.abs() + floor).log10();
  const Eigen::ArrayXXd est_db = 20.0 * (estimate.coefficients.abs() + floor).log10();

  LsdResult result;
  result.per_frame_lsd_db =
      (ref_db - est_db).square().colwise().mean().sqrt().transpose();
  result.frames_used = result.per_frame_lsd_db.size();
  result.utterance_lsd_db = result.per_frame_lsd_db.mean();
  return result;
}

}  // namespace ovtf
