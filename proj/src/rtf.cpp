// ovtf/rtf.cpp
//
// Copyright 2026 The ovtf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "ovtf/rtf.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <string>

#include <json.hpp>

#include "ovtf/errors.hpp"

namespace ovtf {

namespace {

constexpr int kModelFormatVersion = 1;

void check_accumulator_shapes(const RtfAccumulator& acc) {
  const Eigen::Index bins = acc.config.num_bins();
  if (acc.global_cross.size() != bins || acc.global_power.size() != bins ||
      acc.class_cross.rows() != bins || acc.class_power.rows() != bins ||
      acc.class_cross.cols() != acc.num_classes ||
      acc.class_power.cols() != acc.num_classes ||
      std::ssize(acc.class_frames) != acc.num_classes)
    throw ValidationError("rtf: accumulator arrays do not match its config");
}

Eigen::ArrayXcd ls_quotient(const Eigen::ArrayXcd& cross,
                            const Eigen::ArrayXd& power, double eps) {
  // Unexcited bins have zero cross as well; map them to 0 rather than 0/0.
  return (power > 0.0).select(cross / (power + eps), std::complex<double>(0.0));
}

}  // namespace

RtfAccumulator make_accumulator(const StftConfig& cfg, int num_classes,
                                int delay_samples) {
  validate(cfg);
  if (num_classes < 0)
    throw ValidationError("rtf: num_classes must be >= 0");
  if (delay_samples < 0)
    throw ValidationError("rtf: delay_samples must be >= 0");
  RtfAccumulator acc;
  acc.config = cfg;
  acc.num_classes = num_classes;
  acc.delay_samples = delay_samples;
  const Eigen::Index bins = cfg.num_bins();
  acc.global_cross = Eigen::ArrayXcd::Zero(bins);
  acc.global_power = Eigen::ArrayXd::Zero(bins);
  acc.class_cross = Eigen::ArrayXXcd::Zero(bins, num_classes);
  acc.class_power = Eigen::ArrayXXd::Zero(bins, num_classes);
  acc.class_frames.assign(num_classes, 0);
  return acc;
}

void accumulate(RtfAccumulator& acc, const Spectrogram& outer,
                const Spectrogram& inear, const FrameLabels* labels) {
  check_accumulator_shapes(acc);
  if (outer.config != acc.config || inear.config != acc.config)
    throw ValidationError("rtf: spectrogram config does not match accumulator");
  if (outer.num_bins() != acc.config.num_bins() ||
      inear.num_bins() != acc.config.num_bins() ||
      outer.num_frames() != inear.num_frames())
    throw ValidationError("rtf: outer/in-ear spectrogram shapes do not pair up");
  const Eigen::Index num_frames = outer.num_frames();
  if (labels) {
    if (labels->labels.size() != num_frames)
      throw ValidationError("rtf: frame labels length " +
                            std::to_string(labels->labels.size()) +
                            " does not match " + std::to_string(num_frames) +
                            " frames");
    if (labels->num_classes != acc.num_classes)
      throw ValidationError("rtf: label class count " +
                            std::to_string(labels->num_classes) +
                            " does not match accumulator P=" +
                            std::to_string(acc.num_classes));
  }

  acc.global_cross +=
      (outer.coefficients.conjugate() * inear.coefficients).rowwise().sum();
  acc.global_power += outer.coefficients.abs2().rowwise().sum();
  acc.global_frames += num_frames;

  if (!labels) return;
  for (Eigen::Index l = 0; l < num_frames; ++l) {
    const int c = labels->labels[l];
    if (c == kUnlabeled) continue;
    if (c < 0 || c >= acc.num_classes)
      throw ValidationError("rtf: frame label " + std::to_string(c) +
                            " out of range [0, " +
                            std::to_string(acc.num_classes) + ")");
    acc.class_cross.col(c) +=
        outer.coefficients.col(l).conjugate() * inear.coefficients.col(l);
    acc.class_power.col(c) += outer.coefficients.col(l).abs2();
    ++acc.class_frames[c];
  }
}

RtfAccumulator merge(const RtfAccumulator& a, const RtfAccumulator& b) {
  check_accumulator_shapes(a);
  check_accumulator_shapes(b);
  if (a.config != b.config || a.num_classes != b.num_classes ||
      a.delay_samples != b.delay_samples)
    throw ValidationError("rtf: cannot merge accumulators with different configurations");
  RtfAccumulator out = a;
  out.global_cross += b.global_cross;
  out.global_power += b.global_power;
  out.global_frames += b.global_frames;
  out.class_cross += b.class_cross;
  out.class_power += b.class_power;
  for (int c = 0; c < out.num_classes; ++c)
    out.class_frames[c] += b.class_frames[c];
  return out;
}

double default_eps(const RtfAccumulator& acc) {
  check_accumulator_shapes(acc);
  return 1e-10 * acc.global_power.mean();
}

Eigen::ArrayXcd finalize_speech_independent(const RtfAccumulator& acc,
                                            std::optional<double> eps) {
  check_accumulator_shapes(acc);
  if (acc.global_frames < 1)
    throw ValidationError("rtf: cannot finalize an accumulator with no frames");
  const double e = eps.value_or(default_eps(acc));
  if (e < 0.0 || !std::isfinite(e))
    throw ValidationError("rtf: eps must be finite and >= 0");
  return ls_quotient(acc.global_cross, acc.global_power, e);
}

RtfModel finalize_speech_dependent(const RtfAccumulator& acc,
                                   const FinalizeOptions& options) {
  check_accumulator_shapes(acc);
  if (acc.global_frames < 1)
    throw ValidationError("rtf: cannot finalize an accumulator with no frames");
  if (options.min_frames < 0)
    throw ValidationError("rtf: min_frames must be >= 0");
  const double eps = options.eps.value_or(default_eps(acc));
  if (eps < 0.0 || !std::isfinite(eps))
    throw ValidationError("rtf: eps must be finite and >= 0");

  RtfModel model;
  model.config = acc.config;
  model.delay_samples = acc.delay_samples;
  model.num_classes = acc.num_classes;
  model.eps = eps;
  model.min_frames = options.min_frames;
  model.talker_id = options.talker_id;
  model.global_rtf = ls_quotient(acc.global_cross, acc.global_power, eps);
  model.global_frames = acc.global_frames;
  model.class_frames = acc.class_frames;
  model.per_phoneme.resize(acc.num_classes);
  for (int c = 0; c < acc.num_classes; ++c) {
    if (acc.class_frames[c] >= options.min_frames)
      model.per_phoneme[c] =
          ls_quotient(acc.class_cross.col(c), acc.class_power.col(c), eps);
  }
  return model;
}

namespace {

using nlohmann::ordered_json;

void check_model(const RtfModel& model) {
  validate(model.config);
  const Eigen::Index bins = model.config.num_bins();
  if (model.num_classes < 0 || model.delay_samples < 0 || model.min_frames < 0)
    throw ValidationError("rtf: model metadata out of range");
  if (!std::isfinite(model.eps) || model.eps < 0.0)
    throw ValidationError("rtf: model eps must be finite and >= 0");
  if (model.global_rtf.size() != bins || !model.global_rtf.allFinite())
    throw ValidationError("rtf: model global RTF malformed or non-finite");
  if (std::ssize(model.per_phoneme) != model.num_classes ||
      std::ssize(model.class_frames) != model.num_classes)
    throw ValidationError("rtf: model per-class tables do not match P");
  for (int c = 0; c < model.num_classes; ++c) {
    const bool qualified = model.class_frames[c] >= model.min_frames;
    if (model.per_phoneme[c].has_value() != qualified)
      throw ValidationError("rtf: model class " + std::to_string(c) +
                            " violates the min_frames presence rule");
    if (model.per_phoneme[c] && (model.per_phoneme[c]->size() != bins ||
                                 !model.per_phoneme[c]->allFinite()))
      throw ValidationError("rtf: model class " + std::to_string(c) +
                            " RTF malformed or non-finite");
  }
}

ordered_json complex_array_to_json(const Eigen::ArrayXcd& values) {
  std::vector<double> re(values.size()), im(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    re[i] = values[i].real();
    im[i] = values[i].imag();
  }
  return ordered_json{{"re", re}, {"im", im}};
}

Eigen::ArrayXcd complex_array_from_json(const ordered_json& j, Eigen::Index bins,
                                        const std::string& what) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im"))
    throw ValidationError("rtf: model field '" + what + "' must hold re/im arrays");
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (!re.is_array() || !im.is_array() || std::ssize(re) != bins ||
      std::ssize(im) != bins)
    throw ValidationError("rtf: model field '" + what + "' has wrong bin count");
  Eigen::ArrayXcd out(bins);
  for (Eigen::Index i = 0; i < bins; ++i) {
    if (!re[i].is_number() || !im[i].is_number())
      throw ValidationError("rtf: model field '" + what + "' holds a non-numeric entry");
    out[i] = std::complex<double>(re[i].get<double>(), im[i].get<double>());
  }
  if (!out.allFinite())
    throw ValidationError("rtf: model field '" + what + "' holds a non-finite coefficient");
  return out;
}

}  // namespace

void save_model(const RtfModel& model, const std::filesystem::path& path) {
  check_model(model);
  ordered_json j;
  j["format_version"] = kModelFormatVersion;
  j["K"] = model.config.frame_len;
  j["hop"] = model.config.hop;
  j["sample_rate_hz"] = model.config.sample_rate_hz;
  j["delay_samples"] = model.delay_samples;
  j["P"] = model.num_classes;
  j["eps"] = model.eps;
  j["min_frames"] = model.min_frames;
  j["talker_id"] = model.talker_id;
  j["global_frames"] = model.global_frames;
  j["global_rtf"] = complex_array_to_json(model.global_rtf);
  j["class_frame_counts"] = model.class_frames;
  ordered_json phonemes = ordered_json::object();
  for (int c = 0; c < model.num_classes; ++c) {
    if (!model.per_phoneme[c]) continue;
    ordered_json entry = complex_array_to_json(*model.per_phoneme[c]);
    entry["frame_count"] = model.class_frames[c];
    phonemes[std::to_string(c)] = std::move(entry);
  }
  j["phonemes"] = std::move(phonemes);

  std::ofstream out(path);
  if (!out)
    throw IoError("rtf: cannot open model file for writing: " + path.string());
  out << j.dump(1, '\t') << '\n';
  out.flush();
  if (!out)
    throw IoError("rtf: write failed: " + path.string());
}

RtfModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("rtf: cannot open model file: " + path.string());
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("rtf: malformed model file " + path.string() + ": " +
                          e.what());
  }

  try {
    if (!j.contains("format_version") || !j.at("format_version").is_number_integer())
      throw ValidationError("rtf: model file " + path.string() +
                            " lacks a format_version");
    const auto version = j.at("format_version").get<std::int64_t>();
    if (version != kModelFormatVersion)
      throw ValidationError("rtf: unsupported model format_version " +
                            std::to_string(version) + " in " + path.string() +
                            " (expected " + std::to_string(kModelFormatVersion) + ")");

    RtfModel model;
    model.config.frame_len = j.at("K").get<int>();
    model.config.hop = j.at("hop").get<int>();
    model.config.sample_rate_hz = j.at("sample_rate_hz").get<double>();
    model.delay_samples = j.at("delay_samples").get<int>();
    model.num_classes = j.at("P").get<int>();
    model.eps = j.at("eps").get<double>();
    model.min_frames = j.at("min_frames").get<int>();
    model.talker_id = j.at("talker_id").get<std::string>();
    model.global_frames = j.at("global_frames").get<std::int64_t>();
    validate(model.config);
    if (model.num_classes < 0)
      throw ValidationError("rtf: model P must be >= 0");

    const Eigen::Index bins = model.config.num_bins();
    model.global_rtf = complex_array_from_json(j.at("global_rtf"), bins, "global_rtf");

    const auto& counts = j.at("class_frame_counts");
    if (!counts.is_array() || std::ssize(counts) != model.num_classes)
      throw ValidationError("rtf: class_frame_counts must list all P classes");
    model.class_frames.resize(model.num_classes);
    for (int c = 0; c < model.num_classes; ++c)
      model.class_frames[c] = counts[c].get<std::int64_t>();

    model.per_phoneme.resize(model.num_classes);
    const auto& phonemes = j.at("phonemes");
    if (!phonemes.is_object())
      throw ValidationError("rtf: phonemes must be a map");
    for (const auto& [key, entry] : phonemes.items()) {
      int c = -1;
      try {
        c = std::stoi(key);
      } catch (const std::exception&) {
        throw ValidationError("rtf: phoneme key '" + key + "' is not a class id");
      }
      if (c < 0 || c >= model.num_classes)
        throw ValidationError("rtf: phoneme class " + key + " out of range [0, " +
                              std::to_string(model.num_classes) + ")");
      model.per_phoneme[c] = complex_array_from_json(entry, bins, "phonemes/" + key);
      if (!entry.contains("frame_count") ||
          entry.at("frame_count").get<std::int64_t>() != model.class_frames[c])
        throw ValidationError("rtf: phoneme class " + key +
                              " frame_count disagrees with class_frame_counts");
    }
    check_model(model);
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("rtf: malformed model file " + path.string() + ": " +
                          e.what());
  }
}

}  // namespace ovtf
