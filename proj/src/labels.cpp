// ovtf/labels.cpp
//
// Copyright 2026 The ovtf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "ovtf/labels.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <numeric>
#include <string>
#include <string_view>

#include "ovtf/errors.hpp"
#include "ovtf/rng.hpp"

namespace ovtf {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

template <typename Int>
Int parse_int(std::string_view field, const std::filesystem::path& path, int line_no) {
  field = trim(field);
  Int value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    throw ValidationError("labels: " + path.string() + ": line " +
                          std::to_string(line_no) + ": expected an integer, got '" +
                          std::string(field) + "'");
  return value;
}

}  // namespace

std::vector<LabelSegment> load_segments(const std::filesystem::path& path,
                                        int num_classes) {
  std::ifstream in(path);
  if (!in)
    throw IoError("labels: cannot open segment file: " + path.string());

  std::vector<LabelSegment> segments;
  std::vector<int> line_numbers;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s = trim(line);
    if (line_no == 1 && s.size() >= 3 && std::string_view(s).substr(0, 3) == "\xEF\xBB\xBF")
      s = trim(s.substr(3));  // UTF-8 BOM
    if (s.empty() || s.front() == '#') continue;

    const auto c1 = s.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : s.find(',', c1 + 1);
    if (c2 == std::string_view::npos || s.find(',', c2 + 1) != std::string_view::npos)
      throw ValidationError("labels: " + path.string() + ": line " +
                            std::to_string(line_no) +
                            ": expected 'start_sample,end_sample,class_id'");
    LabelSegment seg;
    seg.start_sample = parse_int<std::int64_t>(s.substr(0, c1), path, line_no);
    seg.end_sample = parse_int<std::int64_t>(s.substr(c1 + 1, c2 - c1 - 1), path, line_no);
    seg.class_id = parse_int<int>(s.substr(c2 + 1), path, line_no);
    if (seg.start_sample < 0 || seg.start_sample >= seg.end_sample)
      throw ValidationError("labels: " + path.string() + ": line " +
                            std::to_string(line_no) +
                            ": segment must satisfy 0 <= start < end");
    if (seg.class_id < 0 || (num_classes >= 0 && seg.class_id >= num_classes))
      throw ValidationError("labels: " + path.string() + ": line " +
                            std::to_string(line_no) + ": class_id " +
                            std::to_string(seg.class_id) + " out of range [0, " +
                            std::to_string(num_classes) + ")");
    segments.push_back(seg);
    line_numbers.push_back(line_no);
  }

  // Overlap check on a start-sorted view; the returned order stays file order.
  std::vector<std::size_t> order(segments.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return segments[a].start_sample < segments[b].start_sample;
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    const LabelSegment& prev = segments[order[i - 1]];
    const LabelSegment& cur = segments[order[i]];
    if (prev.end_sample > cur.start_sample) {
      const int la = std::min(line_numbers[order[i - 1]], line_numbers[order[i]]);
      const int lb = std::max(line_numbers[order[i - 1]], line_numbers[order[i]]);
      throw ValidationError("labels: " + path.string() +
                            ": overlapping segments on line " + std::to_string(la) +
                            " and line " + std::to_string(lb));
    }
  }
  return segments;
}

void save_segments(std::span<const LabelSegment> segments,
                   const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw IoError("labels: cannot open for writing: " + path.string());
  out << "# start_sample,end_sample,class_id\n";
  for (const LabelSegment& seg : segments)
    out << seg.start_sample << ',' << seg.end_sample << ',' << seg.class_id << '\n';
  out.flush();
  if (!out)
    throw IoError("labels: write failed: " + path.string());
}

FrameLabels segments_to_frames(std::span<const LabelSegment> segments,
                               const StftConfig& cfg, Eigen::Index num_frames,
                               int num_classes) {
  validate(cfg);
  if (num_frames < 1)
    throw ValidationError("labels: num_frames must be >= 1");
  if (num_classes < 0)
    throw ValidationError("labels: num_classes must be >= 0");
  for (const LabelSegment& seg : segments)
    if (seg.class_id < 0 || seg.class_id >= num_classes)
      throw ValidationError("labels: segment class_id " +
                            std::to_string(seg.class_id) + " out of range [0, " +
                            std::to_string(num_classes) + ")");

  std::vector<std::size_t> order(segments.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return segments[a].start_sample < segments[b].start_sample;
  });

  FrameLabels out;
  out.num_classes = num_classes;
  out.labels = Eigen::ArrayXi::Constant(num_frames, kUnlabeled);

  std::vector<std::int64_t> covered(num_classes, 0);
  std::vector<std::int64_t> earliest_start(num_classes, 0);
  std::vector<int> touched;
  std::size_t lo = 0;
  for (Eigen::Index l = 0; l < num_frames; ++l) {
    const std::int64_t frame_start = std::int64_t(l) * cfg.hop;
    const std::int64_t frame_end = frame_start + cfg.frame_len;
    while (lo < order.size() && segments[order[lo]].end_sample <= frame_start) ++lo;

    std::int64_t covered_total = 0;
    for (std::size_t j = lo; j < order.size(); ++j) {
      const LabelSegment& seg = segments[order[j]];
      if (seg.start_sample >= frame_end) break;
      const std::int64_t overlap = std::min(seg.end_sample, frame_end) -
                                   std::max(seg.start_sample, frame_start);
      if (overlap <= 0) continue;
      if (covered[seg.class_id] == 0) {
        touched.push_back(seg.class_id);
        earliest_start[seg.class_id] = seg.start_sample;
      } else {
        earliest_start[seg.class_id] =
            std::min(earliest_start[seg.class_id], seg.start_sample);
      }
      covered[seg.class_id] += overlap;
      covered_total += overlap;
    }

    int best = kUnlabeled;
    std::int64_t best_count = 0;
    std::int64_t best_start = std::numeric_limits<std::int64_t>::max();
    for (int c : touched) {
      if (covered[c] > best_count ||
          (covered[c] == best_count &&
           (earliest_start[c] < best_start ||
            (earliest_start[c] == best_start && c < best)))) {
        best = c;
        best_count = covered[c];
        best_start = earliest_start[c];
      }
    }
    // kUnlabeled has no covering segment, so a class wins an exact tie.
    const std::int64_t uncovered = cfg.frame_len - covered_total;
    out.labels[l] = (best_count >= uncovered && best != kUnlabeled) ? best : kUnlabeled;

    for (int c : touched) covered[c] = 0;
    touched.clear();
  }
  return out;
}

namespace {

// Squared Euclidean distances from every feature column to one centroid.
Eigen::ArrayXd distances_to(const Eigen::ArrayXXd& feats,
                            const Eigen::Ref<const Eigen::ArrayXd>& centroid) {
  return (feats.colwise() - centroid).square().colwise().sum().transpose();
}

}  // namespace

FrameLabels cluster_pseudo_phonemes(const Spectrogram& spec, int num_classes,
                                    std::uint64_t seed) {
  if (num_classes < 1)
    throw ValidationError("labels: num_classes must be >= 1");
  const Eigen::Index num_frames = spec.num_frames();
  if (num_frames < num_classes)
    throw ValidationError("labels: cannot cluster " + std::to_string(num_frames) +
                          " frames into " + std::to_string(num_classes) +
                          " classes (insufficient frames)");

  const Eigen::ArrayXXd feats = (spec.coefficients.abs() + 1e-10).log10();
  const Eigen::Index dim = feats.rows();

  std::mt19937_64 rng(seed);

  // k-means++ seeding: first centroid uniform, the rest proportional to the
  // squared distance to the nearest centroid chosen so far.
  Eigen::ArrayXXd centroids(dim, num_classes);
  centroids.col(0) = feats.col(Eigen::Index(uniform_index(rng, std::uint64_t(num_frames))));
  Eigen::ArrayXd nearest_d2 = distances_to(feats, centroids.col(0));
  for (int j = 1; j < num_classes; ++j) {
    const double total = nearest_d2.sum();
    Eigen::Index pick;
    if (total > 0.0) {
      const double target = uniform_unit(rng) * total;
      double cum = 0.0;
      pick = num_frames - 1;
      for (Eigen::Index l = 0; l < num_frames; ++l) {
        cum += nearest_d2[l];
        if (cum > target) {
          pick = l;
          break;
        }
      }
    } else {
      pick = Eigen::Index(uniform_index(rng, std::uint64_t(num_frames)));
    }
    centroids.col(j) = feats.col(pick);
    nearest_d2 = nearest_d2.min(distances_to(feats, centroids.col(j)));
  }

  constexpr int kMaxIterations = 100;
  constexpr double kMovementTol = 1e-6;

  Eigen::ArrayXi assignment(num_frames);
  Eigen::ArrayXd best_d2(num_frames);
  const auto assign_all = [&]() {
    for (int j = 0; j < num_classes; ++j) {
      const Eigen::ArrayXd d2 = distances_to(feats, centroids.col(j));
      if (j == 0) {
        best_d2 = d2;
        assignment.setZero();
      } else {
        for (Eigen::Index l = 0; l < num_frames; ++l) {
          if (d2[l] < best_d2[l]) {
            best_d2[l] = d2[l];
            assignment[l] = j;
          }
        }
      }
    }
  };

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    assign_all();

    Eigen::ArrayXXd sums = Eigen::ArrayXXd::Zero(dim, num_classes);
    Eigen::ArrayXd counts = Eigen::ArrayXd::Zero(num_classes);
    for (Eigen::Index l = 0; l < num_frames; ++l) {
      sums.col(assignment[l]) += feats.col(l);
      counts[assignment[l]] += 1.0;
    }
    Eigen::ArrayXXd updated(dim, num_classes);
    for (int j = 0; j < num_classes; ++j) {
      if (counts[j] > 0.0) {
        updated.col(j) = sums.col(j) / counts[j];
      } else {
        // Re-seed an empty cluster at the frame farthest from its centroid.
        Eigen::Index far = 0;
        best_d2.maxCoeff(&far);
        updated.col(j) = feats.col(far);
        best_d2[far] = 0.0;
      }
    }
    const double movement =
        (updated - centroids).square().colwise().sum().sqrt().maxCoeff();
    centroids = updated;
    if (movement < kMovementTol) break;
  }
  assign_all();

  FrameLabels out;
  out.num_classes = num_classes;
  out.labels = assignment;
  return out;
}

}  // namespace ovtf
