#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "facetrack/detection.hpp"

namespace facetrack {

struct FramePair {
    std::string identity;
    std::int64_t track_id = 0;
    double iou = 0.0;
};

struct FrameMatching {
    std::int64_t frame = 0;
    // One pair per ground-truth box that found a predicted box, sorted by
    // identity.
    std::vector<FramePair> pairs;
};

// Per-frame maximum-IOU one-to-one matching between ground truth boxes and
// logged boxes. Pairs below min_iou (exclusive test is NOT used: the bound
// is inclusive) are dropped after solving.
std::vector<FrameMatching> match_frames(const GroundTruth& gt, const AssignmentLog& log,
                                        double min_iou = 0.5);

// Raw tallies behind the derived rates. Additive across scenarios, which is
// what aggregation relies on: rates are recomputed from pooled tallies, not
// averaged.
struct MetricsCounts {
    std::int64_t gt_detections = 0;
    std::int64_t identities = 0;
    std::int64_t matched_detections = 0;
    std::int64_t soft_mismatches = 0;
    std::int64_t hard_mismatches = 0;
    // completion_counts[x] is the number of identities whose canonical
    // track covers at least x percent of their ground truth detections.
    std::array<std::int64_t, 101> completion_counts{};
};

struct MetricsReport {
    MetricsCounts counts;

    double frag() const;                  // soft mismatches per gt detection
    double idsw() const;                  // hard mismatches per gt detection
    double completion_rate(int x) const;  // fraction of identities at >= x%
    double crs() const;                   // mean completion rate over x = 1..100
};

// Scores a matching: soft and hard mismatches plus per-identity completion.
// A mismatch is a change in the track matched to an identity relative to
// the identity's previous matched frame; it is soft when the new track was
// never part of any earlier frame's matching, hard otherwise.
MetricsCounts score_matching(const GroundTruth& gt, std::span<const FrameMatching> frames);

// match_frames + score_matching. Throws ValidationError when gt is empty.
MetricsReport evaluate_log(const GroundTruth& gt, const AssignmentLog& log,
                           double min_iou = 0.5);

// Pools tallies across scenarios (ratio of sums, never a mean of ratios).
MetricsReport aggregate_reports(std::span<const MetricsReport> reports);

void write_metrics_text(const MetricsReport& report, std::ostream& out);
void write_metrics_json(const MetricsReport& report, std::ostream& out);

// Completion rate profile: 101 unheadered rows "x,rate" for x = 0..100.
void write_crp_csv(const MetricsReport& report, std::ostream& out);
// Step plot of the same profile as a standalone SVG document.
void write_crp_svg(const MetricsReport& report, std::ostream& out);

}  // namespace facetrack
