#include "facetrack/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <unordered_set>

#include "facetrack/association.hpp"
#include "facetrack/errors.hpp"
#include "facetrack/geometry.hpp"

namespace facetrack {

std::vector<FrameMatching> match_frames(const GroundTruth& gt, const AssignmentLog& log,
                                        double min_iou) {
    if (!(min_iou >= 0.0 && min_iou <= 1.0)) {
        throw ConfigError("min_iou must be in [0, 1]");
    }

    std::map<std::int64_t, std::vector<const GroundTruth::Entry*>> gt_by_frame;
    for (const GroundTruth::Entry& e : gt.entries) {
        gt_by_frame[e.frame].push_back(&e);
    }
    std::map<std::int64_t, std::vector<const AssignmentLog::Entry*>> log_by_frame;
    for (const AssignmentLog::Entry& e : log.entries) {
        log_by_frame[e.frame].push_back(&e);
    }

    std::vector<FrameMatching> out;
    for (auto& [frame, rows] : gt_by_frame) {
        auto lit = log_by_frame.find(frame);
        if (lit == log_by_frame.end()) {
            continue;
        }
        std::vector<const AssignmentLog::Entry*>& cols = lit->second;
        std::sort(rows.begin(), rows.end(),
                  [](const auto* a, const auto* b) { return a->identity < b->identity; });
        std::sort(cols.begin(), cols.end(),
                  [](const auto* a, const auto* b) { return a->track_id < b->track_id; });

        // Sub-threshold pairs are floored to zero so they can neither join
        // nor steer the matching; the filter below drops any that slip in.
        ScoreMatrix scores(rows.size(), cols.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            for (std::size_t c = 0; c < cols.size(); ++c) {
                const double v = iou(rows[r]->box, cols[c]->box);
                scores.at(r, c) = v >= min_iou ? v : 0.0;
            }
        }
        const Assignment solved = solve_assignment(scores);

        FrameMatching fm;
        fm.frame = frame;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const std::int64_t c = solved.match[r];
            if (c == -1) {
                continue;
            }
            const double v = iou(rows[r]->box, cols[static_cast<std::size_t>(c)]->box);
            if (v >= min_iou) {
                fm.pairs.push_back(
                    {rows[r]->identity, cols[static_cast<std::size_t>(c)]->track_id, v});
            }
        }
        if (!fm.pairs.empty()) {
            out.push_back(std::move(fm));
        }
    }
    return out;
}

MetricsCounts score_matching(const GroundTruth& gt, std::span<const FrameMatching> frames) {
    MetricsCounts counts;
    counts.gt_detections = static_cast<std::int64_t>(gt.entries.size());

    std::map<std::string, std::int64_t> gt_per_identity;
    for (const GroundTruth::Entry& e : gt.entries) {
        gt_per_identity[e.identity] += 1;
    }
    counts.identities = static_cast<std::int64_t>(gt_per_identity.size());

    struct Cover {
        std::int64_t matched = 0;
        std::int64_t first_frame = 0;
    };
    std::map<std::string, std::int64_t> last_track;
    std::unordered_set<std::int64_t> seen_tracks;
    std::map<std::string, std::map<std::int64_t, Cover>> cover;

    for (const FrameMatching& fm : frames) {
        for (const FramePair& p : fm.pairs) {
            auto it = last_track.find(p.identity);
            if (it != last_track.end() && it->second != p.track_id) {
                if (seen_tracks.count(p.track_id) != 0) {
                    counts.hard_mismatches += 1;
                } else {
                    counts.soft_mismatches += 1;
                }
            }
            last_track[p.identity] = p.track_id;

            Cover& cv = cover[p.identity][p.track_id];
            if (cv.matched == 0) {
                cv.first_frame = fm.frame;
            }
            cv.matched += 1;
            counts.matched_detections += 1;
        }
        // Tracks become "previously seen" only once the frame is complete.
        for (const FramePair& p : fm.pairs) {
            seen_tracks.insert(p.track_id);
        }
    }

    for (const auto& [identity, n] : gt_per_identity) {
        std::int64_t m = 0;
        const auto cit = cover.find(identity);
        if (cit != cover.end()) {
            std::int64_t best_matched = -1;
            std::int64_t best_first = 0;
            // Ascending track order makes the lowest id win residual ties.
            for (const auto& [track, cv] : cit->second) {
                const bool better = cv.matched > best_matched ||
                                    (cv.matched == best_matched && cv.first_frame < best_first);
                if (better) {
                    best_matched = cv.matched;
                    best_first = cv.first_frame;
                }
            }
            m = best_matched;
        }
        for (int x = 0; x <= 100; ++x) {
            // Exact integer comparison, no floating point cliff at m/n == x%.
            if (m * 100 >= static_cast<std::int64_t>(x) * n) {
                counts.completion_counts[static_cast<std::size_t>(x)] += 1;
            }
        }
    }
    return counts;
}

MetricsReport evaluate_log(const GroundTruth& gt, const AssignmentLog& log, double min_iou) {
    if (gt.empty()) {
        throw ValidationError("ground truth is empty");
    }
    const std::vector<FrameMatching> frames = match_frames(gt, log, min_iou);
    return MetricsReport{score_matching(gt, frames)};
}

double MetricsReport::frag() const {
    if (counts.gt_detections == 0) {
        throw ValidationError("frag is undefined without ground truth detections");
    }
    return static_cast<double>(counts.soft_mismatches) /
           static_cast<double>(counts.gt_detections);
}

double MetricsReport::idsw() const {
    if (counts.gt_detections == 0) {
        throw ValidationError("idsw is undefined without ground truth detections");
    }
    return static_cast<double>(counts.hard_mismatches) /
           static_cast<double>(counts.gt_detections);
}

double MetricsReport::completion_rate(int x) const {
    if (x < 0 || x > 100) {
        throw ConfigError("completion threshold must be in [0, 100]");
    }
    if (counts.identities == 0) {
        throw ValidationError("completion rate is undefined without identities");
    }
    return static_cast<double>(counts.completion_counts[static_cast<std::size_t>(x)]) /
           static_cast<double>(counts.identities);
}

double MetricsReport::crs() const {
    double sum = 0.0;
    for (int x = 1; x <= 100; ++x) {
        sum += completion_rate(x);
    }
    return sum / 100.0;
}

MetricsReport aggregate_reports(std::span<const MetricsReport> reports) {
    if (reports.empty()) {
        throw ValidationError("nothing to aggregate");
    }
    MetricsCounts total;
    for (const MetricsReport& r : reports) {
        total.gt_detections += r.counts.gt_detections;
        total.identities += r.counts.identities;
        total.matched_detections += r.counts.matched_detections;
        total.soft_mismatches += r.counts.soft_mismatches;
        total.hard_mismatches += r.counts.hard_mismatches;
        for (std::size_t x = 0; x < total.completion_counts.size(); ++x) {
            total.completion_counts[x] += r.counts.completion_counts[x];
        }
    }
    return MetricsReport{total};
}

namespace {

std::string fixed(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
    return buf;
}

}  // namespace

void write_metrics_text(const MetricsReport& report, std::ostream& out) {
    const MetricsCounts& c = report.counts;
    out << "gt_detections      " << c.gt_detections << '\n'
        << "identities         " << c.identities << '\n'
        << "matched            " << c.matched_detections << '\n'
        << "soft_mismatches    " << c.soft_mismatches << '\n'
        << "hard_mismatches    " << c.hard_mismatches << '\n'
        << "frag               " << fixed(report.frag(), 5) << '\n'
        << "idsw               " << fixed(report.idsw(), 5) << '\n'
        << "cr@50              " << fixed(report.completion_rate(50), 3) << '\n'
        << "cr@80              " << fixed(report.completion_rate(80), 3) << '\n'
        << "cr@100             " << fixed(report.completion_rate(100), 3) << '\n'
        << "crs                " << fixed(report.crs(), 3) << '\n';
}

}  // namespace facetrack
