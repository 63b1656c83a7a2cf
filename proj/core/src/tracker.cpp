#include "facetrack/tracker.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <utility>

#include "facetrack/association.hpp"
#include "facetrack/errors.hpp"
#include "facetrack/fbtr.hpp"

namespace facetrack {

void TrackerConfig::validate() const {
    if (!(iou_threshold >= 0.0 && iou_threshold < 1.0)) {
        throw ConfigError("iou_threshold must be in [0, 1)");
    }
    if (max_lost_frames < 0) {
        throw ConfigError("max_lost_frames must be >= 0");
    }
    if (!(velocity_smoothing > 0.0 && velocity_smoothing <= 1.0)) {
        throw ConfigError("velocity_smoothing must be in (0, 1]");
    }
    if (!(reconnect_threshold >= -1.0 && reconnect_threshold <= 1.0)) {
        throw ConfigError("reconnect_threshold must be in [-1, 1]");
    }
    if (pool_capacity == 0) {
        throw ConfigError("pool_capacity must be positive");
    }
    gates.validate();
}

Tracker::Tracker(TrackerConfig config) : config_(std::move(config)) {
    config_.validate();
}

BBox predict_box(const Tracklet& t, std::int64_t frame, const TrackerConfig& config) {
    if (t.state == TrackState::Dead) {
        throw LifecycleError("predict_box: tracklet is dead");
    }
    if (config.predictor == PredictorKind::ConstantVelocity && t.velocity) {
        const double df = static_cast<double>(frame - t.last_frame);
        const double cx = t.last_box.cx() + (*t.velocity)[0] * df;
        const double cy = t.last_box.cy() + (*t.velocity)[1] * df;
        return BBox(cx - t.last_box.w / 2.0, cy - t.last_box.h / 2.0, t.last_box.w, t.last_box.h);
    }
    return t.last_box;
}

void Tracker::update_tracklet(Tracklet& t, const DetectionRecord& det) {
    const double df = static_cast<double>(det.frame - t.last_frame);
    const double vx = (det.box.cx() - t.last_box.cx()) / df;
    const double vy = (det.box.cy() - t.last_box.cy()) / df;
    if (t.velocity) {
        const double a = config_.velocity_smoothing;
        (*t.velocity)[0] = a * vx + (1.0 - a) * (*t.velocity)[0];
        (*t.velocity)[1] = a * vy + (1.0 - a) * (*t.velocity)[1];
    } else {
        t.velocity = {vx, vy};
    }
    t.last_box = det.box;
    t.last_frame = det.frame;
    t.state = TrackState::Active;
    t.det_count += 1;
    if (config_.enable_reconnect) {
        ingest_template(t.pool, det.quality, det.embedding, config_.gates);
    }
}

void Tracker::retire_stale(std::int64_t frame) {
    // A tracklet updated at u may miss frames u+1 .. u+T_max and still be
    // matched at u+T_max+1; it is dead once the miss count exceeds T_max,
    // which is first observable at frame u+T_max+1 when nothing matched.
    for (Tracklet& t : tracklets_) {
        if (t.state == TrackState::Dead) {
            continue;
        }
        if (frame - t.last_frame - 1 > config_.max_lost_frames) {
            t.state = TrackState::Dead;
        }
    }
}

void Tracker::reconnect_updated(std::int64_t frame, std::vector<FrameUpdate>& updates) {
    std::sort(updates.begin(), updates.end(),
              [](const FrameUpdate& a, const FrameUpdate& b) { return a.det_id < b.det_id; });

    std::vector<ReconnectCandidate> candidates;
    for (const FrameUpdate& upd : updates) {
        Tracklet& query = tracklets_[upd.tracklet_index];

        // A candidate must have finished before the query began, so merging
        // can never put two boxes of one track into the same frame.
        candidates.clear();
        for (const Tracklet& t : tracklets_) {
            if (t.absorbed_into || !t.pool.has_enrollable()) {
                continue;
            }
            if (t.last_frame < query.first_frame) {
                candidates.push_back({t.id, &t.pool});
            }
        }
        const auto hit = best_reconnect(query.pool, candidates, config_.reconnect_threshold);
        if (!hit) {
            continue;
        }

        auto survivor_it =
            std::find_if(tracklets_.begin(), tracklets_.end(),
                         [&](const Tracklet& t) { return t.id == hit->track_id; });
        Tracklet& survivor = *survivor_it;
        log_.entries[upd.log_index].track_id = survivor.id;
        merge_events_.push_back({frame, query.id, survivor.id});
        merges_.record(query.id, survivor.id);
        stats_.reconnections += 1;

        survivor.state = TrackState::Active;
        survivor.last_frame = frame;
        survivor.last_box = query.last_box;
        survivor.velocity = query.velocity;
        survivor.det_count += query.det_count;
        survivor.pool.absorb(std::move(query.pool));
        query.state = TrackState::Dead;
        query.absorbed_into = survivor.id;
    }
}

void Tracker::step(std::int64_t frame, std::span<const DetectionRecord> detections) {
    if (last_stepped_frame_ && frame <= *last_stepped_frame_) {
        throw LifecycleError("step frames must strictly increase");
    }
    last_stepped_frame_ = frame;

    for (std::size_t i = 0; i < detections.size(); ++i) {
        if (detections[i].frame != frame) {
            throw ValidationError("step: detection frame does not match step frame");
        }
        if (i > 0 && detections[i].det_id <= detections[i - 1].det_id) {
            throw ValidationError("step: detections must be ordered by ascending det id");
        }
    }

    retire_stale(frame);

    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < tracklets_.size(); ++i) {
        if (tracklets_[i].state != TrackState::Dead) {
            live.push_back(i);
        }
    }

    ScoreMatrix scores(live.size(), detections.size());
    for (std::size_t r = 0; r < live.size(); ++r) {
        const BBox box = predict_box(tracklets_[live[r]], frame, config_);
        for (std::size_t c = 0; c < detections.size(); ++c) {
            scores.at(r, c) = iou(box, detections[c].box);
        }
    }
    const MatchResult result = match_with_gate(scores, config_.iou_threshold);

    std::vector<FrameUpdate> updates;
    updates.reserve(detections.size());

    for (const auto& [row, col] : result.matches) {
        Tracklet& t = tracklets_[live[row]];
        const DetectionRecord& det = detections[col];
        update_tracklet(t, det);
        log_.entries.push_back({frame, t.id, det.box, det.det_id});
        updates.push_back({det.det_id, live[row], log_.entries.size() - 1});
    }

    for (std::size_t row : result.unmatched_rows) {
        Tracklet& t = tracklets_[live[row]];
        t.state = frame - t.last_frame > config_.max_lost_frames ? TrackState::Dead
                                                                 : TrackState::Lost;
    }

    for (std::size_t col : result.unmatched_cols) {
        const DetectionRecord& det = detections[col];
        Tracklet t;
        t.id = next_id_++;
        t.state = TrackState::Active;
        t.first_frame = frame;
        t.last_frame = frame;
        t.last_box = det.box;
        t.pool = TemplatePool(config_.pool_capacity);
        t.det_count = 1;
        if (config_.enable_reconnect) {
            ingest_template(t.pool, det.quality, det.embedding, config_.gates);
        }
        tracklets_.push_back(std::move(t));
        log_.entries.push_back({frame, tracklets_.back().id, det.box, det.det_id});
        updates.push_back({det.det_id, tracklets_.size() - 1, log_.entries.size() - 1});
        stats_.tracklets_created += 1;
    }

    if (config_.enable_reconnect && !updates.empty()) {
        reconnect_updated(frame, updates);
    }

    stats_.frames_processed += 1;
    stats_.detections_processed += static_cast<std::int64_t>(detections.size());
}

TrackOutput Tracker::finish() {
    TrackOutput out;
    out.raw_log = std::move(log_);
    out.log = config_.enable_correction ? merges_.applied(out.raw_log) : out.raw_log;
    out.merge_events = std::move(merge_events_);
    out.merges = std::move(merges_);
    out.stats = stats_;
    log_ = AssignmentLog{};
    merge_events_.clear();
    merges_ = MergeSet{};
    return out;
}

TrackOutput track_stream(const std::vector<DetectionRecord>& stream,
                         const TrackerConfig& config) {
    for (std::size_t i = 1; i < stream.size(); ++i) {
        if (stream[i].frame < stream[i - 1].frame) {
            throw ValidationError("track_stream: detections must be sorted by frame");
        }
    }

    // Group into per-frame slices, each sorted by det id.
    std::vector<DetectionRecord> sorted = stream;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const DetectionRecord& a, const DetectionRecord& b) {
                         return a.frame != b.frame ? a.frame < b.frame : a.det_id < b.det_id;
                     });

    Tracker tracker(config);
    const auto start = std::chrono::steady_clock::now();

    std::size_t i = 0;
    std::int64_t next_frame = sorted.empty() ? 0 : sorted.front().frame;
    while (i < sorted.size()) {
        const std::int64_t frame = sorted[i].frame;
        // Empty frames only age tracklets, and staleness is frame-derived,
        // so the gap is stepped only while something is alive to retire.
        bool any_live = false;
        for (const Tracklet& t : tracker.tracklets()) {
            if (t.state != TrackState::Dead) {
                any_live = true;
                break;
            }
        }
        if (any_live) {
            for (std::int64_t f = next_frame; f < frame; ++f) {
                tracker.step(f, {});
            }
        }

        std::size_t j = i;
        while (j < sorted.size() && sorted[j].frame == frame) {
            ++j;
        }
        tracker.step(frame, std::span<const DetectionRecord>(sorted.data() + i, j - i));
        next_frame = frame + 1;
        i = j;
    }

    TrackOutput out = tracker.finish();
    const auto stop = std::chrono::steady_clock::now();
    out.stats.engine_seconds = std::chrono::duration<double>(stop - start).count();
    return out;
}

std::vector<AblationStage> ablation_stages(const TrackerConfig& base) {
    TrackerConfig da = base;
    da.max_lost_frames = 0;
    da.predictor = PredictorKind::HoldLast;
    da.enable_reconnect = false;
    da.enable_correction = false;

    TrackerConfig da_fbtr = da;
    da_fbtr.enable_reconnect = true;

    TrackerConfig tm = base;
    tm.enable_reconnect = false;
    tm.enable_correction = false;

    TrackerConfig tm_fbtr = base;
    tm_fbtr.enable_reconnect = true;
    tm_fbtr.enable_correction = false;

    TrackerConfig full = base;
    full.enable_reconnect = true;
    full.enable_correction = true;

    return {{"DA", da},
            {"DA+FBTR", da_fbtr},
            {"DA+TM", tm},
            {"DA+TM+FBTR", tm_fbtr},
            {"DA+TM+FBTR+CM", full}};
}

}  // namespace facetrack
