#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "facetrack/detection.hpp"
#include "facetrack/geometry.hpp"
#include "facetrack/merge_set.hpp"
#include "facetrack/quality.hpp"
#include "facetrack/template_pool.hpp"

namespace facetrack {

enum class TrackState { Active, Lost, Dead };

enum class PredictorKind {
    HoldLast,          // predicted box is the last assigned box
    ConstantVelocity,  // extrapolates the smoothed center velocity, size held
};

struct TrackerConfig {
    // Minimum IOU for a valid tracklet/detection pair, exclusive.
    double iou_threshold = 0.25;
    // A tracklet missing for more than this many consecutive frames is dead.
    // Zero disables bridging entirely: one missed frame kills the tracklet.
    std::int64_t max_lost_frames = 10;
    PredictorKind predictor = PredictorKind::ConstantVelocity;
    // Weight of the newest velocity observation in the running estimate.
    double velocity_smoothing = 0.5;
    bool enable_reconnect = true;
    bool enable_correction = true;
    // Minimum cosine similarity for a reconnection, inclusive.
    double reconnect_threshold = 0.7;
    std::size_t pool_capacity = 64;
    QualityGates gates{};

    void validate() const;
};

struct Tracklet {
    std::int64_t id = 0;
    TrackState state = TrackState::Active;
    std::int64_t first_frame = 0;  // frame of the first assigned detection
    std::int64_t last_frame = 0;   // frame of the most recent assigned detection
    BBox last_box{};
    // Smoothed center displacement per frame; empty until two observations.
    std::optional<std::array<double, 2>> velocity;
    TemplatePool pool{64};
    std::int64_t det_count = 0;
    // Set when a reconnection folded this tracklet into an earlier one.
    std::optional<std::int64_t> absorbed_into;
};

// Box the tracklet is expected to occupy at `frame`. HoldLast returns the
// last assigned box; ConstantVelocity extrapolates the smoothed center and
// holds the size, falling back to the last box until a velocity exists.
// Throws LifecycleError for a dead tracklet.
BBox predict_box(const Tracklet& tracklet, std::int64_t frame, const TrackerConfig& config);

struct TrackStats {
    std::int64_t frames_processed = 0;
    std::int64_t detections_processed = 0;
    std::int64_t tracklets_created = 0;
    std::int64_t reconnections = 0;
    double engine_seconds = 0.0;
};

struct TrackOutput {
    // Final assignment log. Identical to raw_log unless retroactive
    // correction is enabled, in which case every track id is canonical.
    AssignmentLog log;
    AssignmentLog raw_log;
    std::vector<MergeEvent> merge_events;
    MergeSet merges;
    TrackStats stats;
};

// Online tracking engine. Feed frames in strictly increasing order via
// step(); frames without detections may be skipped, staleness is derived
// from frame numbers rather than call counts.
class Tracker {
public:
    explicit Tracker(TrackerConfig config);

    // Processes one frame. Detections must carry this frame number and be
    // ordered by ascending det id.
    void step(std::int64_t frame, std::span<const DetectionRecord> detections);

    const std::vector<Tracklet>& tracklets() const noexcept { return tracklets_; }
    const AssignmentLog& raw_log() const noexcept { return log_; }
    const std::vector<MergeEvent>& merge_events() const noexcept { return merge_events_; }
    const MergeSet& merges() const noexcept { return merges_; }
    const TrackerConfig& config() const noexcept { return config_; }

    // Consumes the accumulated state into a TrackOutput, applying
    // retroactive correction when enabled.
    TrackOutput finish();

private:
    struct FrameUpdate {
        std::int64_t det_id;
        std::size_t tracklet_index;
        std::size_t log_index;
    };

    void update_tracklet(Tracklet& t, const DetectionRecord& det);
    void retire_stale(std::int64_t frame);
    void reconnect_updated(std::int64_t frame, std::vector<FrameUpdate>& updates);

    TrackerConfig config_;
    std::vector<Tracklet> tracklets_;
    AssignmentLog log_;
    std::vector<MergeEvent> merge_events_;
    MergeSet merges_;
    TrackStats stats_;
    std::int64_t next_id_ = 1;
    std::optional<std::int64_t> last_stepped_frame_;
};

// Runs the engine over a whole detection stream (sorted by frame, as the
// parser produces) and times the tracking loop.
TrackOutput track_stream(const std::vector<DetectionRecord>& stream, const TrackerConfig& config);

struct AblationStage {
    std::string name;
    TrackerConfig config;
};

// The standard five-stage ablation ladder, derived from a base config.
// Stages without tracklet management force a hold-last predictor and zero
// lost-frame budget; later stages inherit the base settings.
std::vector<AblationStage> ablation_stages(const TrackerConfig& base);

}  // namespace facetrack
