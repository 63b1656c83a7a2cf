#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "facetrack/embedding.hpp"
#include "facetrack/geometry.hpp"
#include "facetrack/quality.hpp"

namespace facetrack {

/// One detected face in one frame of a detection stream. The embedding is
/// optional; reconnection treats records without one as discarded faces.
struct DetectionRecord {
    std::int64_t frame = 0;
    std::int64_t det_id = 0;
    BBox box;
    QualityAttrs quality;
    std::optional<Embedding> embedding;
};

/// Per-frame annotated boxes with opaque identity labels. At most one box
/// per (frame, identity).
struct GroundTruth {
    struct Entry {
        std::int64_t frame = 0;
        std::string identity;
        BBox box;
    };
    std::vector<Entry> entries;

    bool empty() const noexcept { return entries.empty(); }
};

/// Materialized tracker output: one entry per detection, carrying the track
/// it was assigned to. Within a frame both det_id and track_id are unique.
struct AssignmentLog {
    struct Entry {
        std::int64_t frame = 0;
        std::int64_t track_id = 0;
        BBox box;
        std::int64_t det_id = 0;

        bool operator==(const Entry& other) const noexcept = default;
    };
    std::vector<Entry> entries;

    bool empty() const noexcept { return entries.empty(); }
    bool operator==(const AssignmentLog& other) const noexcept = default;
};

/// Emitted when reconnection absorbs one tracklet into another at a frame.
struct MergeEvent {
    std::int64_t frame = 0;
    std::int64_t absorbed_id = 0;
    std::int64_t surviving_id = 0;

    bool operator==(const MergeEvent& other) const noexcept = default;
};

}  // namespace facetrack
