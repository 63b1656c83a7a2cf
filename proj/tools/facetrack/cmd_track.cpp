#include <iostream>

#include <facetrack/io.hpp>
#include <facetrack/tracker.hpp>

#include "common.hpp"

namespace facetrack::cli {

int run_track(const StreamOptions& stream, const TrackerOptions& tracker,
              const std::string& out_path, const std::string& events_path,
              const std::string& manifest_path) {
    const TrackerConfig config = tracker.to_config();
    const std::vector<DetectionRecord> records = stream.load();

    TrackOutput output = track_stream(records, config);

    {
        std::ofstream out = open_output(out_path);
        write_assignments(output.log, out);
    }
    if (!events_path.empty()) {
        std::ofstream out = open_output(events_path);
        write_merge_events(output.merge_events, out);
    }
    if (!manifest_path.empty()) {
        write_manifest(manifest_path, "track", config,
                       {stream.detections_path, out_path, events_path}, output.stats);
    }

    std::cout << "tracked " << output.stats.detections_processed << " detections into "
              << output.stats.tracklets_created << " tracklets ("
              << output.stats.reconnections << " reconnections)\n";
    return 0;
}

}  // namespace facetrack::cli
