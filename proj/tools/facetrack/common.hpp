#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <facetrack/detection.hpp>
#include <facetrack/tracker.hpp>

namespace CLI {
class App;
}

namespace facetrack::cli {

// Tracker knobs shared by the track and ablate commands.
struct TrackerOptions {
    double iou_thresh = 0.25;
    double fbtr_thresh = 0.7;
    std::int64_t tmax = 10;
    std::string predictor = "cv";
    double cv_alpha = 0.5;
    bool no_fbtr = false;
    bool no_cm = false;
    std::size_t pool_cap = 64;
    double enroll_conf = 0.95;
    double enroll_angle = 25.0;
    double enroll_blur = 0.9;
    double verify_conf = 0.8;
    double verify_angle = 60.0;
    double verify_blur = 0.75;

    void attach(CLI::App& app);
    TrackerConfig to_config() const;
};

struct StreamOptions {
    std::string detections_path;
    std::size_t embedding_dim = 0;  // 0 infers from the stream

    void attach(CLI::App& app);
    std::vector<DetectionRecord> load() const;
};

std::ifstream open_input(const std::string& path);
std::ofstream open_output(const std::string& path);

struct TrackArtifacts {
    std::string detections_path;
    std::string assignments_path;
    std::string events_path;
};

// Everything needed to replay a run: config, inputs, outputs, throughput.
// Timing varies between runs, so the manifest is not a determinism surface.
void write_manifest(const std::string& path, const std::string& command,
                    const TrackerConfig& config, const TrackArtifacts& artifacts,
                    const TrackStats& stats);

int run_track(const StreamOptions& stream, const TrackerOptions& tracker,
              const std::string& out_path, const std::string& events_path,
              const std::string& manifest_path);

int run_evaluate(const std::vector<std::string>& assignments_paths,
                 const std::vector<std::string>& gt_paths, double min_iou,
                 const std::string& format, const std::string& out_path,
                 const std::string& crp_csv_path, const std::string& crp_svg_path);

int run_ablate(const StreamOptions& stream, const TrackerOptions& tracker,
               const std::string& gt_path, double min_iou, const std::string& out_dir,
               const std::string& out_path);

int run_synth(const std::string& scenario, const std::string& config_path, bool list,
              bool has_seed, std::uint64_t seed, const std::string& out_dir);

}  // namespace facetrack::cli
