#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include <facetrack/io.hpp>
#include <facetrack/metrics.hpp>
#include <facetrack/tracker.hpp>

#include "common.hpp"

namespace facetrack::cli {

namespace {

std::string stage_slug(const std::string& name) {
    std::string slug;
    for (char c : name) {
        slug += c == '+' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return slug;
}

std::string fixed(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
    return buf;
}

}  // namespace

int run_ablate(const StreamOptions& stream, const TrackerOptions& tracker,
               const std::string& gt_path, double min_iou, const std::string& out_dir,
               const std::string& out_path) {
    std::ifstream gt_in = open_input(gt_path);
    const GroundTruth gt = parse_ground_truth(gt_in, gt_path);
    if (gt.empty()) {
        std::cerr << "facetrack: no ground truth detections in " << gt_path << '\n';
        return 3;
    }
    const std::vector<DetectionRecord> records = stream.load();
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
    }

    std::string table = "stage            frag      idsw      crs\n";
    for (const AblationStage& stage : ablation_stages(tracker.to_config())) {
        TrackOutput output = track_stream(records, stage.config);
        const MetricsReport report = evaluate_log(gt, output.log, min_iou);

        std::string row = stage.name;
        row.resize(17, ' ');
        table += row + fixed(report.frag(), 5) + "   " + fixed(report.idsw(), 5) + "   " +
                 fixed(report.crs(), 3) + "\n";

        if (!out_dir.empty()) {
            const std::filesystem::path base =
                std::filesystem::path(out_dir) / stage_slug(stage.name);
            std::ofstream assignments = open_output(base.string() + "_assignments.csv");
            write_assignments(output.log, assignments);
            std::ofstream metrics = open_output(base.string() + "_metrics.json");
            write_metrics_json(report, metrics);
        }
    }

    if (out_path.empty()) {
        std::cout << table;
    } else {
        std::ofstream out = open_output(out_path);
        out << table;
    }
    return 0;
}

}  // namespace facetrack::cli
