#include <iostream>
#include <vector>

#include <facetrack/errors.hpp>
#include <facetrack/io.hpp>
#include <facetrack/metrics.hpp>

#include "common.hpp"

namespace facetrack::cli {

int run_evaluate(const std::vector<std::string>& assignments_paths,
                 const std::vector<std::string>& gt_paths, double min_iou,
                 const std::string& format, const std::string& out_path,
                 const std::string& crp_csv_path, const std::string& crp_svg_path) {
    if (assignments_paths.size() != gt_paths.size()) {
        throw ValidationError("--assignments and --gt must be given the same number of times");
    }

    std::vector<MetricsReport> reports;
    for (std::size_t i = 0; i < assignments_paths.size(); ++i) {
        std::ifstream gt_in = open_input(gt_paths[i]);
        const GroundTruth gt = parse_ground_truth(gt_in, gt_paths[i]);
        if (gt.empty()) {
            std::cerr << "facetrack: no ground truth detections in " << gt_paths[i] << '\n';
            return 3;
        }
        std::ifstream log_in = open_input(assignments_paths[i]);
        const AssignmentLog log = parse_assignments(log_in, assignments_paths[i]);
        reports.push_back(evaluate_log(gt, log, min_iou));
    }

    const MetricsReport report =
        aggregate_reports(std::span<const MetricsReport>(reports.data(), reports.size()));

    const auto emit = [&](std::ostream& out) {
        if (format == "json") {
            write_metrics_json(report, out);
        } else {
            write_metrics_text(report, out);
        }
    };
    if (out_path.empty()) {
        emit(std::cout);
    } else {
        std::ofstream out = open_output(out_path);
        emit(out);
    }

    if (!crp_csv_path.empty()) {
        std::ofstream out = open_output(crp_csv_path);
        write_crp_csv(report, out);
    }
    if (!crp_svg_path.empty()) {
        std::ofstream out = open_output(crp_svg_path);
        write_crp_svg(report, out);
    }
    return 0;
}

}  // namespace facetrack::cli
