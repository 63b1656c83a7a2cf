#include "common.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <facetrack/errors.hpp>
#include <facetrack/io.hpp>

namespace facetrack::cli {

void TrackerOptions::attach(CLI::App& app) {
    app.add_option("--iou-thresh", iou_thresh,
                   "Minimum IOU for a tracklet/detection match, exclusive")
        ->capture_default_str();
    app.add_option("--fbtr-thresh", fbtr_thresh,
                   "Minimum cosine similarity for a reconnection, inclusive")
        ->capture_default_str();
    app.add_option("--tmax", tmax, "Consecutive lost frames a tracklet survives")
        ->capture_default_str();
    app.add_option("--predictor", predictor, "Box predictor for lost tracklets")
        ->check(CLI::IsMember({"hold", "cv"}))
        ->capture_default_str();
    app.add_option("--cv-alpha", cv_alpha, "Weight of the newest velocity observation")
        ->capture_default_str();
    app.add_flag("--no-fbtr", no_fbtr, "Disable face-based reconnection");
    app.add_flag("--no-cm", no_cm, "Disable retroactive id correction");
    app.add_option("--pool-cap", pool_cap, "Template pool capacity per tier")
        ->capture_default_str();
    app.add_option("--enroll-conf", enroll_conf, "Enrolment confidence gate, exclusive")
        ->capture_default_str();
    app.add_option("--enroll-angle", enroll_angle, "Enrolment max |angle| gate, inclusive")
        ->capture_default_str();
    app.add_option("--enroll-blur", enroll_blur, "Enrolment blur gate, exclusive")
        ->capture_default_str();
    app.add_option("--verify-conf", verify_conf, "Verification confidence gate, exclusive")
        ->capture_default_str();
    app.add_option("--verify-angle", verify_angle, "Verification max |angle| gate, inclusive")
        ->capture_default_str();
    app.add_option("--verify-blur", verify_blur, "Verification blur gate, inclusive")
        ->capture_default_str();
}

TrackerConfig TrackerOptions::to_config() const {
    TrackerConfig cfg;
    cfg.iou_threshold = iou_thresh;
    cfg.reconnect_threshold = fbtr_thresh;
    cfg.max_lost_frames = tmax;
    cfg.predictor = predictor == "hold" ? PredictorKind::HoldLast
                                        : PredictorKind::ConstantVelocity;
    cfg.velocity_smoothing = cv_alpha;
    cfg.enable_reconnect = !no_fbtr;
    cfg.enable_correction = !no_cm;
    cfg.pool_capacity = pool_cap;
    cfg.gates.enroll = {enroll_conf, enroll_angle, enroll_blur};
    cfg.gates.verify = {verify_conf, verify_angle, verify_blur};
    cfg.validate();
    return cfg;
}

void StreamOptions::attach(CLI::App& app) {
    app.add_option("--detections", detections_path, "Detection stream to track")->required();
    app.add_option("--embedding-dim", embedding_dim,
                   "Expected embedding dimension, 0 infers from the stream")
        ->capture_default_str();
}

std::vector<DetectionRecord> StreamOptions::load() const {
    std::ifstream in = open_input(detections_path);
    return parse_detections(in, detections_path, embedding_dim);
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open input file: " + path);
    }
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw ValidationError("cannot open output file: " + path);
    }
    return out;
}

void write_manifest(const std::string& path, const std::string& command,
                    const TrackerConfig& config, const TrackArtifacts& artifacts,
                    const TrackStats& stats) {
    nlohmann::ordered_json j;
    j["tool"] = "facetrack";
    j["version"] = FACETRACK_VERSION;
    j["command"] = command;
    j["inputs"]["detections"] = artifacts.detections_path;
    j["outputs"]["assignments"] = artifacts.assignments_path;
    if (!artifacts.events_path.empty()) {
        j["outputs"]["merge_events"] = artifacts.events_path;
    }
    j["config"]["iou_threshold"] = config.iou_threshold;
    j["config"]["max_lost_frames"] = config.max_lost_frames;
    j["config"]["predictor"] =
        config.predictor == PredictorKind::HoldLast ? "hold" : "cv";
    j["config"]["velocity_smoothing"] = config.velocity_smoothing;
    j["config"]["fbtr"] = config.enable_reconnect;
    j["config"]["correction"] = config.enable_correction;
    j["config"]["fbtr_threshold"] = config.reconnect_threshold;
    j["config"]["pool_capacity"] = config.pool_capacity;
    j["config"]["gates"]["enroll"] = {config.gates.enroll.min_confidence,
                                      config.gates.enroll.max_abs_angle,
                                      config.gates.enroll.min_blur};
    j["config"]["gates"]["verify"] = {config.gates.verify.min_confidence,
                                      config.gates.verify.max_abs_angle,
                                      config.gates.verify.min_blur};
    j["stats"]["frames_processed"] = stats.frames_processed;
    j["stats"]["detections_processed"] = stats.detections_processed;
    j["stats"]["tracklets_created"] = stats.tracklets_created;
    j["stats"]["reconnections"] = stats.reconnections;
    // Engine-only timing: parsing and file writes are excluded.
    j["timing"]["engine_seconds"] = stats.engine_seconds;
    j["timing"]["frames_per_second"] =
        stats.engine_seconds > 0.0
            ? static_cast<double>(stats.frames_processed) / stats.engine_seconds
            : 0.0;
    j["timing"]["detections_per_second"] =
        stats.engine_seconds > 0.0
            ? static_cast<double>(stats.detections_processed) / stats.engine_seconds
            : 0.0;

    std::ofstream out = open_output(path);
    out << j.dump(2) << '\n';
}

}  // namespace facetrack::cli
