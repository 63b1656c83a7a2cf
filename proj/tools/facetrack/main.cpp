#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <facetrack/errors.hpp>

#include "common.hpp"

namespace {

// Exit codes: 0 success, 1 parse or validation failure, 2 bad configuration,
// 3 evaluation against empty ground truth.
constexpr int kParseFailure = 1;
constexpr int kConfigFailure = 2;

}  // namespace

int main(int argc, char** argv) {
    using namespace facetrack;
    using namespace facetrack::cli;

    CLI::App app{"Long-term multi-face tracking over detection streams"};
    app.require_subcommand(1);
    app.set_version_flag("--version", FACETRACK_VERSION);

    // track
    auto* track = app.add_subcommand("track", "Run the tracker over a detection stream");
    StreamOptions track_stream_opts;
    TrackerOptions track_tracker_opts;
    std::string track_out;
    std::string track_events_out;
    std::string track_manifest;
    track_stream_opts.attach(*track);
    track_tracker_opts.attach(*track);
    track->add_option("--out", track_out, "Assignment log to write")->required();
    track->add_option("--events-out", track_events_out, "Merge event log to write");
    track->add_option("--manifest", track_manifest, "Run manifest to write");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "Score assignment logs against ground truth");
    std::vector<std::string> eval_assignments;
    std::vector<std::string> eval_gt;
    double eval_min_iou = 0.5;
    std::string eval_format = "text";
    std::string eval_out;
    std::string eval_crp_csv;
    std::string eval_crp_svg;
    evaluate->add_option("--assignments", eval_assignments, "Assignment log (repeatable)")
        ->required();
    evaluate->add_option("--gt", eval_gt, "Ground truth for the matching log (repeatable)")
        ->required();
    evaluate->add_option("--min-iou", eval_min_iou, "Minimum IOU for a hit, inclusive")
        ->capture_default_str();
    evaluate->add_option("--report-format", eval_format, "Report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    evaluate->add_option("--out", eval_out, "Report file, stdout when omitted");
    evaluate->add_option("--crp-out", eval_crp_csv, "Completion rate profile CSV to write");
    evaluate->add_option("--crp-svg", eval_crp_svg, "Completion rate profile SVG to write");

    // ablate
    auto* ablate = app.add_subcommand("ablate", "Track and score the five-stage ladder");
    StreamOptions ablate_stream_opts;
    TrackerOptions ablate_tracker_opts;
    std::string ablate_gt;
    double ablate_min_iou = 0.5;
    std::string ablate_out_dir;
    std::string ablate_out;
    ablate_stream_opts.attach(*ablate);
    ablate_tracker_opts.attach(*ablate);
    ablate->add_option("--gt", ablate_gt, "Ground truth to score against")->required();
    ablate->add_option("--min-iou", ablate_min_iou, "Minimum IOU for a hit, inclusive")
        ->capture_default_str();
    ablate->add_option("--out-dir", ablate_out_dir, "Directory for per-stage outputs");
    ablate->add_option("--out", ablate_out, "Table file, stdout when omitted");

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic scenario");
    std::string synth_scenario;
    std::string synth_config;
    bool synth_list = false;
    std::uint64_t synth_seed = 0;
    std::string synth_out_dir;
    synth_cmd->add_option("--scenario", synth_scenario, "Built-in scenario name");
    synth_cmd->add_option("--config", synth_config, "Scenario config JSON");
    synth_cmd->add_flag("--list", synth_list, "List built-in scenarios and exit");
    auto* seed_opt = synth_cmd->add_option("--seed", synth_seed, "Override the scenario seed");
    synth_cmd->add_option("--out-dir", synth_out_dir, "Directory for the generated files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kParseFailure;
    }

    try {
        if (track->parsed()) {
            return run_track(track_stream_opts, track_tracker_opts, track_out, track_events_out,
                             track_manifest);
        }
        if (evaluate->parsed()) {
            return run_evaluate(eval_assignments, eval_gt, eval_min_iou, eval_format, eval_out,
                                eval_crp_csv, eval_crp_svg);
        }
        if (ablate->parsed()) {
            return run_ablate(ablate_stream_opts, ablate_tracker_opts, ablate_gt, ablate_min_iou,
                              ablate_out_dir, ablate_out);
        }
        if (synth_cmd->parsed()) {
            return run_synth(synth_scenario, synth_config, synth_list, seed_opt->count() > 0,
                             synth_seed, synth_out_dir);
        }
    } catch (const ConfigError& e) {
        std::cerr << "facetrack: " << e.what() << '\n';
        return kConfigFailure;
    } catch (const std::exception& e) {
        std::cerr << "facetrack: " << e.what() << '\n';
        return kParseFailure;
    }
    return 0;
}
