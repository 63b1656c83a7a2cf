// Acceptance gate for the tracking engine. One function per criterion, one
// PASS/FAIL line per criterion on stdout; the exit code is the number of
// failing criteria.
//
// Reference implementations come from tests/oracles and share no code with
// the library: pixel-grid counting for IOU, permutation search for the
// assignment solver, full-history rescans for the metrics. Every scenario
// is generated from seeds written here, so the whole gate is reproducible.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <facetrack/association.hpp>
#include <facetrack/embedding.hpp>
#include <facetrack/geometry.hpp>
#include <facetrack/io.hpp>
#include <facetrack/merge_set.hpp>
#include <facetrack/metrics.hpp>
#include <facetrack/synth.hpp>
#include <facetrack/tracker.hpp>

#include "oracles.hpp"
#include "proc.hpp"

namespace {

using namespace facetrack;

struct Outcome {
    bool pass = false;
    std::string detail;
};

// Every tracked log produced anywhere in this binary is kept so the
// correction-safety criterion can replay the merge sets over all of them.
struct TrackedCase {
    std::string label;
    GroundTruth gt;
    AssignmentLog raw;
    MergeSet merges;
};

std::vector<TrackedCase> g_cases;

TrackerConfig stage_config(const std::string& name) {
    for (const AblationStage& stage : ablation_stages(TrackerConfig{})) {
        if (stage.name == name) {
            return stage.config;
        }
    }
    throw std::logic_error("no ablation stage named " + name);
}

std::set<std::int64_t> distinct_track_ids(const AssignmentLog& log) {
    std::set<std::int64_t> ids;
    for (const AssignmentLog::Entry& entry : log.entries) {
        ids.insert(entry.track_id);
    }
    return ids;
}

std::string fmt(double v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

testsupport::RunResult cli(const std::string& args) {
    return testsupport::run_command(std::string(FACETRACK_CLI_PATH) + " " + args);
}

// ---------------------------------------------------------------------------
// 1. Solver optimality against exhaustive permutation search.

Outcome criterion_solver_exact() {
    std::mt19937_64 rng(42);
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < 500; ++i) {
        const std::size_t rows = 1 + static_cast<std::size_t>(rng() % 7);
        const std::size_t cols = 1 + static_cast<std::size_t>(rng() % 7);
        ScoreMatrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                // Dyadic scores keep every candidate total exactly
                // representable, so the comparison below can be bitwise.
                m.at(r, c) = static_cast<double>(rng() % 1025) / 1024.0;
            }
        }
        const Assignment fast = solve_assignment(m);
        const oracle::BruteAssignment brute = oracle::brute_force_assignment(m);
        if (fast.total_score != brute.total) {
            return {false, "total differs from brute force on matrix " + std::to_string(i) +
                               " (" + fmt(fast.total_score) + " vs " + fmt(brute.total) + ")"};
        }
        double recomputed = 0.0;
        std::set<std::int64_t> used;
        std::int64_t matched = 0;
        for (std::size_t r = 0; r < rows; ++r) {
            const std::int64_t c = fast.match[r];
            if (c < 0) {
                continue;
            }
            if (!used.insert(c).second) {
                return {false, "solver assigned a column twice on matrix " + std::to_string(i)};
            }
            recomputed += m.at(r, static_cast<std::size_t>(c));
            ++matched;
        }
        if (matched != static_cast<std::int64_t>(std::min(rows, cols))) {
            return {false, "solver matched " + std::to_string(matched) + " pairs on matrix " +
                               std::to_string(i) + ", expected min(rows, cols)"};
        }
        if (recomputed != fast.total_score) {
            return {false, "reported total does not equal the sum of its own matches on matrix " +
                               std::to_string(i)};
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 5.0) {
        return {false, "took " + fmt(secs) + "s, budget is 5s"};
    }
    return {true, "500 matrices up to 7x7 agree with permutation search exactly in " + fmt(secs) +
                      "s"};
}

// ---------------------------------------------------------------------------
// 2. IOU against the pixel-grid counting oracle.

Outcome criterion_iou_grid() {
    std::mt19937_64 rng(43);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const std::int64_t ax = static_cast<std::int64_t>(rng() % 41) - 20;
        const std::int64_t ay = static_cast<std::int64_t>(rng() % 41) - 20;
        const std::int64_t aw = 1 + static_cast<std::int64_t>(rng() % 25);
        const std::int64_t ah = 1 + static_cast<std::int64_t>(rng() % 25);
        // The second box lands near the first so overlapping pairs dominate
        // the sample instead of trivial zeros.
        const std::int64_t bx = ax - 12 + static_cast<std::int64_t>(rng() % 25);
        const std::int64_t by = ay - 12 + static_cast<std::int64_t>(rng() % 25);
        const std::int64_t bw = 1 + static_cast<std::int64_t>(rng() % 25);
        const std::int64_t bh = 1 + static_cast<std::int64_t>(rng() % 25);
        const double fast = iou(BBox(static_cast<double>(ax), static_cast<double>(ay),
                                     static_cast<double>(aw), static_cast<double>(ah)),
                                BBox(static_cast<double>(bx), static_cast<double>(by),
                                     static_cast<double>(bw), static_cast<double>(bh)));
        const double grid = oracle::pixel_grid_iou(ax, ay, aw, ah, bx, by, bw, bh);
        worst = std::max(worst, std::fabs(fast - grid));
    }
    if (worst > 1e-9) {
        return {false, "max deviation " + fmt(worst) + " exceeds 1e-9"};
    }
    return {true, "1000 integer box pairs, max |iou - grid count| = " + fmt(worst)};
}

// ---------------------------------------------------------------------------
// 3. Metrics against the exhaustive-scan scorer.

Outcome criterion_metrics_oracle() {
    const std::array<std::string, 3> presets = {"enrollable", "verifiable", "discarded"};
    const std::vector<AblationStage> stages = ablation_stages(TrackerConfig{});
    std::int64_t soft_seen = 0;
    std::int64_t hard_seen = 0;
    for (int i = 0; i < 100; ++i) {
        std::mt19937_64 rng(4000 + static_cast<std::uint64_t>(i));
        synth::ScenarioConfig config;
        config.seed = 1000 + static_cast<std::uint64_t>(i);
        config.embedding_dim = 8;
        config.noise_sigma = 0.01;
        config.gt_during_occlusion = (i % 2 == 0);
        const std::size_t people = 1 + static_cast<std::size_t>(rng() % 5);
        const std::int64_t frames = 10 + static_cast<std::int64_t>(rng() % 41);
        for (std::size_t j = 0; j < people; ++j) {
            synth::SynthIdentity id;
            id.name = "p" + std::to_string(j);
            id.enter = 0;
            id.exit = frames;
            // Lanes 200 apart never overlap, so per-frame IOU candidates are
            // exactly 0 or 1 and both matchers share a unique optimum.
            id.start = {static_cast<double>(rng() % 50),
                        200.0 * static_cast<double>(j + 1)};
            id.velocity = {static_cast<double>(rng() % 7) - 3.0, 0.0};
            id.size = {30.0 + 2.0 * static_cast<double>(j), 34.0 + 2.0 * static_cast<double>(j)};
            id.quality = presets[j % presets.size()];
            if (rng() % 2 == 0) {
                const std::int64_t begin = 2 + static_cast<std::int64_t>(rng() % 5);
                const std::int64_t len = 1 + static_cast<std::int64_t>(rng() % 12);
                const std::int64_t end = std::min(begin + len, frames);
                id.occlusions.push_back({begin, end});
                // A short discarded run after the gap delays reconnection,
                // which is what puts hard mismatches into the raw logs.
                if (id.quality == "enrollable" && end < frames) {
                    id.quality_segments.push_back({end, std::min(end + 2, frames), "discarded"});
                }
            }
            config.identities.push_back(id);
        }
        const synth::Scenario scene = synth::generate_scenario(config);
        const TrackerConfig tracker_config = stages[static_cast<std::size_t>(i) % stages.size()].config;
        const TrackOutput out = track_stream(scene.detections, tracker_config);

        const MetricsReport prod = evaluate_log(scene.gt, out.log);
        const std::vector<FrameMatching> ref_frames =
            oracle::exhaustive_match_frames(scene.gt, out.log, 0.5);
        const MetricsCounts ref = oracle::exhaustive_score(scene.gt, ref_frames);

        const MetricsCounts& got = prod.counts;
        if (got.gt_detections != ref.gt_detections || got.identities != ref.identities ||
            got.matched_detections != ref.matched_detections ||
            got.soft_mismatches != ref.soft_mismatches ||
            got.hard_mismatches != ref.hard_mismatches ||
            got.completion_counts != ref.completion_counts) {
            return {false, "counts differ from the exhaustive scorer on scenario " +
                               std::to_string(i)};
        }
        const double gd = static_cast<double>(ref.gt_detections);
        const double ids = static_cast<double>(ref.identities);
        double crs_ref = 0.0;
        for (int x = 1; x <= 100; ++x) {
            crs_ref += static_cast<double>(ref.completion_counts[x]) / ids;
        }
        crs_ref /= 100.0;
        if (std::fabs(prod.frag() - static_cast<double>(ref.soft_mismatches) / gd) > 1e-12 ||
            std::fabs(prod.idsw() - static_cast<double>(ref.hard_mismatches) / gd) > 1e-12 ||
            std::fabs(prod.crs() - crs_ref) > 1e-12) {
            return {false, "a ratio drifted past 1e-12 on scenario " + std::to_string(i)};
        }
        soft_seen += ref.soft_mismatches;
        hard_seen += ref.hard_mismatches;
        g_cases.push_back({"random scenario " + std::to_string(i), scene.gt, out.raw_log,
                           out.merges});
    }
    if (soft_seen == 0 || hard_seen == 0) {
        return {false, "corpus never exercised both mismatch kinds (soft " +
                           std::to_string(soft_seen) + ", hard " + std::to_string(hard_seen) + ")"};
    }
    return {true, "100 scenarios bit-identical on counts, ratios within 1e-12 (" +
                      std::to_string(soft_seen) + " soft and " + std::to_string(hard_seen) +
                      " hard mismatches exercised)"};
}

// ---------------------------------------------------------------------------
// 4. Re-entry rejoins under the full pipeline, never-enrollable stays split.

Outcome criterion_reentry_fixture() {
    const synth::Scenario reentry = synth::generate_scenario(synth::builtin_scenario("single_reentry"));
    const TrackOutput tm = track_stream(reentry.detections, stage_config("DA+TM"));
    const TrackOutput full = track_stream(reentry.detections, stage_config("DA+TM+FBTR+CM"));
    g_cases.push_back({"single_reentry at DA+TM", reentry.gt, tm.raw_log, tm.merges});
    g_cases.push_back({"single_reentry full", reentry.gt, full.raw_log, full.merges});
    const std::size_t tm_ids = distinct_track_ids(tm.log).size();
    const std::size_t full_ids = distinct_track_ids(full.log).size();

    const synth::Scenario gapped = synth::generate_scenario(synth::builtin_scenario("no_enroll_gap"));
    const TrackOutput gap_out = track_stream(gapped.detections, stage_config("DA+TM+FBTR+CM"));
    g_cases.push_back({"no_enroll_gap full", gapped.gt, gap_out.raw_log, gap_out.merges});
    const std::size_t gap_ids = distinct_track_ids(gap_out.log).size();

    if (tm_ids < 2) {
        return {false, "re-entry produced " + std::to_string(tm_ids) + " ids under DA+TM, expected >= 2"};
    }
    if (full_ids != 1) {
        return {false, "full pipeline left " + std::to_string(full_ids) + " canonical ids, expected 1"};
    }
    if (!gap_out.merge_events.empty()) {
        return {false, "a never-enrollable subject was reconnected (" +
                           std::to_string(gap_out.merge_events.size()) + " merges)"};
    }
    if (gap_ids < 2) {
        return {false, "never-enrollable subject did not fragment (ids=" + std::to_string(gap_ids) + ")"};
    }
    return {true, "re-entry: " + std::to_string(tm_ids) +
                      " ids under DA+TM, 1 canonical id with reconnection and correction; "
                      "never-enrollable subject stays split (" +
                      std::to_string(gap_ids) + " ids, 0 merges)"};
}

// ---------------------------------------------------------------------------
// 5. Ablation ladder direction on the re-entry and crowd scenes.

Outcome criterion_ablation_ladder() {
    const std::array<std::string, 4> ladder = {"DA", "DA+TM", "DA+TM+FBTR", "DA+TM+FBTR+CM"};
    std::string detail;
    double reconnect_gain = 0.0;
    for (const std::string& name : {std::string("double_reentry"), std::string("crowd")}) {
        const synth::Scenario scene = synth::generate_scenario(synth::builtin_scenario(name));
        std::array<double, 4> crs{};
        std::array<double, 4> frag{};
        for (std::size_t s = 0; s < ladder.size(); ++s) {
            const TrackOutput out = track_stream(scene.detections, stage_config(ladder[s]));
            const MetricsReport report = evaluate_log(scene.gt, out.log);
            crs[s] = report.crs();
            frag[s] = report.frag();
            g_cases.push_back({name + " at " + ladder[s], scene.gt, out.raw_log, out.merges});
        }
        for (std::size_t s = 1; s < ladder.size(); ++s) {
            if (!(crs[s] > crs[s - 1])) {
                return {false, name + ": CRS not strictly increasing at " + ladder[s] + " (" +
                                   fmt(crs[s - 1]) + " -> " + fmt(crs[s]) + ")"};
            }
        }
        if (!(frag[3] < frag[2])) {
            return {false, name + ": correction did not reduce Frag (" + fmt(frag[2]) + " -> " +
                               fmt(frag[3]) + ")"};
        }
        if (name == "double_reentry") {
            reconnect_gain = (crs[2] - crs[1]) / crs[1];
        }
        detail += name + " CRS " + fmt(crs[0]) + " / " + fmt(crs[1]) + " / " + fmt(crs[2]) +
                  " / " + fmt(crs[3]) + "; ";
    }
    // Direction is part of the strict-increase check above; the relative
    // size of the reconnection step is reported against its 10% target.
    detail += "reconnection CRS gain on the re-entry scene " + fmt(reconnect_gain * 100.0) +
              "% (target 10%, " + (reconnect_gain >= 0.10 ? "met" : "NOT met") + ")";
    return {true, detail};
}

// ---------------------------------------------------------------------------
// 6. Recovery rate over long gaps with well-separated identities.

Outcome criterion_long_gap_recovery() {
    const std::int64_t gap = 2 * TrackerConfig{}.max_lost_frames;
    constexpr int kPeople = 4;
    int fragmented_total = 0;
    int recovered_total = 0;
    double worst_within = 1.0;
    double worst_cross = 0.0;
    for (int s = 0; s < 50; ++s) {
        synth::ScenarioConfig config;
        config.seed = 7000 + static_cast<std::uint64_t>(s);
        config.embedding_dim = 64;
        config.noise_sigma = 0.01;
        for (int i = 0; i < kPeople; ++i) {
            synth::SynthIdentity id;
            id.name = "id" + std::to_string(i);
            id.enter = 0;
            id.exit = 120;
            id.start = {100.0, 200.0 * static_cast<double>(i + 1)};
            id.velocity = {2.0, 0.0};
            id.size = {40.0, 44.0};
            const std::int64_t begin = 20 + gap * i;
            id.occlusions.push_back({begin, begin + gap});
            config.identities.push_back(id);
        }
        const synth::Scenario scene = synth::generate_scenario(config);

        // Lane y positions are constant and exact (zero y velocity), so a
        // row's box top identifies its subject.
        std::map<double, int> lane_of;
        for (int i = 0; i < kPeople; ++i) {
            lane_of[200.0 * static_cast<double>(i + 1) - 22.0] = i;
        }

        std::array<std::vector<Embedding>, kPeople> templates;
        for (const DetectionRecord& det : scene.detections) {
            if (det.embedding) {
                templates[static_cast<std::size_t>(lane_of.at(det.box.y))].push_back(*det.embedding);
            }
        }
        std::array<Embedding, kPeople> means;
        for (int i = 0; i < kPeople; ++i) {
            means[i] = mean_embedding(templates[i]);
            for (const Embedding& e : templates[i]) {
                worst_within = std::min(worst_within, similarity(e, means[i]));
            }
        }
        for (int i = 0; i < kPeople; ++i) {
            for (int j = i + 1; j < kPeople; ++j) {
                worst_cross = std::max(worst_cross, std::fabs(similarity(means[i], means[j])));
            }
        }

        const TrackOutput tm = track_stream(scene.detections, stage_config("DA+TM"));
        const TrackOutput full = track_stream(scene.detections, stage_config("DA+TM+FBTR+CM"));
        g_cases.push_back({"gap scenario " + std::to_string(s) + " at DA+TM", scene.gt,
                           tm.raw_log, tm.merges});
        g_cases.push_back({"gap scenario " + std::to_string(s) + " full", scene.gt,
                           full.raw_log, full.merges});

        const auto ids_per_lane = [&](const AssignmentLog& log) {
            std::array<std::set<std::int64_t>, kPeople> ids;
            for (const AssignmentLog::Entry& entry : log.entries) {
                ids[static_cast<std::size_t>(lane_of.at(entry.box.y))].insert(entry.track_id);
            }
            return ids;
        };
        const auto tm_ids = ids_per_lane(tm.log);
        const auto full_ids = ids_per_lane(full.log);
        for (int i = 0; i < kPeople; ++i) {
            if (tm_ids[i].size() >= 2) {
                ++fragmented_total;
                if (full_ids[i].size() == 1) {
                    ++recovered_total;
                }
            }
        }
    }
    if (worst_within < 0.9) {
        return {false, "within-identity similarity dropped to " + fmt(worst_within)};
    }
    if (worst_cross > 0.5) {
        return {false, "cross-identity similarity reached " + fmt(worst_cross) +
                           ", separation under 60 degrees"};
    }
    if (fragmented_total != 50 * kPeople) {
        return {false, "gaps of " + std::to_string(gap) + " frames fragmented only " +
                           std::to_string(fragmented_total) + " of " +
                           std::to_string(50 * kPeople) + " identities"};
    }
    const double rate =
        static_cast<double>(recovered_total) / static_cast<double>(fragmented_total);
    if (rate < 0.95) {
        return {false, "recovered " + std::to_string(recovered_total) + " of " +
                           std::to_string(fragmented_total) + " (" + fmt(rate * 100.0) + "%)"};
    }
    return {true, "recovered " + std::to_string(recovered_total) + " of " +
                      std::to_string(fragmented_total) + " fragmented identities (" +
                      fmt(rate * 100.0) + "%), within-identity sim >= " + fmt(worst_within) +
                      ", cross-identity sim <= " + fmt(worst_cross)};
}

// ---------------------------------------------------------------------------
// 7. Correction safety over every log this binary produced.

Outcome criterion_correction_safety() {
    if (g_cases.empty()) {
        return {false, "no tracked cases were collected"};
    }
    std::int64_t soft_raw_total = 0;
    std::int64_t soft_corrected_total = 0;
    std::size_t rewritten = 0;
    for (const TrackedCase& c : g_cases) {
        const AssignmentLog corrected = c.merges.applied(c.raw);
        if (corrected.entries.size() != c.raw.entries.size()) {
            return {false, c.label + ": correction changed the number of detections"};
        }
        for (std::size_t i = 0; i < corrected.entries.size(); ++i) {
            AssignmentLog::Entry masked = corrected.entries[i];
            masked.track_id = c.raw.entries[i].track_id;
            if (!(masked == c.raw.entries[i])) {
                return {false, c.label + ": correction touched a field other than the track id"};
            }
        }
        if (!(c.merges.applied(corrected) == corrected)) {
            return {false, c.label + ": apply is not idempotent"};
        }
        const auto soft_of = [&c](const AssignmentLog& log) {
            return score_matching(c.gt, match_frames(c.gt, log, 0.5)).soft_mismatches;
        };
        const std::int64_t raw_soft = soft_of(c.raw);
        const std::int64_t corrected_soft = soft_of(corrected);
        if (corrected_soft > raw_soft) {
            return {false, c.label + ": correction raised soft mismatches from " +
                               std::to_string(raw_soft) + " to " + std::to_string(corrected_soft)};
        }
        soft_raw_total += raw_soft;
        soft_corrected_total += corrected_soft;
        if (!(corrected == c.raw)) {
            ++rewritten;
        }
    }
    return {true, std::to_string(g_cases.size()) + " logs checked, " + std::to_string(rewritten) +
                      " rewritten by merges, soft mismatches " + std::to_string(soft_raw_total) +
                      " -> " + std::to_string(soft_corrected_total) +
                      ", detections untouched, apply idempotent"};
}

// ---------------------------------------------------------------------------
// 8. Throughput at 13 detections per frame with 512-wide embeddings.

Outcome criterion_throughput() {
    synth::ScenarioConfig config;
    config.seed = 91;
    config.embedding_dim = 512;
    config.noise_sigma = 0.01;
    // Two waves of 13 subjects back to back: constant 13 detections per
    // frame for 360 frames.
    for (int i = 0; i < 26; ++i) {
        synth::SynthIdentity id;
        id.name = "w" + std::to_string(i);
        id.enter = i < 13 ? 0 : 180;
        id.exit = id.enter + 180;
        id.start = {100.0, 200.0 * static_cast<double>((i % 13) + 1)};
        id.velocity = {2.0, 0.0};
        id.size = {40.0, 44.0};
        config.identities.push_back(id);
    }
    const synth::Scenario scene = synth::generate_scenario(config);

    testsupport::TempDir dir;
    const std::string det_path = dir.file("detections.txt");
    {
        std::ofstream out(det_path, std::ios::binary);
        write_detections(scene.detections, out);
    }
    const std::string log_path = dir.file("log.csv");
    const std::string manifest_path = dir.file("manifest.json");
    const testsupport::RunResult run = cli("track --detections " + det_path + " --out " +
                                           log_path + " --manifest " + manifest_path);
    if (run.exit_code != 0) {
        return {false, "track exited with " + std::to_string(run.exit_code)};
    }
    const nlohmann::json manifest = nlohmann::json::parse(testsupport::read_file(manifest_path));
    const double dps = manifest.at("timing").at("detections_per_second").get<double>();
    const auto dets = manifest.at("stats").at("detections_processed").get<std::int64_t>();
    if (dets != static_cast<std::int64_t>(scene.detections.size())) {
        return {false, "manifest counted " + std::to_string(dets) + " detections, stream has " +
                           std::to_string(scene.detections.size())};
    }
    if (dps < 500.0) {
        return {false, "manifest reports " + fmt(dps) + " detections/s, floor is 500"};
    }
    return {true, fmt(dps) + " detections/s over " + std::to_string(dets) +
                      " detections at 13 per frame, dim 512, full pipeline (from the manifest)"};
}

// ---------------------------------------------------------------------------
// 9. Byte-identical reruns for every CLI command.

Outcome criterion_cli_determinism() {
    testsupport::TempDir dir;
    std::string why;

    // Runs a command twice and compares the named output files byte for byte.
    const auto rerun = [&why](const std::string& args,
                              const std::vector<std::string>& files) -> bool {
        const testsupport::RunResult first = cli(args);
        if (first.exit_code != 0) {
            why = "first run failed (" + args + ")";
            return false;
        }
        std::vector<std::string> snapshot;
        snapshot.reserve(files.size());
        for (const std::string& f : files) {
            snapshot.push_back(testsupport::read_file(f));
        }
        const testsupport::RunResult second = cli(args);
        if (second.exit_code != 0) {
            why = "second run failed (" + args + ")";
            return false;
        }
        for (std::size_t i = 0; i < files.size(); ++i) {
            if (testsupport::read_file(files[i]) != snapshot[i]) {
                why = "rerun changed " + files[i];
                return false;
            }
        }
        return true;
    };

    const std::string scene = dir.file("scene");
    if (!rerun("synth --scenario double_reentry --out-dir " + scene,
               {scene + "/detections.txt", scene + "/gt.csv", scene + "/scenario.json"})) {
        return {false, why};
    }
    const std::string reseeded = dir.file("reseeded");
    if (!rerun("synth --config " + scene + "/scenario.json --seed 5 --out-dir " + reseeded,
               {reseeded + "/detections.txt", reseeded + "/gt.csv", reseeded + "/scenario.json"})) {
        return {false, why};
    }

    // track: the log and event files must match bytewise; the manifest is
    // compared as JSON with the timing object removed, the only part that
    // legitimately varies between runs.
    const auto manifest_without_timing = [](const std::string& path, bool& had_timing) {
        nlohmann::json j = nlohmann::json::parse(testsupport::read_file(path));
        had_timing = j.contains("timing");
        j.erase("timing");
        return j;
    };
    const std::string log_path = dir.file("log.csv");
    const std::string events_path = dir.file("events.csv");
    const std::string manifest_path = dir.file("manifest.json");
    const std::string track_args = "track --detections " + scene + "/detections.txt --out " +
                                   log_path + " --events-out " + events_path + " --manifest " +
                                   manifest_path;
    const std::string variant_args = track_args +
                                     " --predictor hold --tmax 3 --no-cm --iou-thresh 0.3 --pool-cap 8";
    for (const std::string& args : {track_args, variant_args}) {
        const testsupport::RunResult first = cli(args);
        if (first.exit_code != 0) {
            return {false, "first run failed (" + args + ")"};
        }
        const std::string log1 = testsupport::read_file(log_path);
        const std::string events1 = testsupport::read_file(events_path);
        bool had_timing = false;
        const nlohmann::json manifest1 = manifest_without_timing(manifest_path, had_timing);
        if (!had_timing) {
            return {false, "manifest has no timing object"};
        }
        const testsupport::RunResult second = cli(args);
        if (second.exit_code != 0) {
            return {false, "second run failed (" + args + ")"};
        }
        if (testsupport::read_file(log_path) != log1 ||
            testsupport::read_file(events_path) != events1) {
            return {false, "track rerun changed the log or event file"};
        }
        if (manifest_without_timing(manifest_path, had_timing) != manifest1) {
            return {false, "track rerun changed the manifest outside timing"};
        }
    }

    const std::string report_txt = dir.file("report.txt");
    const std::string report_json = dir.file("report.json");
    const std::string crp_csv = dir.file("crp.csv");
    const std::string crp_svg = dir.file("crp.svg");
    const std::string eval_base =
        "evaluate --assignments " + log_path + " --gt " + scene + "/gt.csv";
    if (!rerun(eval_base + " --out " + report_txt + " --crp-out " + crp_csv + " --crp-svg " +
                   crp_svg,
               {report_txt, crp_csv, crp_svg})) {
        return {false, why};
    }
    if (!rerun(eval_base + " --report-format json --out " + report_json, {report_json})) {
        return {false, why};
    }

    const std::string table_path = dir.file("table.txt");
    const std::string stage_dir = dir.file("stages");
    const std::string ablate_args = "ablate --detections " + scene + "/detections.txt --gt " +
                                    scene + "/gt.csv --out " + table_path + " --out-dir " +
                                    stage_dir;
    const testsupport::RunResult seed_run = cli(ablate_args);
    if (seed_run.exit_code != 0) {
        return {false, "ablate failed"};
    }
    std::vector<std::string> stage_files{table_path};
    for (const auto& entry : std::filesystem::directory_iterator(stage_dir)) {
        if (entry.is_regular_file()) {
            stage_files.push_back(entry.path().string());
        }
    }
    std::sort(stage_files.begin(), stage_files.end());
    if (stage_files.size() != 11) {
        return {false, "expected the table plus 10 stage files, found " +
                           std::to_string(stage_files.size())};
    }
    if (!rerun(ablate_args, stage_files)) {
        return {false, why};
    }

    return {true, "synth, track, evaluate and ablate reruns byte-identical "
                  "(manifest compared without its timing object)"};
}

std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        const char* name;
        Outcome (*run)();
    };
    const std::vector<Criterion> criteria = {
        {1, "assignment solver optimality", criterion_solver_exact},
        {2, "iou pixel-grid oracle", criterion_iou_grid},
        {3, "metrics exhaustive oracle", criterion_metrics_oracle},
        {4, "re-entry reconnection fixture", criterion_reentry_fixture},
        {5, "ablation ladder direction", criterion_ablation_ladder},
        {6, "long-gap recovery rate", criterion_long_gap_recovery},
        {7, "correction safety", criterion_correction_safety},
        {8, "throughput envelope", criterion_throughput},
        {9, "CLI determinism", criterion_cli_determinism},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("unhandled exception: ") + e.what()};
        }
        std::cout << (outcome.pass ? "[PASS]" : "[FAIL]") << " criterion " << c.number << ", "
                  << c.name << ": " << one_line(outcome.detail) << '\n';
        if (!outcome.pass) {
            ++failures;
        }
    }
    std::cout << "acceptance: " << (criteria.size() - static_cast<std::size_t>(failures)) << " of "
              << criteria.size() << " criteria passed" << std::endl;
    return failures;
}
