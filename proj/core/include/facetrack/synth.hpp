#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "facetrack/detection.hpp"
#include "facetrack/embedding.hpp"
#include "facetrack/quality.hpp"

namespace facetrack::synth {

// Deterministic standard-normal source. Box-Muller over a fixed-width
// engine, so a seed reproduces the exact byte stream on every run;
// std::normal_distribution is not pinned down that way.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

    double next();
    Embedding next_vector(std::size_t n);

private:
    double next_unit();  // uniform in (0, 1]

    std::mt19937_64 rng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Face quality presets used by scenario scripts. "enrollable" passes the
// enrolment gates, "verifiable" only the verification gates, "discarded"
// neither.
QualityAttrs quality_preset(const std::string& name);

struct QualitySegment {
    std::int64_t begin = 0;  // inclusive
    std::int64_t end = 0;    // exclusive
    std::string preset;
};

struct SynthIdentity {
    std::string name;
    std::int64_t enter = 0;  // first frame on screen
    std::int64_t exit = 0;   // first frame off screen
    std::array<double, 2> start{0.0, 0.0};     // center at enter
    std::array<double, 2> velocity{0.0, 0.0};  // center movement per frame
    std::array<double, 2> size{40.0, 44.0};    // box width, height
    // Frames in [begin, end) where the subject is hidden: no detection,
    // and no ground truth row unless gt_during_occlusion is set.
    std::vector<std::array<std::int64_t, 2>> occlusions;
    std::string quality = "enrollable";  // default preset
    std::vector<QualitySegment> quality_segments;
};

struct ScenarioConfig {
    std::uint64_t seed = 1;
    std::size_t embedding_dim = 64;
    double noise_sigma = 0.01;
    bool gt_during_occlusion = false;
    std::vector<SynthIdentity> identities;

    void validate() const;
};

struct Scenario {
    std::vector<DetectionRecord> detections;
    GroundTruth gt;
};

// Scripted geometry plus seeded embedding noise. Identity base vectors are
// mutually orthogonal unit vectors, so the identity count may not exceed
// the embedding dimension. A fixed seed reproduces the output exactly.
Scenario generate_scenario(const ScenarioConfig& config);

ScenarioConfig read_scenario_config(std::istream& in, const std::string& source);
void write_scenario_config(const ScenarioConfig& config, std::ostream& out);

// Built-in scripted scenes covering the interesting tracking shapes:
// clean runs, short dropouts, long re-entries, identity cross-overs and
// subjects that never yield an enrollable face.
std::vector<std::string> builtin_scenario_names();
ScenarioConfig builtin_scenario(const std::string& name);

}  // namespace facetrack::synth
