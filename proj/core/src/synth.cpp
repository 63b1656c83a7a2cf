#include "facetrack/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "facetrack/errors.hpp"
#include "facetrack/geometry.hpp"

namespace facetrack::synth {

double GaussianSource::next_unit() {
    // (x >> 11) has 53 random bits; +1 keeps the value strictly positive.
    const std::uint64_t x = rng_();
    return static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
}

double GaussianSource::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

Embedding GaussianSource::next_vector(std::size_t n) {
    Embedding v(n);
    for (double& x : v) {
        x = next();
    }
    return v;
}

QualityAttrs quality_preset(const std::string& name) {
    if (name == "enrollable") {
        return {0.99, 2.0, -1.5, 0.5, 0.97};
    }
    if (name == "verifiable") {
        return {0.90, 40.0, 5.0, 2.0, 0.85};
    }
    if (name == "discarded") {
        return {0.50, 80.0, 10.0, 5.0, 0.40};
    }
    throw ConfigError("unknown quality preset '" + name + "'");
}

void ScenarioConfig::validate() const {
    if (embedding_dim == 0) {
        throw ConfigError("embedding_dim must be positive");
    }
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
        throw ConfigError("noise_sigma must be finite and non-negative");
    }
    if (identities.size() > embedding_dim) {
        throw ConfigError("identity count exceeds embedding_dim; orthogonal bases need "
                          "one dimension per identity");
    }
    std::unordered_set<std::string> names;
    for (const SynthIdentity& id : identities) {
        if (id.name.empty()) {
            throw ConfigError("identity name must not be empty");
        }
        if (!names.insert(id.name).second) {
            throw ConfigError("duplicate identity name '" + id.name + "'");
        }
        if (id.enter < 0 || id.exit <= id.enter) {
            throw ConfigError("identity '" + id.name + "': need 0 <= enter < exit");
        }
        if (!(id.size[0] > 0.0 && id.size[1] > 0.0)) {
            throw ConfigError("identity '" + id.name + "': box size must be positive");
        }
        for (const auto& occ : id.occlusions) {
            if (occ[0] >= occ[1]) {
                throw ConfigError("identity '" + id.name + "': occlusion range is empty");
            }
        }
        quality_preset(id.quality);
        for (const QualitySegment& seg : id.quality_segments) {
            if (seg.begin >= seg.end) {
                throw ConfigError("identity '" + id.name + "': quality segment is empty");
            }
            quality_preset(seg.preset);
        }
    }
}

namespace {

bool occluded_at(const SynthIdentity& id, std::int64_t frame) {
    for (const auto& occ : id.occlusions) {
        if (frame >= occ[0] && frame < occ[1]) {
            return true;
        }
    }
    return false;
}

const std::string& preset_at(const SynthIdentity& id, std::int64_t frame) {
    for (const QualitySegment& seg : id.quality_segments) {
        if (frame >= seg.begin && frame < seg.end) {
            return seg.preset;
        }
    }
    return id.quality;
}

std::vector<Embedding> orthonormal_bases(const ScenarioConfig& config, GaussianSource& gauss) {
    std::vector<Embedding> bases;
    bases.reserve(config.identities.size());
    for (std::size_t i = 0; i < config.identities.size(); ++i) {
        Embedding base;
        bool ok = false;
        for (int attempt = 0; attempt < 64 && !ok; ++attempt) {
            base = gauss.next_vector(config.embedding_dim);
            for (const Embedding& prev : bases) {
                double dot = 0.0;
                for (std::size_t d = 0; d < base.size(); ++d) {
                    dot += base[d] * prev[d];
                }
                for (std::size_t d = 0; d < base.size(); ++d) {
                    base[d] -= dot * prev[d];
                }
            }
            const double norm = l2_norm(base);
            if (norm > 1e-6) {
                for (double& x : base) {
                    x /= norm;
                }
                ok = true;
            }
        }
        if (!ok) {
            throw ConfigError("could not build an orthogonal base for identity '" +
                              config.identities[i].name + "'");
        }
        bases.push_back(std::move(base));
    }
    return bases;
}

}  // namespace

Scenario generate_scenario(const ScenarioConfig& config) {
    config.validate();
    Scenario scene;
    if (config.identities.empty()) {
        return scene;
    }

    GaussianSource gauss(config.seed);
    const std::vector<Embedding> bases = orthonormal_bases(config, gauss);

    std::int64_t first = std::numeric_limits<std::int64_t>::max();
    std::int64_t last = std::numeric_limits<std::int64_t>::min();
    for (const SynthIdentity& id : config.identities) {
        first = std::min(first, id.enter);
        last = std::max(last, id.exit);
    }

    for (std::int64_t frame = first; frame < last; ++frame) {
        std::int64_t det_id = 0;
        for (std::size_t i = 0; i < config.identities.size(); ++i) {
            const SynthIdentity& id = config.identities[i];
            if (frame < id.enter || frame >= id.exit) {
                continue;
            }
            const bool hidden = occluded_at(id, frame);
            const double t = static_cast<double>(frame - id.enter);
            const double cx = id.start[0] + id.velocity[0] * t;
            const double cy = id.start[1] + id.velocity[1] * t;
            const BBox box(cx - id.size[0] / 2.0, cy - id.size[1] / 2.0, id.size[0], id.size[1]);

            if (!hidden || config.gt_during_occlusion) {
                scene.gt.entries.push_back({frame, id.name, box});
            }
            if (hidden) {
                continue;
            }

            DetectionRecord det;
            det.frame = frame;
            det.det_id = det_id++;
            det.box = box;
            det.quality = quality_preset(preset_at(id, frame));
            Embedding emb = bases[i];
            for (double& x : emb) {
                x += config.noise_sigma * gauss.next();
            }
            det.embedding = std::move(emb);
            scene.detections.push_back(std::move(det));
        }
    }
    return scene;
}

std::vector<std::string> builtin_scenario_names() {
    return {"single_reentry", "no_enroll_gap", "double_reentry", "crossover", "crowd"};
}

ScenarioConfig builtin_scenario(const std::string& name) {
    ScenarioConfig cfg;
    if (name == "single_reentry") {
        // One subject, one occlusion longer than any lost-frame budget, a
        // low-quality run right after re-entry, decent faces afterwards.
        cfg.seed = 7;
        SynthIdentity p;
        p.name = "p0";
        p.enter = 0;
        p.exit = 80;
        p.start = {100.0, 300.0};
        p.velocity = {3.0, 0.0};
        p.size = {48.0, 52.0};
        p.occlusions = {{25, 45}};
        p.quality_segments = {{45, 53, "discarded"}, {53, 80, "verifiable"}};
        cfg.identities = {p};
        return cfg;
    }
    if (name == "no_enroll_gap") {
        // The pre-gap track never yields an enrollable face, so nothing can
        // claim the post-gap track.
        cfg.seed = 11;
        SynthIdentity p;
        p.name = "p0";
        p.enter = 0;
        p.exit = 60;
        p.start = {200.0, 240.0};
        p.velocity = {2.0, 0.0};
        p.size = {44.0, 48.0};
        p.occlusions = {{20, 40}};
        p.quality = "verifiable";
        cfg.identities = {p};
        return cfg;
    }
    if (name == "double_reentry") {
        cfg.seed = 17;
        SynthIdentity a;
        a.name = "a";
        a.enter = 0;
        a.exit = 200;
        a.start = {80.0, 100.0};
        a.velocity = {2.0, 0.0};
        a.size = {46.0, 50.0};

        SynthIdentity b;
        b.name = "b";
        b.enter = 0;
        b.exit = 200;
        b.start = {1500.0, 220.0};
        b.velocity = {-2.0, 0.0};
        b.size = {48.0, 52.0};
        b.occlusions = {{40, 70}, {120, 150}};
        b.quality_segments = {{70, 74, "discarded"}, {150, 154, "discarded"}};

        SynthIdentity c;
        c.name = "c";
        c.enter = 0;
        c.exit = 200;
        c.start = {120.0, 340.0};
        c.velocity = {1.5, 0.0};
        c.size = {50.0, 54.0};
        c.occlusions = {{55, 85}, {130, 160}};
        c.quality_segments = {{85, 89, "discarded"}, {160, 164, "discarded"}};

        SynthIdentity d;
        d.name = "d";
        d.enter = 0;
        d.exit = 200;
        d.start = {1400.0, 460.0};
        d.velocity = {-2.5, 0.0};
        d.size = {52.0, 56.0};
        d.occlusions = {{30, 32}, {90, 93}, {140, 142}};

        cfg.identities = {a, b, c, d};
        return cfg;
    }
    if (name == "crossover") {
        // Two subjects share a lane and swap sides while both are hidden.
        // A held box grabs the wrong subject on re-entry; extrapolation
        // carries each track through the cross.
        cfg.seed = 23;
        SynthIdentity a;
        a.name = "a";
        a.enter = 0;
        a.exit = 100;
        a.start = {100.0, 250.0};
        a.velocity = {6.0, 0.0};
        a.size = {50.0, 54.0};
        a.occlusions = {{33, 38}};

        SynthIdentity b;
        b.name = "b";
        b.enter = 0;
        b.exit = 100;
        b.start = {520.0, 250.0};
        b.velocity = {-6.0, 0.0};
        b.size = {44.0, 50.0};
        b.occlusions = {{33, 38}};

        cfg.identities = {a, b};
        return cfg;
    }
    if (name == "crowd") {
        cfg.seed = 29;
        for (int i = 0; i < 14; ++i) {
            SynthIdentity p;
            p.name = "p" + std::to_string(i);
            p.enter = 0;
            p.exit = 180;
            const double w = 40.0 + 2.0 * i;
            p.size = {w, w + 4.0};
            const double y = 60.0 + 80.0 * i;
            if (i % 2 == 0) {
                p.start = {80.0 + 10.0 * i, y};
                p.velocity = {2.0, 0.0};
            } else {
                p.start = {1400.0 - 10.0 * i, y};
                p.velocity = {-2.0, 0.0};
            }
            if (i >= 5 && i <= 7) {
                p.occlusions = {{30 + i, 33 + i}, {100 + i, 104 + i}};
            } else if (i >= 8 && i <= 10) {
                const std::int64_t b0 = 50 + 4 * (i - 8);
                p.occlusions = {{b0, b0 + 30}};
                p.quality_segments = {{b0 + 30, b0 + 34, "discarded"}};
            } else if (i == 11) {
                p.occlusions = {{40, 65}, {110, 135}};
                p.quality_segments = {{65, 68, "discarded"}, {135, 138, "discarded"}};
            } else if (i == 12) {
                p.occlusions = {{45, 70}, {115, 140}};
                p.quality_segments = {{70, 73, "discarded"}, {140, 143, "discarded"}};
            } else if (i == 13) {
                p.occlusions = {{60, 95}};
                p.quality = "verifiable";
            }
            cfg.identities.push_back(std::move(p));
        }
        return cfg;
    }
    throw ConfigError("unknown scenario '" + name + "'");
}

}  // namespace facetrack::synth
