#include <istream>
#include <ostream>

#include <json.hpp>

#include "facetrack/errors.hpp"
#include "facetrack/synth.hpp"

namespace facetrack::synth {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& source, const std::string& msg) {
    throw ParseError(source, 0, msg);
}

void check_keys(const ordered_json& obj, std::initializer_list<const char*> allowed,
                const std::string& source, const std::string& where) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            fail(source, where + ": unknown key '" + item.key() + "'");
        }
    }
}

std::array<double, 2> pair_of(const ordered_json& j, const std::string& source,
                              const std::string& where) {
    if (!j.is_array() || j.size() != 2) {
        fail(source, where + ": expected an array of two numbers");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

ScenarioConfig read_scenario_config(std::istream& in, const std::string& source) {
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        fail(source, e.what());
    }

    ScenarioConfig cfg;
    try {
        check_keys(j, {"seed", "embedding_dim", "noise_sigma", "gt_during_occlusion",
                       "identities"},
                   source, "scenario");
        cfg.seed = j.value("seed", std::uint64_t{1});
        cfg.embedding_dim = j.value("embedding_dim", std::size_t{64});
        cfg.noise_sigma = j.value("noise_sigma", 0.01);
        cfg.gt_during_occlusion = j.value("gt_during_occlusion", false);
        if (!j.contains("identities") || !j["identities"].is_array()) {
            fail(source, "scenario: missing 'identities' array");
        }
        for (const ordered_json& ji : j["identities"]) {
            const std::string where =
                "identity '" + ji.value("name", std::string("?")) + "'";
            check_keys(ji, {"name", "enter", "exit", "start", "velocity", "size", "occlusions",
                            "quality", "quality_segments"},
                       source, where);
            SynthIdentity id;
            if (!ji.contains("name") || !ji.contains("enter") || !ji.contains("exit")) {
                fail(source, where + ": 'name', 'enter' and 'exit' are required");
            }
            id.name = ji["name"].get<std::string>();
            id.enter = ji["enter"].get<std::int64_t>();
            id.exit = ji["exit"].get<std::int64_t>();
            if (ji.contains("start")) {
                id.start = pair_of(ji["start"], source, where + ".start");
            }
            if (ji.contains("velocity")) {
                id.velocity = pair_of(ji["velocity"], source, where + ".velocity");
            }
            if (ji.contains("size")) {
                id.size = pair_of(ji["size"], source, where + ".size");
            }
            if (ji.contains("occlusions")) {
                for (const ordered_json& jo : ji["occlusions"]) {
                    if (!jo.is_array() || jo.size() != 2) {
                        fail(source, where + ".occlusions: expected [begin, end) pairs");
                    }
                    id.occlusions.push_back(
                        {jo[0].get<std::int64_t>(), jo[1].get<std::int64_t>()});
                }
            }
            id.quality = ji.value("quality", std::string("enrollable"));
            if (ji.contains("quality_segments")) {
                for (const ordered_json& js : ji["quality_segments"]) {
                    check_keys(js, {"begin", "end", "preset"}, source,
                               where + ".quality_segments");
                    QualitySegment seg;
                    seg.begin = js.at("begin").get<std::int64_t>();
                    seg.end = js.at("end").get<std::int64_t>();
                    seg.preset = js.at("preset").get<std::string>();
                    id.quality_segments.push_back(std::move(seg));
                }
            }
            cfg.identities.push_back(std::move(id));
        }
    } catch (const nlohmann::json::exception& e) {
        fail(source, e.what());
    }
    cfg.validate();
    return cfg;
}

void write_scenario_config(const ScenarioConfig& cfg, std::ostream& out) {
    ordered_json j;
    j["seed"] = cfg.seed;
    j["embedding_dim"] = cfg.embedding_dim;
    j["noise_sigma"] = cfg.noise_sigma;
    j["gt_during_occlusion"] = cfg.gt_during_occlusion;
    j["identities"] = ordered_json::array();
    for (const SynthIdentity& id : cfg.identities) {
        ordered_json ji;
        ji["name"] = id.name;
        ji["enter"] = id.enter;
        ji["exit"] = id.exit;
        ji["start"] = {id.start[0], id.start[1]};
        ji["velocity"] = {id.velocity[0], id.velocity[1]};
        ji["size"] = {id.size[0], id.size[1]};
        ji["occlusions"] = ordered_json::array();
        for (const auto& occ : id.occlusions) {
            ji["occlusions"].push_back({occ[0], occ[1]});
        }
        ji["quality"] = id.quality;
        ji["quality_segments"] = ordered_json::array();
        for (const QualitySegment& seg : id.quality_segments) {
            ordered_json js;
            js["begin"] = seg.begin;
            js["end"] = seg.end;
            js["preset"] = seg.preset;
            ji["quality_segments"].push_back(std::move(js));
        }
        j["identities"].push_back(std::move(ji));
    }
    out << j.dump(2) << '\n';
}

}  // namespace facetrack::synth
