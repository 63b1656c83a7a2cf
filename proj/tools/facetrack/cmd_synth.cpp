#include <filesystem>
#include <iostream>

#include <facetrack/errors.hpp>
#include <facetrack/io.hpp>
#include <facetrack/synth.hpp>

#include "common.hpp"

namespace facetrack::cli {

int run_synth(const std::string& scenario, const std::string& config_path, bool list,
              bool has_seed, std::uint64_t seed, const std::string& out_dir) {
    if (list) {
        for (const std::string& name : synth::builtin_scenario_names()) {
            std::cout << name << '\n';
        }
        return 0;
    }

    if (scenario.empty() == config_path.empty()) {
        throw ValidationError("choose exactly one of --scenario or --config");
    }
    synth::ScenarioConfig config;
    if (!scenario.empty()) {
        config = synth::builtin_scenario(scenario);
    } else {
        std::ifstream in = open_input(config_path);
        config = synth::read_scenario_config(in, config_path);
    }
    if (has_seed) {
        config.seed = seed;
    }
    if (out_dir.empty()) {
        throw ValidationError("--out-dir is required to write a scenario");
    }

    const synth::Scenario scene = synth::generate_scenario(config);

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    {
        std::ofstream out = open_output((dir / "detections.txt").string());
        write_detections(scene.detections, out);
    }
    {
        std::ofstream out = open_output((dir / "gt.csv").string());
        write_ground_truth(scene.gt, out);
    }
    {
        std::ofstream out = open_output((dir / "scenario.json").string());
        synth::write_scenario_config(config, out);
    }

    std::cout << "wrote " << scene.detections.size() << " detections and "
              << scene.gt.entries.size() << " ground truth rows for "
              << config.identities.size() << " identities to " << out_dir << '\n';
    return 0;
}

}  // namespace facetrack::cli
