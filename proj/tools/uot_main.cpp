#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "uot/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Semi-discrete unbalanced transport, quantization, and asymptotics"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::string command;

    for (const std::string name :
         {"transport", "quantize", "cell-problem", "asymptotic-density", "sweep"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON experiment config")->required();
        sub->add_option("--seed", seed, "override the config seed");
        sub->add_option("--out", out_dir, "override the output directory");
        sub->callback([&command, name] { command = name; });
    }

    CLI11_PARSE(app, argc, argv);

    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "{\"error\": \"cannot open config: " << config_path << "\"}\n";
        return uot::kExitInput;
    }
    nlohmann::json config;
    try {
        in >> config;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\": \"config parse failure\"}\n";
        return uot::kExitInput;
    }
    return uot::run_experiment(std::move(config), command, seed, out_dir);
}
