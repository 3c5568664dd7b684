#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cfusion/scenario.hpp"

namespace fs = std::filesystem;
using namespace cfusion;

int main(int argc, char **argv) {
    CLI::App app{"Batch runner for weighted fusion frames over fiberwise C*-algebras"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_path;
    std::optional<std::string> only;
    std::optional<std::uint64_t> seed;
    auto *run = app.add_subcommand("run", "Run a scenario file and write a JSON report");
    run->add_option("scenario", scenario_path, "Scenario file (YAML)")->required();
    run->add_option("--only", only, "Run only commands with this op")->check(CLI::IsMember(scenario::kCommands));
    run->add_option("--out", out_path, "Report file (default: stdout)");
    run->add_option("--seed", seed, "Override the scenario seed");

    std::string dir = ".";
    bool force = false;
    auto *examples = app.add_subcommand("examples", "Write the bundled example scenarios");
    examples->add_option("--dir", dir, "Target directory");
    examples->add_flag("--force", force, "Overwrite existing files");

    CLI11_PARSE(app, argc, argv);

    if (*run) {
        const auto result = scenario::run_file(scenario_path, {only, seed});
        const auto text = io::dump(result.report) + "\n";
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!(out << text)) {
                std::cerr << "cannot write " << out_path << "\n";
                return 2;
            }
        }
        if (result.report.contains("error")) std::cerr << result.report["error"]["code"].get<std::string>() << ": "
                                                        << result.report["error"]["message"].get<std::string>() << "\n";
        return result.exit_code;
    }

    std::error_code ec;
    fs::create_directories(dir, ec);
    for (const auto &[name, text] : scenario::bundled_examples()) {
        const auto path = fs::path(dir) / name;
        if (fs::exists(path) && !force) {
            std::cerr << path.string() << " exists, skipping (use --force)\n";
            continue;
        }
        std::ofstream out(path, std::ios::binary);
        out << text;
        if (!out) {
            std::cerr << "cannot write " << path.string() << "\n";
            return 1;
        }
        std::cout << path.string() << "\n";
    }
    return 0;
}
