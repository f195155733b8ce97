// Copyright 2026 The Bures-VQA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "bures/experiment.hpp"

namespace {

std::string g_out_dir = "results";

bures::ExperimentConfig load_config(const std::string &path, bool fast,
                                    std::optional<std::uint64_t> seed) {
    auto config = bures::ExperimentConfig::load(path);
    if (fast) {
        config = config.fast();
    }
    if (seed) {
        config.train.seed = *seed;
    }
    return config;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Variational Bures-distance estimation for quantum resource theories"};
    app.require_subcommand(1);

    std::optional<std::uint64_t> seed;
    bool fast = false;
    int threads = 1;
    std::string config_path;
    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--seed", seed, "Override the training seed");
        sub->add_flag("--fast", fast, "Divide epochs and restarts by 10");
        sub->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--out", g_out_dir, "Output directory")->capture_default_str();
    };

    auto *sweep = app.add_subcommand("sweep", "Train across the grid of a config file");
    sweep->add_option("config", config_path, "Experiment config (JSON)")->required();
    add_common(sweep);

    std::string preset;
    std::string grid = "0:1:0.1";
    auto *oracle = app.add_subcommand("oracle", "Negativity and analytic reference scan");
    oracle->add_option("preset", preset, "werner, cluster or smolin")->required();
    oracle->add_option("--grid", grid, "start:stop:step")->capture_default_str();
    oracle->add_option("--out", g_out_dir, "Output directory")->capture_default_str();

    double p = 0.0;
    auto *reconstruct = app.add_subcommand("reconstruct", "Recover the closest separable state");
    reconstruct->add_option("config", config_path, "Experiment config (JSON)")->required();
    reconstruct->add_option("--p", p, "Noise parameter")->required();
    add_common(reconstruct);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sweep) {
            auto config = load_config(config_path, fast, seed);
            config.train.threads = 1;
            const auto out = bures::run_sweep(config, g_out_dir, threads);
            std::cout << bures::kSweepHeader << "\n";
            for (const auto &row : out.rows) {
                std::cout << bures::format_sweep_row(row) << "\n";
            }
            std::cerr << "wrote " << out.csv_path << "\n";
            if (out.trace_path) {
                std::cerr << "wrote " << *out.trace_path << "\n";
            }
        } else if (*oracle) {
            const auto values = bures::parse_grid(grid);
            const auto path = (std::filesystem::path(g_out_dir) / (preset + "_oracle.csv")).string();
            bures::write_oracle_scan(preset, values, path);
            std::cout << bures::oracle_header(preset) << "\n";
            for (const auto &row : bures::run_oracle_scan(preset, values)) {
                for (std::size_t k = 0; k < row.size(); ++k) {
                    std::printf("%s%.12g", k ? "," : "", row[k]);
                }
                std::printf("\n");
            }
            std::cerr << "wrote " << path << "\n";
        } else if (*reconstruct) {
            auto config = load_config(config_path, fast, seed);
            config.train.threads = threads;
            const auto out = bures::run_reconstruction(config, p, g_out_dir);
            std::cout << out.dump(2) << "\n";
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
