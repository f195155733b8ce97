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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bures/io.hpp"
#include "bures/train.hpp"

namespace bures {

/// Benchmark states by name: "werner", "cluster", "smolin".
DensityMatrix preset_state(const std::string &preset, double p);
bool is_known_preset(const std::string &preset);

/// "a:b:step" inclusive of b (within 1e-9); values rounded to 12 decimals.
std::vector<double> parse_grid(const std::string &spec);

struct ExperimentConfig {
    std::string name = "experiment";
    /// A preset name, or "file" together with state_file.
    std::string preset = "werner";
    std::optional<std::string> state_file;
    std::vector<double> grid;
    ResourceSpec resource;
    AnsatzConfig ansatz;
    TrainConfig train;
    bool emit_trace = false;

    void validate() const;
    /// Epochs and restarts divided by 10 (at least 1 each).
    ExperimentConfig fast() const;

    static ExperimentConfig from_json(const io::json &j);
    static ExperimentConfig load(const std::string &path);
};

struct SweepRow {
    std::optional<double> p;
    double mean_r_half = 0.0;
    double min_r_half = 0.0;
    double max_r_half = 0.0;
    std::optional<double> oracle_r_half;
    int failed_restarts = 0;
    double wall_time = 0.0;
};

inline constexpr const char *kSweepHeader =
    "p,mean_R_half,min_R_half,max_R_half,oracle_R_half,n_failed_restarts,wall_time";

struct SweepOutput {
    std::vector<SweepRow> rows;
    std::string csv_path;
    std::optional<std::string> trace_path;
};

/// Trains every grid point (seed = train.seed + point index) on `threads`
/// workers and writes <out_dir>/<name>.csv plus <name>_trace.jsonl when
/// emit_trace is set.
SweepOutput run_sweep(const ExperimentConfig &config, const std::string &out_dir, int threads = 1);

std::string format_sweep_row(const SweepRow &row);

/// Header of the oracle scan CSV for a preset.
std::string oracle_header(const std::string &preset);

/// Negativities across the preset's cuts, plus concurrence and the analytic
/// R/2 for the Werner preset. No training.
std::vector<std::vector<double>> run_oracle_scan(const std::string &preset,
                                                 const std::vector<double> &grid);
void write_oracle_scan(const std::string &preset, const std::vector<double> &grid,
                       const std::string &path);

/// Trains at one noise value and dumps the reconstructed closest free state to
/// <out_dir>/<name>_reconstruction.json. Returns the written JSON.
io::json run_reconstruction(const ExperimentConfig &config, double p, const std::string &out_dir);

}  // namespace bures
