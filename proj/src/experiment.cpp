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

#include "bures/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "bures/objective.hpp"
#include "bures/oracle.hpp"
#include "bures/states.hpp"

namespace bures {

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::ofstream open_output(const std::string &path) {
    const fs::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write '" + path + "'");
    }
    return out;
}

DensityMatrix experiment_state(const ExperimentConfig &config, std::optional<double> p) {
    if (config.preset == "file") {
        return io::load_density_matrix(*config.state_file);
    }
    return preset_state(config.preset, *p);
}

std::optional<double> oracle_value(const ExperimentConfig &config, std::optional<double> p) {
    if (config.preset == "werner" && p && config.resource.family == Family::Separable &&
        config.resource.partition == std::vector<int>{1, 1}) {
        return oracle::werner_bures_reference(*p);
    }
    return std::nullopt;
}

}  // namespace

bool is_known_preset(const std::string &preset) {
    return preset == "werner" || preset == "cluster" || preset == "smolin";
}

DensityMatrix preset_state(const std::string &preset, double p) {
    if (preset == "werner") {
        return werner(p);
    }
    if (preset == "cluster") {
        return dephased_cluster(p);
    }
    if (preset == "smolin") {
        return noisy_smolin(p);
    }
    throw Error("unknown state preset '" + preset + "'");
}

std::vector<double> parse_grid(const std::string &spec) {
    const auto first = spec.find(':');
    const auto second = spec.find(':', first == std::string::npos ? first : first + 1);
    if (first == std::string::npos || second == std::string::npos) {
        throw Error("grid must look like start:stop:step");
    }
    double a = 0, b = 0, step = 0;
    try {
        a = std::stod(spec.substr(0, first));
        b = std::stod(spec.substr(first + 1, second - first - 1));
        step = std::stod(spec.substr(second + 1));
    } catch (const std::exception &) {
        throw Error("grid '" + spec + "' has non-numeric fields");
    }
    if (!(step > 0.0) || !(b >= a)) {
        throw Error("grid needs step > 0 and stop >= start");
    }
    std::vector<double> out;
    for (long i = 0;; ++i) {
        const double v = a + static_cast<double>(i) * step;
        if (v > b + 1e-9) {
            break;
        }
        out.push_back(std::round(v * 1e12) / 1e12);
    }
    return out;
}

void ExperimentConfig::validate() const {
    if (name.empty()) {
        throw Error("experiment needs a name");
    }
    if (preset == "file") {
        if (!state_file) {
            throw Error("preset 'file' needs state_file");
        }
    } else if (!is_known_preset(preset)) {
        throw Error("unknown state preset '" + preset + "'");
    }
    for (double p : grid) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw Error("grid values must lie in [0, 1]");
        }
    }
    resource.validate();
    train.validate();
}

ExperimentConfig ExperimentConfig::fast() const {
    ExperimentConfig c = *this;
    c.train.epochs = std::max(1, c.train.epochs / 10);
    c.train.restarts = std::max(1, c.train.restarts / 10);
    return c;
}

ExperimentConfig ExperimentConfig::from_json(const io::json &j) {
    ExperimentConfig c;
    try {
        c.name = j.value("name", c.name);
        c.preset = j.value("preset", c.preset);
        if (j.contains("state_file")) {
            c.state_file = j.at("state_file").get<std::string>();
        }
        if (j.contains("grid")) {
            const auto &g = j.at("grid");
            c.grid = g.is_string() ? parse_grid(g.get<std::string>()) : g.get<std::vector<double>>();
        }
        const auto &r = j.at("resource");
        c.resource.family = family_from_string(r.value("family", std::string("separable")));
        c.resource.partition = r.at("partition").get<std::vector<int>>();
        c.resource.control_qubits = r.value("control_qubits", c.resource.partition.size() > 0
                                                                  ? c.resource.system_qubits()
                                                                  : 1);
        if (j.contains("ansatz")) {
            const auto &a = j.at("ansatz");
            c.ansatz.l1 = a.value("l1", c.ansatz.l1);
            c.ansatz.l2 = a.value("l2", c.ansatz.l2);
            c.ansatz.use_arbitrary_u = a.value("arbitrary_u", c.ansatz.use_arbitrary_u);
        }
        if (j.contains("train")) {
            const auto &t = j.at("train");
            c.train.eta = t.value("eta", c.train.eta);
            c.train.epochs = t.value("epochs", c.train.epochs);
            c.train.restarts = t.value("restarts", c.train.restarts);
            c.train.grad_method =
                grad_method_from_string(t.value("grad_method", to_string(c.train.grad_method)));
            c.train.fd_step = t.value("fd_step", c.train.fd_step);
            c.train.seed = t.value("seed", c.train.seed);
            if (t.contains("shots") && !t.at("shots").is_null()) {
                c.train.shots = t.at("shots").get<std::int64_t>();
            }
        }
        c.emit_trace = j.value("emit_trace", false);
    } catch (const io::json::exception &e) {
        throw Error(std::string("invalid experiment config: ") + e.what());
    }
    c.validate();
    return c;
}

ExperimentConfig ExperimentConfig::load(const std::string &path) {
    auto c = from_json(io::read_json_file(path));
    if (c.state_file && fs::path(*c.state_file).is_relative()) {
        c.state_file = (fs::path(path).parent_path() / *c.state_file).string();
    }
    return c;
}

std::string format_sweep_row(const SweepRow &row) {
    std::string s = row.p ? num(*row.p) : std::string();
    s += "," + num(row.mean_r_half) + "," + num(row.min_r_half) + "," + num(row.max_r_half);
    s += "," + (row.oracle_r_half ? num(*row.oracle_r_half) : std::string());
    s += "," + std::to_string(row.failed_restarts) + "," + num(row.wall_time);
    return s;
}

SweepOutput run_sweep(const ExperimentConfig &config, const std::string &out_dir, int threads) {
    config.validate();
    if (threads < 1) {
        throw Error("threads must be at least 1");
    }
    std::vector<std::optional<double>> points;
    if (config.preset == "file") {
        points.push_back(std::nullopt);
    } else {
        points.assign(config.grid.begin(), config.grid.end());
    }

    SweepOutput output;
    output.csv_path = (fs::path(out_dir) / (config.name + ".csv")).string();
    auto csv = open_output(output.csv_path);
    std::optional<std::ofstream> trace;
    if (config.emit_trace) {
        output.trace_path = (fs::path(out_dir) / (config.name + "_trace.jsonl")).string();
        trace = open_output(*output.trace_path);
    }

    const auto plan = build_plan(config.resource, config.ansatz);
    std::vector<TrainReport> reports(points.size());
    std::vector<std::string> errors(points.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++) {
            try {
                TrainConfig cfg = config.train;
                cfg.seed = config.train.seed + i;
                cfg.threads = 1;
                reports[i] = train_plan(plan, experiment_state(config, points[i]), cfg);
            } catch (const std::exception &e) {
                errors[i] = e.what();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        const int workers = std::max(1, std::min<int>(threads, static_cast<int>(points.size())));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back(worker);
        }
    }

    csv << kSweepHeader << "\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!errors[i].empty()) {
            throw Error("grid point " + std::to_string(i) + ": " + errors[i]);
        }
        const auto &rep = reports[i];
        SweepRow row{points[i],
                     rep.restart_stats.mean,
                     rep.restart_stats.min,
                     rep.restart_stats.max,
                     oracle_value(config, points[i]),
                     rep.failed_restarts,
                     rep.wall_time};
        csv << format_sweep_row(row) << "\n";
        output.rows.push_back(row);
        if (trace) {
            for (std::size_t r = 0; r < rep.restarts.size(); ++r) {
                const auto &res = rep.restarts[r];
                io::json line = {{"p", points[i] ? io::json(*points[i]) : io::json(nullptr)},
                                 {"restart", r},
                                 {"failed", res.failed},
                                 {"final_R_half", res.failed ? io::json(nullptr)
                                                             : io::json(res.final_cost)},
                                 {"cost_trace", res.cost_trace}};
                *trace << line.dump() << "\n";
            }
        }
    }
    return output;
}

std::string oracle_header(const std::string &preset) {
    if (preset == "werner") {
        return "p,neg_1|2,concurrence,bures_R_half";
    }
    if (preset == "cluster") {
        return "p,neg_1|23,neg_2|13,neg_3|12";
    }
    if (preset == "smolin") {
        return "p,neg_1|234,neg_2|134,neg_3|124,neg_4|123";
    }
    throw Error("unknown state preset '" + preset + "'");
}

std::vector<std::vector<double>> run_oracle_scan(const std::string &preset,
                                                 const std::vector<double> &grid) {
    if (!is_known_preset(preset)) {
        throw Error("unknown state preset '" + preset + "'");
    }
    std::vector<std::vector<double>> rows;
    for (double p : grid) {
        const auto rho = preset_state(preset, p);
        std::vector<double> row{p};
        for (const auto &cut : oracle::single_qubit_cuts(rho.num_qubits())) {
            row.push_back(oracle::negativity(rho, cut));
            if (rho.num_qubits() == 2) {
                break;
            }
        }
        if (preset == "werner") {
            row.push_back(oracle::concurrence(rho));
            row.push_back(oracle::werner_bures_reference(p));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_oracle_scan(const std::string &preset, const std::vector<double> &grid,
                       const std::string &path) {
    const auto header = oracle_header(preset);
    const auto rows = run_oracle_scan(preset, grid);
    auto out = open_output(path);
    out << header << "\n";
    for (const auto &row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            out << (k ? "," : "") << num(row[k]);
        }
        out << "\n";
    }
}

io::json run_reconstruction(const ExperimentConfig &config, double p, const std::string &out_dir) {
    config.validate();
    if (config.resource.family != Family::Separable) {
        throw Error("reconstruction needs the separable family");
    }
    const auto rho = experiment_state(config, p);
    const auto plan = build_plan(config.resource, config.ansatz);
    const auto report = train_plan(plan, rho, config.train);
    const auto rec = reconstruct_free_state(plan, report.best_params);
    const Objective objective(plan, fixed_purification_for(plan, rho));
    io::json out = {
        {"name", config.name},
        {"p", config.preset == "file" ? io::json(nullptr) : io::json(p)},
        {"best_R_half", report.best_cost},
        {"overlap_fidelity", objective.fidelity(report.best_params)},
        {"fidelity_exact", oracle::fidelity_exact(rho, rec.state)},
        {"ensemble", io::ensemble_to_json(rec.ensemble, plan.parts)},
        {"density_matrix", io::density_matrix_to_json(rec.state)},
    };
    auto file = open_output((fs::path(out_dir) / (config.name + "_reconstruction.json")).string());
    file << out.dump(2) << "\n";
    return out;
}

}  // namespace bures
