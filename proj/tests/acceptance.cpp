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

// Acceptance runner. Prints one PASS/FAIL/SKIP line per criterion and exits
// nonzero if any criterion fails. The default profile is sized for CI; --full
// adds the long training sweeps.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bures/experiment.hpp"
#include "bures/objective.hpp"
#include "bures/oracle.hpp"
#include "bures/purify.hpp"
#include "bures/states.hpp"
#include "bures/train.hpp"
#include "support/oracles.hpp"
#include "support/properties.hpp"

namespace {

using namespace bures;
using testing::Rng;

enum class Status { Pass, Fail, Skip };

struct Outcome {
    Status status = Status::Pass;
    std::string detail;
};

struct Options {
    bool full = false;
    int threads = 1;
    std::string out = "acceptance_results";
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

Outcome verdict(bool ok, const std::string &detail) {
    return {ok ? Status::Pass : Status::Fail, detail};
}

ExperimentConfig shipped(const std::string &name) {
    return ExperimentConfig::load(std::string(BURES_SOURCE_DIR) + "/configs/" + name + ".json");
}

std::vector<SweepRow> sweep(ExperimentConfig cfg, std::vector<double> grid, const Options &opt) {
    cfg.grid = std::move(grid);
    return run_sweep(cfg, opt.out, opt.threads).rows;
}

// Grid points where the 1|23 and 3|12 cuts are PPT while 2|13 is not.
std::vector<double> cluster_window(std::vector<double> *worst_ppt = nullptr) {
    std::vector<double> window;
    double worst = 0.0;
    for (int k = 80; k <= 95; ++k) {
        const double p = k / 100.0;
        const auto rho = dephased_cluster(p);
        const double n1 = oracle::negativity(rho, oracle::Bipartition::of({0}, 3));
        const double n2 = oracle::negativity(rho, oracle::Bipartition::of({1}, 3));
        const double n3 = oracle::negativity(rho, oracle::Bipartition::of({2}, 3));
        if (n1 <= 1e-10 && n3 <= 1e-10 && n2 > 1e-10) {
            window.push_back(p);
            worst = std::max({worst, n1, n3});
        }
    }
    if (worst_ppt) {
        worst_ppt->push_back(worst);
    }
    return window;
}

Outcome window_matches() {
    std::vector<double> worst;
    const auto window = cluster_window(&worst);
    if (window.empty()) {
        return {Status::Fail, "no bound-entangled grid points"};
    }
    // Interior points must be inside the window and points beyond the
    // boundary drift must be outside it.
    bool ok = true;
    for (int k = 80; k <= 95; ++k) {
        const double p = k / 100.0;
        const bool in = std::any_of(window.begin(), window.end(),
                                    [&](double w) { return std::abs(w - p) < 1e-9; });
        if (k >= 84 && k <= 90 && !in) ok = false;
        if ((k <= 81 || k >= 93) && in) ok = false;
    }
    return verdict(ok, "window [" + fmt(window.front()) + ", " + fmt(window.back()) +
                           "], max PPT-side negativity " + fmt(worst.front()));
}

Outcome werner_curve(const Options &opt) {
    const std::vector<double> grid =
        opt.full ? parse_grid("0:1:0.1") : std::vector<double>{0.2, 0.6, 1.0};
    const auto rows = sweep(shipped("werner"), grid, opt);
    double worst = 0.0, worst_low = 0.0;
    for (const auto &r : rows) {
        const double err = std::abs(r.min_r_half - *r.oracle_r_half);
        worst = std::max(worst, err);
        if (*r.p <= 1.0 / 3.0) worst_low = std::max(worst_low, err);
    }
    return verdict(worst <= 0.02 && worst_low <= 0.01,
                   std::to_string(rows.size()) + " points, max |best - reference| " + fmt(worst) +
                       ", max for p <= 1/3 " + fmt(worst_low));
}

Outcome cluster_curve(const Options &opt) {
    if (!opt.full) {
        return {Status::Skip, "full profile only"};
    }
    auto grid = parse_grid("0:1:0.1");
    grid.push_back(0.95);
    std::sort(grid.begin(), grid.end());
    const auto rows = sweep(shipped("cluster"), grid, opt);
    double worst_rise = 0.0, at_095 = 1.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        worst_rise = std::max(worst_rise, rows[i].min_r_half - rows[i - 1].min_r_half);
    }
    for (const auto &r : rows) {
        if (std::abs(*r.p - 0.95) < 1e-9) at_095 = r.min_r_half;
    }
    const auto window = window_matches();
    return verdict(worst_rise <= 0.005 && at_095 <= 0.01 && window.status == Status::Pass,
                   "max rise " + fmt(worst_rise) + ", R/2(0.95) " + fmt(at_095) + ", " +
                       window.detail);
}

Outcome smolin_curve(const Options &opt) {
    if (!opt.full) {
        return {Status::Skip, "full profile only"};
    }
    const auto arb = sweep(shipped("smolin_arbitrary"), {0.0, 0.7, 0.8, 0.9, 1.0}, opt);
    double sep_max = 0.0;
    for (std::size_t i = 1; i < arb.size(); ++i) {
        sep_max = std::max(sep_max, arb[i].min_r_half);
    }
    const double ratio = arb[0].min_r_half / sep_max;
    const auto layered = sweep(shipped("smolin"), {0.7, 0.8, 0.9, 1.0}, opt);
    double layered_max = 0.0;
    for (const auto &r : layered) {
        layered_max = std::max(layered_max, r.min_r_half);
    }
    return verdict(sep_max <= 0.01 && ratio >= 5.0 && layered_max <= 0.05,
                   "arbitrary U: separable max " + fmt(sep_max) + ", R/2(0)/max " + fmt(ratio) +
                       "; layered separable max " + fmt(layered_max));
}

// Plans of the given family from the shared small-plan table.
std::vector<std::pair<ResourceSpec, AnsatzConfig>> specs_of(Family family) {
    std::vector<std::pair<ResourceSpec, AnsatzConfig>> out;
    for (const auto &s : testing::small_plan_specs()) {
        if (s.first.family == family) out.push_back(s);
    }
    return out;
}

const std::vector<Family> kFamilies = {Family::Separable, Family::Biseparable,
                                       Family::QuantumClassical, Family::Incoherent,
                                       Family::Product};

Outcome uhlmann_bound() {
    Rng rng(404);
    double worst = -1.0;
    int draws = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto specs = specs_of(kFamilies[trial % kFamilies.size()]);
        const auto &[spec, ansatz] = specs[(trial / kFamilies.size()) % specs.size()];
        const auto plan = build_plan(spec, ansatz);
        const auto rho = testing::random_density(plan.system_qubits, rng, 1 + trial % 4);
        const auto psi = fixed_purification_for(plan, rho);
        const auto theta = testing::random_angles(plan.num_params(), rng);
        const double overlap = overlap_fidelity(psi, plan.prepare(theta)).value;
        worst = std::max(worst, overlap - oracle::fidelity_exact(rho, plan.free_state(theta)));
        ++draws;
    }
    return verdict(worst <= 1e-9,
                   std::to_string(draws) + " draws, max overlap - fidelity " + fmt(worst));
}

Outcome family_membership() {
    Rng rng(505);
    std::ostringstream detail;
    bool ok = true;
    for (const auto family : kFamilies) {
        const auto specs = specs_of(family);
        double worst = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            const auto &[spec, ansatz] = specs[trial % specs.size()];
            const auto plan = build_plan(spec, ansatz);
            const auto theta = testing::random_angles(plan.num_params(), rng);
            worst = std::max(worst, testing::family_residual(plan, theta));
        }
        ok = ok && worst <= 1e-10;
        detail << to_string(family) << " " << fmt(worst) << (family == Family::Product ? "" : ", ");
    }
    return verdict(ok, "max residual per family: " + detail.str());
}

Outcome gradient_equivalence() {
    Rng rng(707);
    double worst = 0.0, worst_abs = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto [spec, ansatz] = testing::random_small_spec(rng);
        const auto plan = build_plan(spec, ansatz);
        const auto rho = testing::random_density(plan.system_qubits, rng);
        const auto psi = fixed_purification_for(plan, rho);
        const auto theta = testing::random_angles(plan.num_params(), rng);
        const auto adj = gradient(plan, psi, theta, GradMethod::Adjoint);
        const auto fd = gradient(plan, psi, theta, GradMethod::CentralFd, 1e-4);
        worst = std::max(worst, testing::max_relative_error(adj, fd));
        for (std::size_t i = 0; i < adj.size(); ++i) {
            worst_abs = std::max(worst_abs, std::abs(adj[i] - fd[i]));
        }
    }
    return verdict(worst <= 1e-5, "50 plans, max relative error " + fmt(worst) +
                                      ", max absolute error " + fmt(worst_abs));
}

Outcome swap_consistency() {
    Rng rng(808);
    std::vector<std::pair<ResourceSpec, AnsatzConfig>> narrow;
    for (const auto &s : testing::small_plan_specs()) {
        if (build_plan(s.first, s.second).total_qubits <= 4) narrow.push_back(s);
    }
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto &[spec, ansatz] = narrow[trial % narrow.size()];
        const auto plan = build_plan(spec, ansatz);
        const auto psi = fixed_purification_for(plan, testing::random_density(plan.system_qubits, rng));
        const auto phi = plan.prepare(testing::random_angles(plan.num_params(), rng));
        worst = std::max(worst, std::abs(swap_circuit_fidelity(psi, phi).value -
                                         overlap_fidelity(psi, phi).value));
    }

    // Empirical spread of the shot estimator over repeated seeds, rescaled
    // by sqrt(shots); a 1/sqrt(shots) law keeps the rescaled values equal.
    const auto plan = build_plan(narrow.front().first, narrow.front().second);
    const auto psi = fixed_purification_for(plan, werner(0.5));
    const auto phi = plan.prepare(testing::random_angles(plan.num_params(), rng));
    const double exact = overlap_fidelity(psi, phi).value;
    std::vector<double> scaled;
    const int reps = 400;
    for (std::int64_t shots : {1000, 10000, 100000}) {
        double sq = 0.0;
        for (int r = 0; r < reps; ++r) {
            const double d = swap_test_sample(psi, phi, shots, 9000 + r).value - exact;
            sq += d * d;
        }
        scaled.push_back(std::sqrt(sq / reps) * std::sqrt(static_cast<double>(shots)));
    }
    const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
    const double spread = *hi / *lo;
    return verdict(worst <= 1e-10 && spread <= 2.0,
                   std::to_string(narrow.size()) + " plan shapes, max circuit - overlap " +
                       fmt(worst) + ", std-error scaling spread " + fmt(spread));
}

Outcome oracle_gate() {
    double worst_ref = 0.0;
    for (double p : {0.4, 0.6, 0.8, 1.0}) {
        const double brute = testing::brute_force_separable_r_half(werner(p), 4, 2, 11);
        worst_ref = std::max(worst_ref, std::abs(brute - oracle::werner_bures_reference(p)));
    }
    Rng rng(909);
    double worst_fid = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 3;
        const auto rho = testing::random_density(n, rng, 1 + trial % (1 << n));
        const auto sigma = testing::random_density(n, rng);
        const double f = oracle::fidelity_exact(rho, sigma);
        worst_fid = std::max(worst_fid, std::abs(f - oracle::fidelity_exact(sigma, rho)));
        worst_fid = std::max(worst_fid, std::abs(oracle::fidelity_exact(rho, rho) - 1.0));
        const CVector a = testing::random_ket(n, rng);
        const CVector b = testing::random_ket(n, rng);
        const auto pa = DensityMatrix::from_pure(a);
        worst_fid = std::max(worst_fid, std::abs(oracle::fidelity_exact(pa, DensityMatrix::from_pure(b)) -
                                                 std::norm(a.dot(b))));
        const double mixed = (a.adjoint() * sigma.matrix() * a)(0, 0).real();
        worst_fid = std::max(worst_fid, std::abs(oracle::fidelity_exact(pa, sigma) - mixed));
    }
    return verdict(worst_ref <= 1e-3 && worst_fid <= 1e-9,
                   "max |brute - reference| " + fmt(worst_ref) + ", max fidelity suite error " +
                       fmt(worst_fid));
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Acceptance criteria runner"};
    Options opt;
    app.add_flag("--full", opt.full, "Run the long training sweeps as well");
    app.add_option("--threads", opt.threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);
    app.add_option("--out", opt.out, "Directory for sweep CSV files");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"werner curve", [&] { return werner_curve(opt); }},
        {"cluster curve", [&] { return cluster_curve(opt); }},
        {"smolin curve", [&] { return smolin_curve(opt); }},
        {"uhlmann bound", uhlmann_bound},
        {"family membership", family_membership},
        {"negativity window", window_matches},
        {"gradient equivalence", gradient_equivalence},
        {"swap consistency", swap_consistency},
        {"oracle validity", oracle_gate},
    };

    std::printf("profile: %s\n", opt.full ? "full" : "fast");
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = criteria[i].second();
        } catch (const std::exception &e) {
            out = {Status::Fail, std::string("error: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const char *tag = out.status == Status::Pass ? "PASS" : out.status == Status::Fail ? "FAIL" : "SKIP";
        failures += out.status == Status::Fail;
        std::printf("criterion %zu (%s): %s  %s  [%.1fs]\n", i + 1, criteria[i].first.c_str(), tag,
                    out.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
