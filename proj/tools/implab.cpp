// SPDX-License-Identifier: Apache-2.0
//
// impedance-lab: antenna impedance and channel estimation toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// implab: command-line front end. Exit codes: 0 ok, 1 runtime failure,
// 2 configuration or usage error, 3 more than half the trials degenerate.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "implab/config.hpp"
#include "implab/errors.hpp"
#include "implab/estimators.hpp"
#include "implab/frontend.hpp"
#include "implab/golden.hpp"
#include "implab/harness.hpp"

using namespace implab;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDegenerate = 3;

struct RunFlags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::string output;
    std::string format = "csv";
};

ExperimentConfig load_with_overrides(const RunFlags& f) {
    if (f.config.empty()) throw Error(Errc::ConfigError, "config field '--config': missing");
    ExperimentConfig cfg = load_config(f.config);
    if (f.seed) cfg.seed = *f.seed;
    if (f.trials) cfg.trials = *f.trials;
    if (!f.output.empty()) cfg.output_path = f.output;
    cfg.validate();
    return cfg;
}

// Writes to `path`, or stdout when empty or "-".
void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::IoError, "cannot write '" + path + "'");
    out << text;
    if (!out) throw Error(Errc::IoError, "write failed for '" + path + "'");
}

int finish_rows(const std::vector<SweepRow>& rows, const ExperimentConfig& cfg) {
    std::ostringstream csv;
    write_csv(csv, rows);
    emit(cfg.output_path, csv.str());
    long flagged = 0;
    for (const auto& r : rows) flagged += r.trials_degenerate;
    const double frac = degenerate_fraction(rows);
    if (flagged > 0) {
        std::fprintf(stderr, "degenerate trials: %ld (%.1f%% of estimates)\n", flagged, 100.0 * frac);
    }
    return frac > 0.5 ? kExitDegenerate : kExitOk;
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx json_cplx(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 2) {
        throw Error(Errc::ConfigError, "config field '" + what + "': expected [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json mat_json(const ComplexMat& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (const cplx& v : m.row(r)) row.push_back(cplx_json(v));
        rows.push_back(row);
    }
    return rows;
}

ComplexMat json_mat(const json& j, const std::string& what) {
    if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
        throw Error(Errc::ConfigError, "config field '" + what + "': expected nonempty matrix");
    }
    ComplexMat m(j.size(), j[0].size());
    for (std::size_t r = 0; r < j.size(); ++r) {
        if (j[r].size() != m.cols()) throw Error(Errc::ConfigError, "config field '" + what + "': ragged rows");
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = json_cplx(j[r][c], what);
    }
    return m;
}

int cmd_estimate(const std::string& input, const std::vector<std::string>& methods,
                 const std::string& output) {
    std::ifstream in(input);
    if (!in) throw Error(Errc::ConfigError, "config field '--input': cannot open '" + input + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw Error(Errc::ConfigError, std::string("config field '--input': ") + e.what());
    }
    for (const char* key : {"Y1", "Y2", "sigma2"}) {
        if (!doc.contains(key)) throw Error(Errc::ConfigError, std::string("config field '") + key + "': missing");
    }
    SufficientStats st{json_mat(doc["Y1"], "Y1"), json_mat(doc["Y2"], "Y2"), doc["sigma2"].get<double>()};
    if (st.y1.rows() != st.y2.rows() || st.y1.cols() != st.y2.cols()) {
        throw Error(Errc::ConfigError, "config field 'Y2': shape differs from Y1");
    }
    const ComplexMat c_h = doc.contains("C_H") ? json_mat(doc["C_H"], "C_H")
                                               : ComplexMat::identity(st.y1.rows());
    const ChannelSpec spec(st.n(), 1.0, c_h);
    std::optional<std::pair<cplx, cplx>> loads;
    if (doc.contains("Z1") && doc.contains("Z2")) {
        loads = {json_cplx(doc["Z1"], "Z1"), json_cplx(doc["Z2"], "Z2")};
    }

    json out = json::array();
    for (const auto& name : methods) {
        auto m = parse_method(name);
        if (!m) throw Error(Errc::ConfigError, "config field '--method': unknown estimator '" + name + "'");
        EstimateReport r = estimate(*m, st, spec);
        if (loads) attach_impedance(r, loads->first, loads->second);
        json j{{"method", std::string(to_string(r.method))}, {"degenerate", r.degenerate}};
        if (!r.degenerate) {
            j["F_hat"] = cplx_json(r.f_hat);
            if (r.sigma_h2_hat) j["sigma_h2_hat"] = *r.sigma_h2_hat;
            if (r.mu_hat) j["mu_hat"] = *r.mu_hat;
            if (r.z_a_hat) j["Z_A_hat"] = cplx_json(*r.z_a_hat);
        }
        out.push_back(j);
    }
    emit(output, out.dump(2) + "\n");
    for (const auto& j : out)
        if (j["degenerate"].get<bool>()) return kExitDegenerate;
    return kExitOk;
}

// One synthetic draw at the first grid SNR, written as an estimate input.
int cmd_simulate(const RunFlags& flags) {
    ExperimentConfig cfg = load_with_overrides(flags);
    const cplx f = compute_F({cfg.z_a, cfg.z1, cfg.z2});
    const double sigma_h2 = sigma_h2_from_gain(cfg.sigma_g2, cfg.z_a, cfg.z1);
    const ChannelSource src = make_channel_source(cfg, sigma_h2);
    const TrainingSpec train = dft_training(cfg.n, cfg.t, cfg.p);
    const double snr = cfg.snr_grid_db.front();
    const double sigma_n2 = std::isinf(snr) && snr > 0 ? 0.0 : noise_for_snr(db_to_linear(snr), sigma_h2, cfg.p);
    Substream rng = Substream::derive(cfg.seed, 0, 0);
    const Observations obs = synthesize_with(src.draw(rng), train, f, sigma_n2, rng, sigma_h2);
    const SufficientStats st = sufficient_stats(obs, train, sigma_n2);
    json doc{{"N", st.n()},
             {"L", st.l()},
             {"sigma2", st.sigma2},
             {"Y1", mat_json(st.y1)},
             {"Y2", mat_json(st.y2)},
             {"C_H", mat_json(src.spec.c_h())},
             {"Z1", cplx_json(cfg.z1)},
             {"Z2", cplx_json(cfg.z2)},
             {"truth", {{"F", cplx_json(f)}, {"sigma_h2", sigma_h2}, {"Z_A", cplx_json(cfg.z_a)}}}};
    emit(cfg.output_path, doc.dump(2) + "\n");
    return kExitOk;
}

int cmd_validate() {
    bool all = true;
    for (const auto& c : golden_checks()) {
        std::printf("%s  %s  (%s)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
        all = all && c.pass;
    }
    return all ? kExitOk : kExitFailure;
}

void add_run_flags(CLI::App* app, RunFlags& f) {
    app->add_option("--config", f.config, "experiment INI file")->required();
    app->add_option("--seed", f.seed, "override the master seed");
    app->add_option("--trials", f.trials, "override the trial count")->check(CLI::PositiveNumber);
    app->add_option("--output", f.output, "output path (default: config 'output' or stdout)");
    app->add_option("--format", f.format, "output format")->check(CLI::IsMember({"csv"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"implab: antenna impedance and channel estimation toolkit"};
    app.require_subcommand(1);

    RunFlags sweep_flags, cap_flags, sim_flags;
    auto* sweep = app.add_subcommand("sweep", "RMSE experiment over an SNR grid");
    add_run_flags(sweep, sweep_flags);
    auto* capacity = app.add_subcommand("capacity", "adaptive matching capacity experiment");
    add_run_flags(capacity, cap_flags);
    auto* simulate = app.add_subcommand("simulate", "write one synthetic stats file for 'estimate'");
    add_run_flags(simulate, sim_flags);

    std::string input, est_output;
    std::vector<std::string> methods{"ML_FF"};
    auto* est = app.add_subcommand("estimate", "estimate F, sigma_h2 and Z_A from a stats file");
    est->add_option("--input", input, "JSON stats file")->required();
    est->add_option("--method", methods, "estimators (ML1, ML_MP, ML_FF, MM)");
    est->add_option("--output", est_output, "output path (default stdout)");

    auto* validate = app.add_subcommand("validate", "check reference constants");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*sweep) {
            const ExperimentConfig cfg = load_with_overrides(sweep_flags);
            return finish_rows(run_sweep(cfg), cfg);
        }
        if (*capacity) {
            const ExperimentConfig cfg = load_with_overrides(cap_flags);
            return finish_rows(run_capacity(cfg), cfg);
        }
        if (*simulate) return cmd_simulate(sim_flags);
        if (*est) return cmd_estimate(input, methods, est_output);
        if (*validate) return cmd_validate();
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.code() == Errc::ConfigError ? kExitConfig : kExitFailure;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFailure;
    }
    return kExitFailure;
}
