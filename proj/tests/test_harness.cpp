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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>

#include "implab/bounds.hpp"
#include "implab/config.hpp"
#include "implab/errors.hpp"
#include "implab/frontend.hpp"
#include "implab/harness.hpp"

using namespace implab;

namespace {

const char* kBase = R"(; test config
[experiment]
scenario = iid
N = 4
L = 5
T = 64
P = 1
Z_A = 73+42.5j
Z1 = 50
Z2 = 60+j20
snr_grid_db = 0, 10
trials = 40
seed = 7
estimators = ML_FF, ML_MP, MM
)";

ExperimentConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

std::string replace_line(std::string text, const std::string& key, const std::string& line) {
    const auto pos = text.find("\n" + key + " =");
    if (pos == std::string::npos) return text + line + "\n";
    const auto end = text.find('\n', pos + 1);
    return text.replace(pos + 1, end - pos - 1, line);
}

// Message of the ConfigError thrown while parsing, or "" if none.
std::string config_error(const std::string& text) {
    try {
        parse(text);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::ConfigError) << e.what();
        return e.what();
    }
    return "";
}

std::string csv_of(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    write_csv(out, rows);
    return out.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out(1);
    for (char c : line) {
        if (c == sep) out.emplace_back();
        else out.back() += c;
    }
    return out;
}

struct ThreadsEnv {
    explicit ThreadsEnv(const char* v) { setenv("IMPEDANCE_LAB_THREADS", v, 1); }
    ~ThreadsEnv() { unsetenv("IMPEDANCE_LAB_THREADS"); }
};

}  // namespace

TEST(Config, ParsesBase) {
    const ExperimentConfig c = parse(kBase);
    EXPECT_EQ(c.scenario, Scenario::Iid);
    EXPECT_EQ(c.n, 4);
    EXPECT_EQ(c.l, 5);
    EXPECT_EQ(c.t, 64);
    EXPECT_EQ(c.z_a, cplx(73.0, 42.5));
    EXPECT_EQ(c.z2, cplx(60.0, 20.0));
    EXPECT_EQ(c.snr_grid_db, (std::vector<double>{0.0, 10.0}));
    EXPECT_EQ(c.estimators, (std::vector<Method>{Method::ML_FF, Method::ML_MP, Method::MM}));
    EXPECT_EQ(c.seed, 7u);
    EXPECT_FALSE(c.loss_db);
    EXPECT_EQ(c.generator, Generator::Factorization);
    EXPECT_DOUBLE_EQ(parse(replace_line(kBase, "scenario", "scenario = moderate")).v_kmh, 50.0);
    EXPECT_DOUBLE_EQ(parse(replace_line(kBase, "scenario", "scenario = slow")).v_kmh, 5.0);
    EXPECT_TRUE(std::isinf(parse(replace_line(kBase, "snr_grid_db", "snr_grid_db = inf")).snr_grid_db[0]));
}

TEST(Config, ErrorsNameTheField) {
    const std::string base = kBase;
    struct Case {
        std::string text;
        std::string field;
    };
    const std::vector<Case> cases{
        {replace_line(base, "N", "; N removed"), "'N'"},
        {replace_line(base, "L", "L = 0"), "'L'"},
        {replace_line(base, "T", "T = 2"), "'T'"},
        {replace_line(base, "P", "P = -1"), "'P'"},
        {replace_line(base, "Z_A", "Z_A = 73+42.5"), "'Z_A'"},
        {replace_line(base, "Z_A", "Z_A = -5+3j"), "'Z_A'"},
        {replace_line(base, "Z1", "Z1 = abc"), "'Z1'"},
        {replace_line(base, "scenario", "scenario = fast"), "'scenario'"},
        {replace_line(base, "scenario", "scenario = custom"), "'v_kmh'"},
        {replace_line(base, "snr_grid_db", "snr_grid_db = 0, x"), "'snr_grid_db'"},
        {replace_line(base, "trials", "trials = 0"), "'trials'"},
        {replace_line(base, "seed", "seed = -3"), "'seed'"},
        {replace_line(base, "estimators", "estimators = ML_FF, ML9"), "'estimators'"},
        {base + "generator = wavelet\n", "'generator'"},
        {"[other]\nN = 4\n", "'[experiment]'"},
    };
    for (const Case& c : cases) {
        const std::string msg = config_error(c.text);
        EXPECT_NE(msg.find(c.field), std::string::npos) << "want " << c.field << ", got: " << msg;
    }
    EXPECT_THROW(load_config("/nonexistent/path.ini"), Error);
}

TEST(Config, ParseComplex) {
    EXPECT_EQ(parse_complex("73+42.5j"), cplx(73.0, 42.5));
    EXPECT_EQ(parse_complex("60+j20"), cplx(60.0, 20.0));
    EXPECT_EQ(parse_complex("50"), cplx(50.0, 0.0));
    EXPECT_EQ(parse_complex("-4j"), cplx(0.0, -4.0));
    EXPECT_EQ(parse_complex("1e2-2.5e1j"), cplx(100.0, -25.0));
    EXPECT_EQ(parse_complex(" 12 - j3 "), cplx(12.0, -3.0));
    EXPECT_FALSE(parse_complex(""));
    EXPECT_FALSE(parse_complex("abc"));
    EXPECT_FALSE(parse_complex("1+2"));
    EXPECT_FALSE(parse_complex("1+2jj"));
}

TEST(Sweep, DeterministicAcrossThreadCounts) {
    ExperimentConfig cfg = parse(replace_line(kBase, "scenario", "scenario = moderate\ngenerator = sos"));
    cfg.trials = 64;
    std::string one, three, again;
    {
        ThreadsEnv env("1");
        one = csv_of(run_sweep(cfg));
    }
    {
        ThreadsEnv env("3");
        three = csv_of(run_sweep(cfg));
        again = csv_of(run_sweep(cfg));
    }
    EXPECT_EQ(one, three);
    EXPECT_EQ(three, again);
    cfg.seed = 8;
    EXPECT_NE(csv_of(run_sweep(cfg)), one);
}

TEST(Sweep, NoiselessTrainingIsExact) {
    for (const char* scen : {"scenario = iid", "scenario = moderate"}) {
        std::string text = replace_line(kBase, "snr_grid_db", "snr_grid_db = inf");
        text = replace_line(text, "scenario", scen);
        const std::vector<SweepRow> rows = run_sweep(parse(text));
        ASSERT_EQ(rows.size(), 3u);
        for (const SweepRow& r : rows) {
            EXPECT_EQ(r.trials_ok, 40);
            EXPECT_LT(r.rmse_F_rel, 1e-10) << r.estimator;
            EXPECT_EQ(r.crb_F_rel, 0.0);
            EXPECT_EQ(r.bcrb_H, 0.0);
        }
    }
}

TEST(Sweep, AccountingUnderStress) {
    ExperimentConfig cfg = parse(replace_line(kBase, "snr_grid_db", "snr_grid_db = -20, -10"));
    cfg.trials = 300;
    const std::vector<SweepRow> rows = run_sweep(cfg);
    for (const SweepRow& r : rows) {
        EXPECT_EQ(r.trials_ok + r.trials_degenerate, 300);
        EXPECT_TRUE(std::isfinite(r.rmse_F_rel));
        if (r.estimator == "MM") {
            EXPECT_TRUE(std::isnan(r.rmse_sigma_h2_rel));
            EXPECT_TRUE(std::isnan(r.rmse_H));
        } else {
            EXPECT_TRUE(std::isfinite(r.rmse_sigma_h2_rel));
        }
    }
    EXPECT_EQ(degenerate_fraction(rows), 0.0);
}

TEST(Sweep, DegenerateFraction) {
    std::vector<SweepRow> rows(2);
    EXPECT_EQ(degenerate_fraction({}), 0.0);
    rows[0].trials_ok = 3;
    rows[0].trials_degenerate = 1;
    rows[1].trials_ok = 0;
    rows[1].trials_degenerate = 4;
    EXPECT_DOUBLE_EQ(degenerate_fraction(rows), 5.0 / 8.0);
}

TEST(Csv, SchemaAndRoundTrip) {
    ExperimentConfig cfg = parse(kBase);
    cfg.trials = 10;
    std::vector<SweepRow> rows = run_sweep(cfg);
    rows[0].rmse_F_rel = 0.1 + 0.2;
    std::istringstream in(csv_of(rows));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "schema=1");
    std::getline(in, line);
    const std::vector<std::string> header = split(line, ',');
    ASSERT_EQ(header.size(), 18u);
    EXPECT_EQ(header[0], "scenario");
    EXPECT_EQ(header[7], "rmse_F_rel");
    EXPECT_EQ(header[17], "C_upper");
    std::size_t n = 0;
    while (std::getline(in, line)) {
        const std::vector<std::string> f = split(line, ',');
        ASSERT_EQ(f.size(), 18u) << line;
        if (n == 0) EXPECT_EQ(std::stod(f[7]), 0.1 + 0.2);
        if (f[1] == "MM") EXPECT_TRUE(f[8].empty());
        for (int k = 12; k < 18; ++k) EXPECT_TRUE(f[k].empty());
        ++n;
    }
    EXPECT_EQ(n, rows.size());
}

TEST(Capacity, NoiselessTrainingReachesUpperBound) {
    const cplx za{73.0, 42.5};
    const double sigma_h2 = sigma_h2_from_gain(1.0, za, conjugate_match(za));
    for (Method m : {Method::MM, Method::ML_FF, Method::ML_MP}) {
        CapacityInputs in{
            .z_a = za,
            .z_l_initial = find_mismatched_load(za, 5.0),
            .z2 = {60.0, 20.0},
            .method = m,
            .channel = {ChannelSpec::iid(4, 10, sigma_h2)},
            .train = dft_training(4, 64, 1.0),
            .snr_db = {-5.0, 5.0, 20.0},
            .trials = 20,
            .seed = 3,
            .training_noise_scale = 0.0,
        };
        for (const CapacityRow& r : capacity_scenario(in)) {
            EXPECT_EQ(r.trials_ok, 20);
            EXPECT_EQ(r.fields.trials_fallback, 0);
            EXPECT_NEAR(r.fields.m_initial, std::pow(10.0, -0.5), 1e-6);
            EXPECT_NEAR(r.fields.m_hat_mean, 1.0, 1e-10);
            EXPECT_NEAR(r.fields.c_adapted, r.fields.c_upper, 1e-9);
            EXPECT_LT(r.fields.c_mismatched, r.fields.c_adapted);
        }
    }
}

TEST(Capacity, NoLossMeansNoGain) {
    const cplx za{73.0, 42.5};
    CapacityInputs in{
        .z_a = za,
        .z_l_initial = find_mismatched_load(za, 0.0),
        .z2 = {60.0, 20.0},
        .channel = {ChannelSpec::iid(4, 10, 1.0)},
        .train = dft_training(4, 64, 1.0),
        .snr_db = {0.0, 10.0},
        .trials = 50,
    };
    for (const CapacityRow& r : capacity_scenario(in)) {
        EXPECT_NEAR(r.fields.m_initial, 1.0, 1e-12);
        EXPECT_NEAR(r.fields.c_mismatched, r.fields.c_upper, 1e-10);
        EXPECT_LE(r.fields.c_adapted, r.fields.c_upper + 1e-12);
        EXPECT_EQ(r.trials_ok + r.trials_degenerate, 50);
    }
}

TEST(Capacity, OrderingAndConfig) {
    std::string text = replace_line(kBase, "estimators", "estimators = MM, ML_FF");
    text = replace_line(text, "snr_grid_db", "snr_grid_db = -5, 5, 15");
    ExperimentConfig cfg = parse(text + "loss_db = 5\n");
    cfg.trials = 100;
    const std::vector<SweepRow> rows = run_capacity(cfg);
    ASSERT_EQ(rows.size(), 6u);
    for (const SweepRow& r : rows) {
        ASSERT_TRUE(r.capacity);
        const CapacityFields& c = *r.capacity;
        EXPECT_LT(c.c_mismatched, c.c_adapted);
        EXPECT_LE(c.c_adapted, c.c_upper + 1e-12);
        EXPECT_EQ(r.trials_ok + r.trials_degenerate, 100);
        EXPECT_TRUE(std::isnan(r.rmse_F_rel));
    }
    const std::string csv = csv_of(rows);
    EXPECT_EQ(csv.substr(0, 9), "schema=1\n");

    try {
        run_capacity(parse(kBase));
        ADD_FAILURE() << "missing loss_db accepted";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::ConfigError);
        EXPECT_NE(std::string(e.what()).find("'loss_db'"), std::string::npos);
    }
}
