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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "implab/bounds.hpp"
#include "implab/config.hpp"
#include "implab/estimators.hpp"
#include "implab/fading.hpp"
#include "implab/frontend.hpp"
#include "implab/golden.hpp"
#include "implab/harness.hpp"
#include "implab/signalpath.hpp"
#include "oracles.hpp"

using namespace implab;

namespace {

int failures = 0;

void report(const std::string& group, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s [%s] %s: %s\n", pass ? "PASS" : "FAIL", group.c_str(), name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

const cplx kF{0.9646, -0.1032};

SufficientStats draw_stats(const ChannelSpec& spec, cplx f, double sigma2, Substream& rng) {
    const ComplexMat h = sample_H(spec, rng).h;
    SufficientStats st{h, f * h, sigma2};
    if (sigma2 > 0.0) {
        for (auto& v : st.y1.data()) v += rng.complex_normal(sigma2);
        for (auto& v : st.y2.data()) v += rng.complex_normal(sigma2);
    }
    return st;
}

std::string csv_of(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    write_csv(out, rows);
    return out.str();
}

ExperimentConfig config(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

void golden() {
    Timer t;
    const std::vector<GoldenCheck> checks = golden_checks();
    for (const GoldenCheck& c : checks) report("golden", c.name, c.pass, c.detail);
    report("golden", "runtime under 1 s", t.seconds() < 1.0, fmt("%.3f s", t.seconds()));
}

void estimator_oracles() {
    Timer t;
    {
        Substream rng(2);
        const ChannelSpec spec = ChannelSpec::iid(4, 1, 1.0);
        const oracle::Mat c = oracle::identity(1);
        double worst_f = 0.0, worst_s = 0.0;
        int done = 0;
        while (done < 50) {
            const cplx f = std::polar(rng.uniform(0.3, 1.5), rng.uniform(-3.1, 3.1));
            const double sigma2 = rng.uniform(0.05, 0.5);
            const SufficientStats st = draw_stats(spec, f, sigma2, rng);
            const EstimateReport r = ml_single_packet(st.y1.row(0), st.y2.row(0), sigma2);
            if (r.degenerate || *r.sigma_h2_hat == 0.0 || std::abs(r.f_hat) > 3.5) continue;
            const std::vector<cplx> y1(st.y1.data().begin(), st.y1.data().end());
            const std::vector<cplx> y2(st.y2.data().begin(), st.y2.data().end());
            const auto ll = [&](cplx ff, double s) {
                return oracle::full_loglik(y1, y2, 1, 4, c, ff, s, sigma2);
            };
            const oracle::BruteResult b = oracle::brute_force_ml(ll, 4.0, 0.1, 50.0);
            worst_f = std::max(worst_f, std::abs(r.f_hat - b.f));
            worst_s = std::max(worst_s, std::abs(*r.sigma_h2_hat - b.sigma_h2));
            ++done;
        }
        report("estimators", "ML1 vs brute-force likelihood, 50 instances",
               worst_f <= 1e-4 && worst_s <= 1e-4,
               fmt("max |dF| = %.2e, max |dsigma_h2| = %.2e (tol 1e-4)", worst_f, worst_s));
    }
    {
        Substream rng(5);
        double worst = 0.0;
        bool flags_agree = true;
        for (int i = 0; i < 100; ++i) {
            const ChannelSpec spec = ChannelSpec::iid(4, 1 + i % 8, 1.0);
            const cplx f = std::polar(rng.uniform(0.2, 2.0), rng.uniform(-3.1, 3.1));
            const SufficientStats st = draw_stats(spec, f, std::pow(10.0, rng.uniform(-2.0, 1.0)), rng);
            const EstimateReport mp = ml_multi_packet(st, spec);
            const EstimateReport ff = ml_fast_fading(st);
            flags_agree = flags_agree && mp.degenerate == ff.degenerate;
            if (mp.degenerate || ff.degenerate) continue;
            worst = std::max({worst, std::abs(mp.f_hat - ff.f_hat),
                              std::abs(*mp.sigma_h2_hat - *ff.sigma_h2_hat)});
        }
        report("estimators", "ML_MP with C_H = I equals ML_FF, 100 instances",
               flags_agree && worst <= 1e-6, fmt("max difference %.2e (tol 1e-6)", worst));
    }
    {
        Substream rng(6);
        const ChannelSpec spec(4, 1.0, clarke_correlation(5, 97.2, 1e-3));
        int differ = 0;
        for (int i = 0; i < 100; ++i) {
            const SufficientStats st = draw_stats(spec, kF, std::pow(10.0, rng.uniform(-2.0, 1.0)), rng);
            if (mm_estimator(st).f_hat != ml_fast_fading(st).f_hat) ++differ;
        }
        report("estimators", "MM F_hat equals ML_FF F_hat exactly", differ == 0,
               fmt("%d of 100 differ", differ));
    }
    {
        Substream rng(1);
        double worst = 0.0;
        const ChannelSpec one = ChannelSpec::iid(4, 1, 1.0);
        const ChannelSpec mod(4, 1.0, clarke_correlation(5, 97.2, 1e-3));
        const ChannelSpec slow(4, 1.0, clarke_correlation(5, 9.72, 1e-3));
        for (int rep = 0; rep < 20; ++rep) {
            const cplx f{rng.uniform(-2, 2), rng.uniform(-2, 2)};
            const SufficientStats s1 = draw_stats(one, f, 0.0, rng);
            worst = std::max(worst, std::abs(ml_single_packet(s1.y1.row(0), s1.y2.row(0), 0.0).f_hat - f));
            for (const ChannelSpec* spec : {&mod, &slow}) {
                const SufficientStats st = draw_stats(*spec, f, 0.0, rng);
                for (Method m : {Method::ML_MP, Method::ML_FF, Method::MM}) {
                    const EstimateReport r = estimate(m, st, *spec);
                    worst = std::max(worst, r.degenerate ? 1.0 : std::abs(r.f_hat - f));
                }
            }
        }
        report("estimators", "noiseless recovery of F, every estimator", worst <= 1e-10,
               fmt("max |F_hat - F| = %.2e (tol 1e-10)", worst));
    }
    report("estimators", "runtime under 2 min", t.seconds() < 120.0, fmt("%.1f s", t.seconds()));
}

void bound_consistency() {
    Timer t;
    {
        double worst = 0.0;
        const BoundReport one = crb(kF, 1.0, 0.125, 4, std::vector<double>{1.0});
        for (int l : {2, 5, 10, 20}) {
            const BoundReport r = crb(kF, 1.0, 0.125, 4, std::vector<double>(l, 1.0));
            worst = std::max({worst, std::abs(r.crb_F * l / one.crb_F - 1.0),
                              std::abs(r.crb_sigma_h2 * l / one.crb_sigma_h2 - 1.0)});
        }
        report("bounds", "unit-eigenvalue CRB equals single-packet CRB / L", worst <= 1e-12,
               fmt("max relative deviation %.2e (tol 1e-12)", worst));
    }
    {
        const ExperimentConfig cfg = config(R"([experiment]
scenario = iid
N = 4
L = 5
T = 64
P = 1
Z_A = 73+42.5j
Z1 = 50
Z2 = 60+20j
snr_grid_db = 0, 10, 20
trials = 2000
seed = 20240601
estimators = ML_FF, ML_MP
)");
        const std::vector<SweepRow> rows = run_sweep(cfg);
        for (const SweepRow& r : rows) {
            const double ratio = r.rmse_F_rel / r.crb_F_rel;
            const double mse_ratio = ratio * ratio;
            const double floor = 1.0 - 3.0 / std::sqrt(static_cast<double>(r.trials_ok));
            if (r.snr_db >= 10.0) {
                report("bounds", fmt("iid %s %g dB: RMSE within [1.0, 1.3] x sqrt(CRB)", r.estimator.c_str(), r.snr_db),
                       ratio >= 1.0 && ratio <= 1.3, fmt("ratio %.4f", ratio));
            }
            report("bounds", fmt("iid %s %g dB: MSE not below CRB", r.estimator.c_str(), r.snr_db),
                   mse_ratio >= floor, fmt("MSE/CRB %.4f, floor %.4f", mse_ratio, floor));
        }
    }
    {
        const ChannelSpec spec = ChannelSpec::iid(4, 5, 1.0);
        Substream rng(14);
        const double sigma2 = 0.3;
        const int trials = 10000;
        double sum = 0.0, sum2 = 0.0;
        for (int i = 0; i < trials; ++i) {
            const ComplexMat h = sample_H(spec, rng).h;
            SufficientStats st{h, kF * h, sigma2};
            for (auto& v : st.y1.data()) v += rng.complex_normal(sigma2);
            for (auto& v : st.y2.data()) v += rng.complex_normal(sigma2);
            const ComplexMat est = mmse_channel(st, kF, 1.0, spec);
            double e = 0.0;
            for (std::size_t k = 0; k < h.size(); ++k) e += std::norm(est.data()[k] - h.data()[k]);
            e /= static_cast<double>(h.size());
            sum += e;
            sum2 += e * e;
        }
        const double mean = sum / trials;
        const double se = std::sqrt((sum2 / trials - mean * mean) / trials);
        const double bound = bayesian_crb_H(kF, 1.0, sigma2, spec);
        report("bounds", "MMSE per-entry MSE matches Bayesian CRB (C_H = I, 1e4 trials)",
               std::abs(mean - bound) <= 3 * se,
               fmt("MSE %.6f, bound %.6f, SE %.2e", mean, bound, se));
    }
    report("bounds", "runtime under 5 min", t.seconds() < 300.0, fmt("%.1f s", t.seconds()));
}

void capacity() {
    Timer t;
    for (double g : {1.0, 10.0, 100.0}) {
        double se = 0.0;
        const double mc = oracle::capacity_mc(g, 4, 1000000, 77, &se);
        const double lb = capacity_lb(g, 4);
        report("capacity", fmt("closed form vs 1e6-draw Monte Carlo at gamma_eff = %g", g),
               std::abs(lb - mc) <= 0.01, fmt("closed %.5f, MC %.5f +- %.5f", lb, mc, se));
    }
    {
        const ExperimentConfig cfg = config(R"([experiment]
scenario = iid
N = 4
L = 10
T = 64
P = 1
Z_A = 73+42.5j
Z1 = 50
Z2 = 60+20j
loss_db = 5
snr_grid_db = -5, 0, 5, 10, 15, 20
trials = 2000
seed = 20240604
estimators = MM
)");
        const std::vector<SweepRow> rows = run_capacity(cfg);
        double worst_gap = 0.0;
        for (const SweepRow& r : rows)
            worst_gap = std::max(worst_gap, 1.0 - r.capacity->c_adapted / r.capacity->c_upper);
        report("capacity", "5 dB loss: C_adapted within 2% of C_upper on the grid", worst_gap <= 0.02,
               fmt("largest gap %.3f%%", 100 * worst_gap));
        const CapacityFields& low = *rows.front().capacity;
        const double gain = low.c_adapted / low.c_mismatched;
        report("capacity", fmt("5 dB loss: C_adapted / C_mismatched >= 1.8 at %g dB", rows.front().snr_db),
               gain >= 1.8, fmt("ratio %.3f", gain));
    }
    report("capacity", "runtime under 5 min", t.seconds() < 300.0, fmt("%.1f s", t.seconds()));
}

void properties() {
    {
        ExperimentConfig cfg = config(R"([experiment]
scenario = moderate
generator = sos
N = 4
L = 5
T = 64
P = 1
Z_A = 73+42.5j
Z1 = 50
Z2 = 60+20j
snr_grid_db = 0, 10
trials = 200
seed = 11
estimators = ML_FF, ML_MP, MM
)");
        setenv("IMPEDANCE_LAB_THREADS", "1", 1);
        const std::string a = csv_of(run_sweep(cfg));
        setenv("IMPEDANCE_LAB_THREADS", "4", 1);
        const std::string b = csv_of(run_sweep(cfg));
        unsetenv("IMPEDANCE_LAB_THREADS");
        const std::string c = csv_of(run_sweep(cfg));
        report("properties", "determinism: byte-identical CSV per seed across thread counts",
               a == b && b == c, fmt("%zu bytes", a.size()));
    }
    {
        Substream rng(10);
        const ChannelSpec spec(4, 1.0, clarke_correlation(5, 97.2, 1e-3));
        double worst_f = 0.0, worst_s = 0.0;
        for (int i = 0; i < 50; ++i) {
            const SufficientStats st = draw_stats(spec, kF, 0.2, rng);
            const double c = rng.uniform(0.1, 30.0);
            const SufficientStats sc{st.y1 * cplx(c), st.y2 * cplx(c), st.sigma2 * c * c};
            for (Method m : {Method::ML_MP, Method::ML_FF, Method::MM}) {
                const EstimateReport a = estimate(m, st, spec);
                const EstimateReport b = estimate(m, sc, spec);
                worst_f = std::max(worst_f, std::abs(a.f_hat - b.f_hat) / std::abs(a.f_hat));
                if (a.sigma_h2_hat && *a.sigma_h2_hat > 0.0)
                    worst_s = std::max(worst_s, std::abs(*b.sigma_h2_hat / (c * c * *a.sigma_h2_hat) - 1.0));
            }
        }
        report("properties", "scale equivariance: F_hat unchanged, sigma_h2_hat scales by c^2",
               worst_f <= 1e-9 && worst_s <= 1e-7,
               fmt("max rel change in F_hat %.2e, in sigma_h2_hat / c^2 %.2e", worst_f, worst_s));
    }
    {
        Substream rng(11);
        const ChannelSpec spec(4, 1.0, clarke_correlation(5, 97.2, 1e-3));
        int negative = 0, clamped = 0;
        for (int i = 0; i < 500; ++i) {
            const SufficientStats st = draw_stats(spec, kF, 30.0, rng);
            for (Method m : {Method::ML_MP, Method::ML_FF}) {
                const EstimateReport r = estimate(m, st, spec);
                if (r.degenerate) continue;
                if (*r.sigma_h2_hat < 0.0) ++negative;
                if (*r.sigma_h2_hat == 0.0) ++clamped;
            }
        }
        const std::vector<cplx> tiny{{1e-3, 0}, {0, 2e-3}, {1e-3, 1e-3}, {-1e-3, 0}};
        const std::vector<cplx> other{{2e-3, 1e-3}, {0, -1e-3}, {1e-3, 0}, {0, 1e-3}};
        const bool single = *ml_single_packet(tiny, other, 1.0).sigma_h2_hat == 0.0;
        report("properties", "sigma_h2_hat nonnegative, clamp exercised",
               negative == 0 && clamped > 0 && single,
               fmt("%d negative, %d clamped of 1000 low-SNR estimates", negative, clamped));
    }
    {
        const std::vector<cplx> y{{1.0, 0.5}, {-0.2, 0.3}, {0.7, -1.1}, {0.1, 0.0}};
        const std::vector<cplx> zero(4);
        const bool flags = ml_single_packet(y, zero, 0.1).degenerate &&
                           ml_fast_fading({ComplexMat(2, 4), ComplexMat(2, 4), 0.1}).degenerate &&
                           mm_estimator({ComplexMat(2, 4), ComplexMat(2, 4), 0.1}).degenerate;
        std::vector<SweepRow> rows(2);
        rows[0].trials_ok = 3;
        rows[0].trials_degenerate = 1;
        rows[1].trials_degenerate = 4;
        const bool fraction = degenerate_fraction(rows) == 5.0 / 8.0;
        ExperimentConfig cfg = config(R"([experiment]
scenario = iid
N = 4
L = 5
T = 64
P = 1
Z_A = 73+42.5j
Z1 = 50
Z2 = 60+20j
snr_grid_db = -20
trials = 500
seed = 12
estimators = ML_FF, ML_MP, MM
)");
        bool sums = true;
        for (const SweepRow& r : run_sweep(cfg)) sums = sums && r.trials_ok + r.trials_degenerate == 500;
        report("properties", "degenerate-trial accounting", flags && fraction && sums,
               fmt("flags %s, fraction %s, ok + flagged = trials %s", flags ? "ok" : "bad",
                   fraction ? "ok" : "bad", sums ? "ok" : "bad"));
    }
}

}  // namespace

int main() {
    try {
        golden();
        estimator_oracles();
        bound_consistency();
        capacity();
        properties();
    } catch (const std::exception& e) {
        std::printf("FAIL [suite] aborted: %s\n", e.what());
        return 1;
    }
    std::printf("%s: %d failing criteria\n", failures ? "FAILED" : "ALL PASSED", failures);
    return failures ? 1 : 0;
}
