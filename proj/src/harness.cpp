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

#include "implab/harness.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "implab/bounds.hpp"
#include "implab/errors.hpp"
#include "implab/frontend.hpp"
#include "implab/parallel.hpp"

namespace implab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct TrialOut {
    bool degenerate = false;
    double e_f = kNaN;
    double e_s = kNaN;
    double e_h = kNaN;
};

// Mean over finite entries, NaN when there are none. Summed in index order.
struct MeanAcc {
    double sum = 0.0;
    int count = 0;
    void add(double v) {
        if (std::isfinite(v)) {
            sum += v;
            ++count;
        }
    }
    double mean() const { return count > 0 ? sum / count : kNaN; }
};

double per_entry_mse(const ComplexMat& est, const ComplexMat& truth) {
    double acc = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) acc += std::norm(est.data()[i] - truth.data()[i]);
    return acc / static_cast<double>(truth.size());
}

double sigma_n2_for(double snr_db, double sigma_h2, double p) {
    if (std::isinf(snr_db) && snr_db > 0) return 0.0;
    return noise_for_snr(db_to_linear(snr_db), sigma_h2, p);
}

TrialOut score(const EstimateReport& r, const Truth& truth, const SufficientStats& st,
               const ChannelSpec& spec) {
    TrialOut out;
    if (r.degenerate) {
        out.degenerate = true;
        return out;
    }
    out.e_f = std::norm(r.f_hat - truth.f);
    if (!r.sigma_h2_hat) return out;
    const double s = *r.sigma_h2_hat;
    out.e_s = (s - truth.sigma_h2) * (s - truth.sigma_h2);
    if (s > 0.0) {
        try {
            out.e_h = per_entry_mse(mmse_channel(st, r.f_hat, s, spec), truth.h);
        } catch (const Error& e) {
            if (e.code() != Errc::SingularSystem) throw;
        }
    } else {
        out.e_h = per_entry_mse(ComplexMat(truth.h.rows(), truth.h.cols()), truth.h);
    }
    return out;
}

void put(std::ostream& out, double v) {
    if (std::isnan(v)) return;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}

}  // namespace

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    const ImpedanceSet imp{cfg.z_a, cfg.z1, cfg.z2};
    imp.validate();
    const cplx f = compute_F(imp);
    const double sigma_h2 = sigma_h2_from_gain(cfg.sigma_g2, cfg.z_a, cfg.z1);
    const ChannelSource src = make_channel_source(cfg, sigma_h2);
    const TrainingSpec train = dft_training(cfg.n, cfg.t, cfg.p);
    const std::size_t n_est = cfg.estimators.size();
    const auto trials = static_cast<std::size_t>(cfg.trials);

    std::vector<SweepRow> rows;
    for (std::size_t cell = 0; cell < cfg.snr_grid_db.size(); ++cell) {
        const double snr_db = cfg.snr_grid_db[cell];
        const double sigma_n2 = sigma_n2_for(snr_db, sigma_h2, cfg.p);
        const double sigma2 = effective_sigma2(sigma_n2, cfg.n, cfg.p, cfg.t);

        std::vector<TrialOut> outs(trials * n_est);
        parallel_for(trials, [&](std::size_t i) {
            Substream rng = Substream::derive(cfg.seed, cell, i);
            const ComplexMat h = src.draw(rng);
            const Observations obs = synthesize_with(h, train, f, sigma_n2, rng, sigma_h2);
            const SufficientStats st = sufficient_stats(obs, train, sigma_n2);
            for (std::size_t e = 0; e < n_est; ++e) {
                outs[i * n_est + e] = score(estimate(cfg.estimators[e], st, src.spec), *obs.truth,
                                            st, src.spec);
            }
        });

        double crb_f_rel = 0.0, bcrb_rel = 0.0;
        if (sigma2 > 0.0) {
            crb_f_rel = std::sqrt(crb(f, sigma_h2, sigma2, cfg.n, src.spec.lambdas()).crb_F) /
                        std::abs(f);
            bcrb_rel = std::sqrt(bayesian_crb_H(f, sigma_h2, sigma2, src.spec) / sigma_h2);
        }

        for (std::size_t e = 0; e < n_est; ++e) {
            SweepRow row;
            row.scenario = std::string(to_string(cfg.scenario));
            row.estimator = std::string(to_string(cfg.estimators[e]));
            row.n = cfg.n;
            row.l = cfg.l;
            row.snr_db = snr_db;
            MeanAcc ef, es, eh;
            for (std::size_t i = 0; i < trials; ++i) {
                const TrialOut& o = outs[i * n_est + e];
                if (o.degenerate) {
                    ++row.trials_degenerate;
                    continue;
                }
                ++row.trials_ok;
                ef.add(o.e_f);
                es.add(o.e_s);
                eh.add(o.e_h);
            }
            row.rmse_F_rel = std::sqrt(ef.mean()) / std::abs(f);
            row.rmse_sigma_h2_rel = std::sqrt(es.mean()) / sigma_h2;
            row.rmse_H = std::sqrt(eh.mean() / sigma_h2);
            row.crb_F_rel = crb_f_rel;
            row.bcrb_H = bcrb_rel;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<CapacityRow> capacity_scenario(const CapacityInputs& in) {
    if (in.trials < 1) throw Error(Errc::DomainError, "capacity_scenario: trials must be >= 1");
    if (!(in.training_noise_scale >= 0.0)) {
        throw Error(Errc::DomainError, "capacity_scenario: training_noise_scale must be >= 0");
    }
    const double m0 = mismatch_loss(in.z_a, in.z_l_initial);
    const cplx f = compute_F({in.z_a, in.z_l_initial, in.z2});
    const int n = in.train.n;
    const int t = in.train.t;
    const double p = in.train.p;

    // Variance seen through the initial load during training.
    ChannelSource src = in.channel;
    const double sigma_h2 = in.channel.spec.sigma_h2() * m0;
    src.spec = in.channel.spec.with_sigma_h2(sigma_h2);

    std::vector<CapacityRow> rows;
    for (std::size_t cell = 0; cell < in.snr_db.size(); ++cell) {
        const double gamma_x = db_to_linear(in.snr_db[cell]);
        const double gamma_m = gamma_x / m0;
        const double sigma_n2 = p * sigma_h2 / gamma_x * in.training_noise_scale;

        struct Out {
            int state = 0;  // 0 ok, 1 degenerate, 2 fallback
            double m_hat = 0.0;
            double c = 0.0;
        };
        std::vector<Out> outs(static_cast<std::size_t>(in.trials));
        parallel_for(outs.size(), [&](std::size_t i) {
            Substream rng = Substream::derive(in.seed, cell, i);
            const ComplexMat h = src.draw(rng);
            const Observations obs = synthesize_with(h, in.train, f, sigma_n2, rng, sigma_h2);
            const SufficientStats st = sufficient_stats(obs, in.train, sigma_n2);
            const EstimateReport r = estimate(in.method, st, src.spec);
            Out& o = outs[i];
            if (r.degenerate) {
                o.state = 1;
                return;
            }
            o.m_hat = m0;
            try {
                const cplx za_hat = recover_ZA(r.f_hat, in.z_l_initial, in.z2);
                if (za_hat.real() > 0.0) {
                    o.m_hat = mismatch_loss(in.z_a, conjugate_match(za_hat));
                } else {
                    o.state = 2;
                }
            } catch (const Error& e) {
                if (e.code() != Errc::SingularInversion) throw;
                o.state = 2;
            }
            o.c = capacity_lb(gamma_eff(gamma_m * o.m_hat, n, t), n);
        });

        CapacityRow row;
        row.snr_db = in.snr_db[cell];
        row.fields.m_initial = m0;
        row.fields.c_mismatched = capacity_lb(gamma_eff(gamma_m * m0, n, t), n);
        row.fields.c_upper = capacity_lb(gamma_eff(gamma_m, n, t), n);
        MeanAcc c, m;
        for (const Out& o : outs) {
            if (o.state == 1) {
                ++row.trials_degenerate;
                continue;
            }
            ++row.trials_ok;
            if (o.state == 2) ++row.fields.trials_fallback;
            c.add(o.c);
            m.add(o.m_hat);
        }
        row.fields.c_adapted = c.mean();
        row.fields.m_hat_mean = m.mean();
        rows.push_back(row);
    }
    return rows;
}

std::vector<SweepRow> run_capacity(const ExperimentConfig& cfg) {
    cfg.validate();
    if (!cfg.loss_db) throw Error(Errc::ConfigError, "config field 'loss_db': missing");
    for (double s : cfg.snr_grid_db)
        if (!std::isfinite(s)) throw Error(Errc::ConfigError, "config field 'snr_grid_db': capacity needs finite SNR");

    const cplx z_l = find_mismatched_load(cfg.z_a, *cfg.loss_db);
    if (cfg.z2 == z_l) {
        throw Error(Errc::ConfigError, "config field 'Z2': equals the mismatched training load");
    }
    const double sigma_h2_matched =
        sigma_h2_from_gain(cfg.sigma_g2, cfg.z_a, conjugate_match(cfg.z_a));
    CapacityInputs in{
        .z_a = cfg.z_a,
        .z_l_initial = z_l,
        .z2 = cfg.z2,
        .method = Method::MM,
        .channel = make_channel_source(cfg, sigma_h2_matched),
        .train = dft_training(cfg.n, cfg.t, cfg.p),
        .snr_db = cfg.snr_grid_db,
        .trials = cfg.trials,
    };

    std::vector<SweepRow> rows;
    for (std::size_t e = 0; e < cfg.estimators.size(); ++e) {
        in.method = cfg.estimators[e];
        // Each estimator gets its own stream family.
        in.seed = mix64(cfg.seed ^ (0x5a5a5a5aULL * (e + 1)));
        for (const CapacityRow& c : capacity_scenario(in)) {
            SweepRow row;
            row.scenario = std::string(to_string(cfg.scenario));
            row.estimator = std::string(to_string(in.method));
            row.n = cfg.n;
            row.l = cfg.l;
            row.snr_db = c.snr_db;
            row.trials_ok = c.trials_ok;
            row.trials_degenerate = c.trials_degenerate;
            row.rmse_F_rel = row.rmse_sigma_h2_rel = row.crb_F_rel = kNaN;
            row.rmse_H = row.bcrb_H = kNaN;
            row.capacity = c.fields;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "schema=" << kCsvSchema << '\n';
    out << "scenario,estimator,N,L,snr_db,trials_ok,trials_degenerate,rmse_F_rel,"
           "rmse_sigma_h2_rel,crb_F_rel,rmse_H,bcrb_H,trials_fallback,M_initial,M_hat_mean,"
           "C_mismatched,C_adapted,C_upper\n";
    for (const SweepRow& r : rows) {
        out << r.scenario << ',' << r.estimator << ',' << r.n << ',' << r.l << ',';
        put(out, r.snr_db);
        out << ',' << r.trials_ok << ',' << r.trials_degenerate;
        for (double v : {r.rmse_F_rel, r.rmse_sigma_h2_rel, r.crb_F_rel, r.rmse_H, r.bcrb_H}) {
            out << ',';
            put(out, v);
        }
        if (r.capacity) {
            const CapacityFields& c = *r.capacity;
            out << ',' << c.trials_fallback;
            for (double v : {c.m_initial, c.m_hat_mean, c.c_mismatched, c.c_adapted, c.c_upper}) {
                out << ',';
                put(out, v);
            }
        } else {
            out << ",,,,,,";
        }
        out << '\n';
    }
}

double degenerate_fraction(const std::vector<SweepRow>& rows) {
    long flagged = 0, total = 0;
    for (const SweepRow& r : rows) {
        flagged += r.trials_degenerate;
        total += r.trials_degenerate + r.trials_ok;
    }
    return total > 0 ? static_cast<double>(flagged) / total : 0.0;
}

}  // namespace implab
