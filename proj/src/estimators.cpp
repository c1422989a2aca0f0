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

#include "implab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "implab/errors.hpp"
#include "implab/frontend.hpp"
#include "implab/numerics.hpp"

namespace implab {

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::ML1: return "ML1";
        case Method::ML_MP: return "ML_MP";
        case Method::ML_FF: return "ML_FF";
        case Method::MM: return "MM";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view s) noexcept {
    for (Method m : {Method::ML1, Method::ML_MP, Method::ML_FF, Method::MM}) {
        if (s == to_string(m)) return m;
    }
    return std::nullopt;
}

namespace {

// 2x2 Hermitian [[a, b], [conj b, c]] kept as three numbers.
struct Herm2 {
    double a = 0.0;
    double c = 0.0;
    cplx b{};

    Herm2& add_scaled(const Herm2& o, double w) {
        a += w * o.a;
        c += w * o.c;
        b += w * o.b;
        return *this;
    }
    double trace() const { return a + c; }
};

bool is_degenerate(const Herm2& s) {
    return !(std::abs(s.b) >= kDegenerateRel * s.trace()) || s.b == cplx{};
}

// Principal eigenvector (1, F) of s; F = (eta1 - s11) / s12.
cplx f_from(const Herm2& s, const Principal2& p) { return p.gap / s.b; }

void sanitize_stats(const SufficientStats& st) {
    if (st.y1.rows() != st.y2.rows() || st.y1.cols() != st.y2.cols() || st.y1.empty()) {
        throw Error(Errc::ShapeMismatch, "Y1 and Y2 must be nonempty and of equal shape");
    }
    if (!(st.sigma2 >= 0.0)) throw Error(Errc::DomainError, "sigma2 must be >= 0");
}

Herm2 t_of(const SufficientStats& st) {
    const double inv_n = 1.0 / st.n();
    Herm2 t;
    for (std::size_t i = 0; i < st.y1.size(); ++i) {
        const cplx u = st.y1.data()[i];
        const cplx w = st.y2.data()[i];
        t.a += std::norm(u);
        t.c += std::norm(w);
        t.b += u * std::conj(w);
    }
    t.a *= inv_n;
    t.c *= inv_n;
    t.b *= inv_n;
    return t;
}

// Closed form shared by the single-packet, fast-fading and MM paths.
// `packets` divides eta1 before the noise floor is removed.
EstimateReport closed_form(const Herm2& s, double sigma2, int packets, Method m) {
    EstimateReport r;
    r.method = m;
    if (is_degenerate(s)) {
        r.degenerate = true;
        return r;
    }
    const Principal2 p = principal2(s.a, s.c, s.b);
    r.f_hat = f_from(s, p);
    if (m != Method::MM) {
        const double mu = std::max(p.eta1 / packets - sigma2, 0.0);
        r.mu_hat = mu;
        r.sigma_h2_hat = mu / (1.0 + std::norm(r.f_hat));
    }
    return r;
}

// Per-eigenmode 2x2 sample covariances built from the rows of V Y_i.
std::vector<Herm2> mode_covariances(const SufficientStats& st, const ChannelSpec& spec) {
    const auto l = static_cast<std::size_t>(st.l());
    const auto n = static_cast<std::size_t>(st.n());
    if (static_cast<std::size_t>(spec.l()) != l) {
        throw Error(Errc::ShapeMismatch, "ChannelSpec L does not match the statistics");
    }
    const ComplexMat w1 = spec.v() * st.y1;
    const ComplexMat w2 = spec.v() * st.y2;
    std::vector<Herm2> out(l);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < l; ++k) {
        Herm2& s = out[k];
        for (std::size_t j = 0; j < n; ++j) {
            s.a += std::norm(w1(k, j));
            s.c += std::norm(w2(k, j));
            s.b += w1(k, j) * std::conj(w2(k, j));
        }
        s.a *= inv_n;
        s.c *= inv_n;
        s.b *= inv_n;
    }
    return out;
}

Herm2 weighted(const std::vector<Herm2>& modes, const std::vector<double>& lambdas, double mu,
               double sigma2) {
    Herm2 s;
    for (std::size_t k = 0; k < modes.size(); ++k) {
        const double ml = mu * lambdas[k];
        if (ml == 0.0) continue;
        s.add_scaled(modes[k], ml / (ml + sigma2));
    }
    return s;
}

double log_penalty(const std::vector<double>& lambdas, double mu, double sigma2) {
    double acc = 0.0;
    for (double lam : lambdas) acc += std::log(mu * lam + sigma2);
    return sigma2 * acc;
}

// dg/dmu = e^H S'(mu) e - sigma2 sum_k lambda_k / (mu lambda_k + sigma2), e the principal
// eigenvector of S(mu).
double objective_slope(const std::vector<Herm2>& modes, const std::vector<double>& lambdas,
                       double mu, double sigma2) {
    const Herm2 s = weighted(modes, lambdas, mu, sigma2);
    const Principal2 p = principal2(s.a, s.c, s.b);
    Herm2 ds;
    double pen = 0.0;
    for (std::size_t k = 0; k < modes.size(); ++k) {
        const double den = mu * lambdas[k] + sigma2;
        ds.add_scaled(modes[k], lambdas[k] * sigma2 / (den * den));
        pen += lambdas[k] / den;
    }
    // unnormalized eigenvector (s12, gap), or (1, 0) when s is diagonal with a >= c
    cplx e1 = s.b, e2 = p.gap;
    if (s.b == cplx{}) {
        e1 = s.a >= s.c ? 1.0 : 0.0;
        e2 = s.a >= s.c ? 0.0 : 1.0;
    }
    const double nrm = std::norm(e1) + std::norm(e2);
    const cplx q = std::conj(e1) * (ds.a * e1 + ds.b * e2) +
                   std::conj(e2) * (std::conj(ds.b) * e1 + ds.c * e2);
    return q.real() / nrm - sigma2 * pen;
}

// Polishes an interior maximizer by bisection on the slope sign; the objective is
// too flat near its peak for comparisons alone to pin mu below ~sqrt(eps).
double polish_mu(const std::vector<Herm2>& modes, const std::vector<double>& lambdas, double mu,
                 double sigma2, double hi) {
    double a = mu * (1.0 - 1e-5), b = std::min(mu * (1.0 + 1e-5), hi);
    if (!(objective_slope(modes, lambdas, a, sigma2) > 0.0) ||
        !(objective_slope(modes, lambdas, b, sigma2) < 0.0)) {
        return mu;
    }
    for (int it = 0; it < 80 && b - a > 4e-16 * b; ++it) {
        const double m = 0.5 * (a + b);
        (objective_slope(modes, lambdas, m, sigma2) > 0.0 ? a : b) = m;
    }
    return 0.5 * (a + b);
}

}  // namespace

EstimateReport ml_single_packet(std::span<const cplx> y1, std::span<const cplx> y2,
                                double sigma2) {
    if (y1.empty() || y1.size() != y2.size()) {
        throw Error(Errc::ShapeMismatch, "y1 and y2 must be nonempty and of equal length");
    }
    if (!(sigma2 >= 0.0)) throw Error(Errc::DomainError, "sigma2 must be >= 0");
    Herm2 s;
    for (std::size_t j = 0; j < y1.size(); ++j) {
        s.a += std::norm(y1[j]);
        s.c += std::norm(y2[j]);
        s.b += std::conj(y2[j]) * y1[j];
    }
    const double inv_n = 1.0 / static_cast<double>(y1.size());
    s.a *= inv_n;
    s.c *= inv_n;
    s.b *= inv_n;
    return closed_form(s, sigma2, 1, Method::ML1);
}

ComplexMat build_T(const SufficientStats& stats) {
    sanitize_stats(stats);
    const Herm2 t = t_of(stats);
    return ComplexMat{{t.a, t.b}, {std::conj(t.b), t.c}};
}

EstimateReport ml_fast_fading(const SufficientStats& stats) {
    sanitize_stats(stats);
    return closed_form(t_of(stats), stats.sigma2, stats.l(), Method::ML_FF);
}

EstimateReport mm_estimator(const SufficientStats& stats) {
    sanitize_stats(stats);
    return closed_form(t_of(stats), stats.sigma2, stats.l(), Method::MM);
}

EstimateReport ml_multi_packet(const SufficientStats& stats, const ChannelSpec& spec) {
    sanitize_stats(stats);
    const std::vector<Herm2> modes = mode_covariances(stats, spec);
    const std::vector<double>& lam = spec.lambdas();
    const double sigma2 = stats.sigma2;

    EstimateReport r;
    r.method = Method::ML_MP;

    const Herm2 t = t_of(stats);
    const double hi = 10.0 * t.trace();
    if (!(hi > 0.0)) {
        r.degenerate = true;
        return r;
    }

    double mu = 0.0;
    if (sigma2 > 0.0) {
        auto g = [&](double m) {
            const Herm2 s = weighted(modes, lam, m, sigma2);
            return principal2(s.a, s.c, s.b).eta1 - log_penalty(lam, m, sigma2);
        };
        const ScalarMax best = maximize_scalar(g, 0.0, hi, 1e-10);
        if (!std::isfinite(best.value)) throw Error(Errc::OptimizerFailure, "objective not finite");
        mu = best.x > 0.0 ? polish_mu(modes, lam, best.x, sigma2, hi) : 0.0;
    }

    Herm2 s;
    if (sigma2 == 0.0) {
        // Noiseless: every mode with lambda > 0 enters with unit weight.
        for (std::size_t k = 0; k < modes.size(); ++k)
            if (lam[k] > 0.0) s.add_scaled(modes[k], 1.0);
    } else if (mu > 0.0) {
        s = weighted(modes, lam, mu, sigma2);
    } else {
        // mu -> 0+: S(mu) / mu tends to sum_k lambda_k S_k / sigma2.
        for (std::size_t k = 0; k < modes.size(); ++k) s.add_scaled(modes[k], lam[k]);
    }
    if (is_degenerate(s)) {
        r.degenerate = true;
        return r;
    }
    const Principal2 p = principal2(s.a, s.c, s.b);
    r.f_hat = f_from(s, p);
    if (sigma2 == 0.0) {
        // Likelihood unbounded; report the moment value, Tr C_H = L.
        mu = p.eta1 / stats.l();
    }
    r.mu_hat = mu;
    r.sigma_h2_hat = mu / (1.0 + std::norm(r.f_hat));
    return r;
}

double multi_packet_objective(const SufficientStats& stats, const ChannelSpec& spec, double mu,
                              std::span<const cplx, 2> e) {
    sanitize_stats(stats);
    const Herm2 s = weighted(mode_covariances(stats, spec), spec.lambdas(), mu, stats.sigma2);
    const cplx q = std::conj(e[0]) * (s.a * e[0] + s.b * e[1]) +
                   std::conj(e[1]) * (std::conj(s.b) * e[0] + s.c * e[1]);
    return q.real() - log_penalty(spec.lambdas(), mu, stats.sigma2);
}

ComplexMat mmse_channel(const SufficientStats& stats, cplx f, double sigma_h2,
                        const ChannelSpec& spec) {
    sanitize_stats(stats);
    if (!(sigma_h2 > 0.0)) throw Error(Errc::DomainError, "mmse_channel: sigma_h2 must be > 0");
    if (spec.l() != stats.l()) throw Error(Errc::ShapeMismatch, "ChannelSpec L mismatch");

    const double g = 1.0 + std::norm(f);
    const double ratio = stats.sigma2 / sigma_h2;
    const std::vector<double>& lam = spec.lambdas();
    // Eigenvalues of (1+|F|^2) C_H + ratio I.
    const double top = g * lam.front() + ratio;
    const double bottom = g * lam.back() + ratio;
    if (!(bottom > 0.0) || top / bottom > 1e12) {
        throw Error(Errc::SingularSystem, "mmse_channel: regularized matrix ill-conditioned");
    }

    ComplexMat z = stats.y1 + std::conj(f) * stats.y2;
    ComplexMat w = spec.v() * z;
    for (std::size_t k = 0; k < w.rows(); ++k) {
        const double d = lam[k] / (g * lam[k] + ratio);
        for (auto& v : w.row(k)) v *= d;
    }
    return spec.v().adjoint() * w;
}

void attach_impedance(EstimateReport& report, cplx z1, cplx z2) {
    if (report.degenerate) return;
    report.z_a_hat = recover_ZA(report.f_hat, z1, z2);
}

EstimateReport estimate(Method m, const SufficientStats& stats, const ChannelSpec& spec) {
    switch (m) {
        case Method::ML1:
            if (stats.l() != 1) throw Error(Errc::ShapeMismatch, "ML1 needs L = 1");
            return ml_single_packet(stats.y1.row(0), stats.y2.row(0), stats.sigma2);
        case Method::ML_MP: return ml_multi_packet(stats, spec);
        case Method::ML_FF: return ml_fast_fading(stats);
        case Method::MM: return mm_estimator(stats);
    }
    throw Error(Errc::DomainError, "unknown estimator");
}

}  // namespace implab
