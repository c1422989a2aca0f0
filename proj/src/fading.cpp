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

#include "implab/fading.hpp"

#include <cmath>
#include <numbers>

#include "implab/errors.hpp"

namespace implab {

ChannelSpec::ChannelSpec(int n, double sigma_h2, ComplexMat c_h)
    : n_(n), sigma_h2_(sigma_h2), c_h_(std::move(c_h)) {
    if (n_ < 1) throw Error(Errc::DomainError, "ChannelSpec: N must be >= 1");
    if (!(sigma_h2_ >= 0.0)) throw Error(Errc::DomainError, "ChannelSpec: sigma_h2 must be >= 0");
    if (c_h_.rows() < 1 || c_h_.rows() != c_h_.cols()) {
        throw Error(Errc::ShapeMismatch, "ChannelSpec: C_H must be square");
    }
    for (std::size_t k = 0; k < c_h_.rows(); ++k) {
        if (std::abs(c_h_(k, k) - 1.0) > 1e-12) {
            throw Error(Errc::DomainError, "ChannelSpec: C_H must have unit diagonal");
        }
    }
    eig_ = herm_eig_n(c_h_);
}

ChannelSpec ChannelSpec::iid(int n, int l, double sigma_h2) {
    return {n, sigma_h2, ComplexMat::identity(static_cast<std::size_t>(l))};
}

ChannelSpec ChannelSpec::with_sigma_h2(double sigma_h2) const {
    if (!(sigma_h2 >= 0.0)) throw Error(Errc::DomainError, "sigma_h2 must be >= 0");
    ChannelSpec out = *this;
    out.sigma_h2_ = sigma_h2;
    return out;
}

double doppler_hz(double v_kmh, double f_c_hz) {
    if (v_kmh < 0.0 || !(f_c_hz > 0.0)) {
        throw Error(Errc::DomainError, "doppler_hz: need v >= 0 and f_c > 0");
    }
    return (v_kmh / 3.6) / (kSpeedOfLight / f_c_hz);
}

ComplexMat clarke_correlation(int l, double f_d, double t_s) {
    if (l < 1 || f_d < 0.0 || !(t_s > 0.0)) {
        throw Error(Errc::DomainError, "clarke_correlation: need L >= 1, f_d >= 0, T_s > 0");
    }
    std::vector<double> lag(static_cast<std::size_t>(l));
    for (int k = 0; k < l; ++k) lag[k] = bessel_j0(2.0 * std::numbers::pi * f_d * t_s * k);
    ComplexMat c(l, l);
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) c(i, j) = lag[std::abs(i - j)];
    return c;
}

FadingDraw sample_H(const ChannelSpec& spec, Substream& rng) {
    const auto l = static_cast<std::size_t>(spec.l());
    const auto n = static_cast<std::size_t>(spec.n());
    ComplexMat g(l, n);
    for (auto& v : g.data()) v = rng.complex_normal(1.0);
    if (spec.sigma_h2() == 0.0) return {ComplexMat(l, n)};

    // diag(sqrt(lambda)) G, then V^H from the left
    const double s = std::sqrt(spec.sigma_h2());
    for (std::size_t k = 0; k < l; ++k) {
        const double w = s * std::sqrt(spec.lambdas()[k]);
        for (auto& v : g.row(k)) v *= w;
    }
    ComplexMat h(l, n);
    const ComplexMat& vm = spec.v();
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t k = 0; k < l; ++k) {
            const cplx vh = std::conj(vm(k, i));
            if (vh == cplx{}) continue;
            for (std::size_t j = 0; j < n; ++j) h(i, j) += vh * g(k, j);
        }
    return {std::move(h)};
}

std::vector<cplx> sos_sequence(int l, double f_d, double t_s, int m_sin, Substream& rng) {
    if (l < 1 || m_sin < 8 || f_d < 0.0 || !(t_s > 0.0)) {
        throw Error(Errc::DomainError, "sos_sequence: need L >= 1, M >= 8, f_d >= 0, T_s > 0");
    }
    const double pi = std::numbers::pi;
    const double theta = rng.uniform(-pi, pi);
    const double phi = rng.uniform(-pi, pi);
    std::vector<double> alpha(m_sin), psi(m_sin);
    for (int m = 0; m < m_sin; ++m) {
        alpha[m] = (2.0 * pi * (m + 1) - pi + theta) / (4.0 * m_sin);
        psi[m] = rng.uniform(-pi, pi);
    }
    const double wd = 2.0 * pi * f_d;
    // X_c and X_s each carry unit power; 1/sqrt(2) brings |X|^2 to unit mean.
    const double amp = 2.0 / std::sqrt(static_cast<double>(m_sin)) / std::sqrt(2.0);
    std::vector<cplx> out(l);
    for (int k = 0; k < l; ++k) {
        const double t = k * t_s;
        double xc = 0.0, xs = 0.0;
        for (int m = 0; m < m_sin; ++m) {
            const double carrier = std::cos(wd * t * std::cos(alpha[m]) + phi);
            xc += std::cos(psi[m]) * carrier;
            xs += std::sin(psi[m]) * carrier;
        }
        out[k] = {amp * xc, amp * xs};
    }
    return out;
}

FadingDraw sample_H_sos(int n, int l, double sigma_h2, double f_d, double t_s, int m_sin,
                        Substream& rng) {
    ComplexMat h(l, n);
    const double s = std::sqrt(sigma_h2);
    for (int j = 0; j < n; ++j) {
        const auto seq = sos_sequence(l, f_d, t_s, m_sin, rng);
        for (int k = 0; k < l; ++k) h(k, j) = s * seq[k];
    }
    return {std::move(h)};
}

}  // namespace implab
