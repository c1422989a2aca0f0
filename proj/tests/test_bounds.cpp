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
#include <random>

#include "implab/bounds.hpp"
#include "implab/errors.hpp"
#include "implab/numerics.hpp"
#include "oracles.hpp"

using namespace implab;

namespace {

const cplx kDipoleF{0.9646, -0.1032};

double crb_f_iid(cplx f, double s, double s2, int n, int l) {
    const double g = 1.0 + std::norm(f);
    return (s2 * s * g + s2 * s2) / (n * l * s * s);
}

double crb_s_iid(cplx f, double s, double s2, int n, int l) {
    const double g = 1.0 + std::norm(f);
    return (s * g + s2) * (s + s2) / (n * l * g);
}

// Unit-diagonal correlation with spectrum d (sum d = L): Q^H diag(d) Q, Q the unitary DFT.
ComplexMat with_spectrum(const std::vector<double>& d) {
    const std::size_t l = d.size();
    ComplexMat q(l, l), m(l, l);
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j)
            q(i, j) = std::polar(1.0 / std::sqrt(double(l)), -2.0 * std::numbers::pi * double(i * j) / double(l));
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j)
            for (std::size_t k = 0; k < l; ++k) m(i, j) += std::conj(q(k, i)) * d[k] * q(k, j);
    for (std::size_t i = 0; i < l; ++i) m(i, i) = m(i, i).real();
    return m;
}

}  // namespace

TEST(Crb, IidMatchesClosedForm) {
    std::mt19937_64 eng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const BoundReport ref = crb(kDipoleF, 1.0, 0.125, 4, std::vector<double>{1.0});
    EXPECT_NEAR(ref.crb_F / crb_f_iid(kDipoleF, 1.0, 0.125, 4, 1), 1.0, 1e-12);
    EXPECT_NEAR(ref.crb_sigma_h2 / crb_s_iid(kDipoleF, 1.0, 0.125, 4, 1), 1.0, 1e-12);
    for (int i = 0; i < 200; ++i) {
        const cplx f{4 * u(eng) - 2, 4 * u(eng) - 2};
        const double s = std::pow(10.0, 4 * u(eng) - 2);
        const double s2 = std::pow(10.0, 4 * u(eng) - 2);
        const int n = 1 + i % 8, l = 1 + i % 11;
        const BoundReport r = crb(f, s, s2, n, std::vector<double>(l, 1.0));
        EXPECT_NEAR(r.crb_F / crb_f_iid(f, s, s2, n, l), 1.0, 1e-12);
        EXPECT_NEAR(r.crb_sigma_h2 / crb_s_iid(f, s, s2, n, l), 1.0, 1e-12);
    }
}

TEST(Crb, ScalesAsOneOverL) {
    const BoundReport one = crb(kDipoleF, 1.0, 0.125, 4, std::vector<double>{1.0});
    for (int l : {2, 5, 10, 40}) {
        const BoundReport r = crb(kDipoleF, 1.0, 0.125, 4, std::vector<double>(l, 1.0));
        EXPECT_NEAR(r.crb_F * l / one.crb_F, 1.0, 1e-12);
        EXPECT_NEAR(r.crb_sigma_h2 * l / one.crb_sigma_h2, 1.0, 1e-12);
    }
}

TEST(Fim, ModesAddAndRescale) {
    // Each eigenmode behaves like an i.i.d. packet with variance lambda sigma_h2; the
    // chain rule through s -> lambda s gives the per-mode information.
    const std::vector<double> lam{3.5757, 1.3589, 0.0646, 7.0552e-4, 2.3617e-6};
    const double s = 0.7, s2 = 0.05;
    const ComplexMat total = fim_multi(kDipoleF, s, s2, 4, lam);
    ComplexMat sum(2, 2);
    for (double l : lam) {
        const ComplexMat unit = fim_multi(kDipoleF, l * s, s2, 4, std::vector<double>{1.0});
        ComplexMat m(2, 2);
        m(0, 0) = unit(0, 0);
        m(0, 1) = l * unit(0, 1);
        m(1, 0) = l * unit(1, 0);
        m(1, 1) = l * l * unit(1, 1);
        EXPECT_LT(max_abs_diff(m, fim_multi(kDipoleF, s, s2, 4, std::vector<double>{l})),
                  1e-12 * m.max_abs());
        sum += m;
    }
    EXPECT_LT(max_abs_diff(sum, total), 1e-12 * total.max_abs());
    EXPECT_TRUE(total.is_hermitian());
}

TEST(Fim, PositiveDefinite) {
    std::mt19937_64 eng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        std::vector<double> lam(1 + i % 9);
        for (auto& v : lam) v = std::pow(10.0, 6 * u(eng) - 5);
        const cplx f{4 * u(eng) - 2, 4 * u(eng) - 2};
        const ComplexMat m = fim_multi(f, std::pow(10.0, 2 * u(eng) - 1), std::pow(10.0, 3 * u(eng) - 2), 4, lam);
        oracle::Mat a(2, 2), ch(2, 2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) a(r, c) = m(r, c);
        EXPECT_TRUE(oracle::cholesky(a, ch)) << i;
    }
}

TEST(Fim, Limits) {
    const std::vector<double> lam{1.0, 1.0, 1.0};
    // entries involving F vanish; the sigma_h2 entry tends to N L (1+|F|^2)^2 / sigma2^2
    const ComplexMat weak = fim_multi(kDipoleF, 1e-12, 0.1, 4, lam);
    EXPECT_LT(std::abs(weak(0, 0)), 1e-20);
    const double g = 1.0 + std::norm(kDipoleF);
    EXPECT_NEAR(std::abs(weak(0, 1)) / (4 * 3 * g * std::abs(kDipoleF) * 1e-12 / 0.01), 1.0, 1e-9);
    EXPECT_NEAR(weak(1, 1).real() / (4 * 3 * g * g / 0.01), 1.0, 1e-9);
    double prev = crb(kDipoleF, 1.0, 1.0, 4, lam).crb_F;
    for (double s2 : {1e-1, 1e-2, 1e-4, 1e-8}) {
        const double c = crb(kDipoleF, 1.0, s2, 4, lam).crb_F;
        EXPECT_LT(c, prev);
        prev = c;
    }
    EXPECT_LT(prev, 1e-7);
    EXPECT_THROW(fim_multi(kDipoleF, 0.0, 0.1, 4, lam), Error);
    EXPECT_THROW(fim_multi(kDipoleF, 1.0, 0.0, 4, lam), Error);
    EXPECT_THROW(fim_multi(kDipoleF, 1.0, -1.0, 4, lam), Error);
}

TEST(Bcrb, IidClosedFormAndLimits) {
    std::mt19937_64 eng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const cplx f{4 * u(eng) - 2, 4 * u(eng) - 2};
        const double s = std::pow(10.0, 2 * u(eng) - 1), s2 = std::pow(10.0, 2 * u(eng) - 1);
        const ChannelSpec spec = ChannelSpec::iid(4, 1 + i % 6, s);
        const double expect = s * s2 / (s * (1.0 + std::norm(f)) + s2);
        EXPECT_NEAR(bayesian_crb_H(f, s, s2, spec) / expect, 1.0, 1e-13);
    }
    const ChannelSpec spec(4, 2.0, clarke_correlation(5, 97.2, 1e-3));
    EXPECT_NEAR(bayesian_crb_H(kDipoleF, 2.0, 1e12, spec), 2.0, 1e-9);
    EXPECT_LT(bayesian_crb_H(kDipoleF, 2.0, 1e-12, spec), 1e-10);
}

TEST(Bcrb, DecreasesAsSpectrumConcentrates) {
    // lambda(t) = (1 - t) 1 + t L e_1 keeps the trace at L
    for (int l : {2, 5, 10}) {
        double prev = 1e300;
        for (int j = 0; j <= 20; ++j) {
            const double t = j / 20.0;
            std::vector<double> d(l, 1.0 - t);
            d[0] += t * l;
            const double b = bayesian_crb_H(kDipoleF, 1.0, 0.2, ChannelSpec(4, 1.0, with_spectrum(d)));
            if (j > 0) EXPECT_LT(b, prev) << "L=" << l << " t=" << t;
            prev = b;
        }
    }
    // Two-mode family: raise lambda_1, lower lambda_2, trace fixed.
    double prev = 1e300;
    for (int j = 0; j < 10; ++j) {
        const double x = j / 10.0;
        const double b = bayesian_crb_H(kDipoleF, 1.0, 0.5, ChannelSpec(4, 1.0, with_spectrum({1.0 + x, 1.0 - x})));
        if (j > 0) EXPECT_LT(b, prev);
        prev = b;
    }
}

TEST(GammaEff, ExamplesAndLimits) {
    EXPECT_NEAR(gamma_eff(10.0, 4, 64), 10.0 / 1.06875, 1e-13);
    EXPECT_NEAR(gamma_eff(10.0, 4, 64), 9.35673, 1e-5);
    EXPECT_NEAR(gamma_eff(10.0, 4, 1 << 30), 10.0, 1e-7);
    EXPECT_NEAR(gamma_eff(1e12, 4, 64) / (1e12 / (1.0 + 4.0 / 64)), 1.0, 1e-11);
    for (double g : {1e-3, 0.1, 1.0, 10.0, 1e4}) EXPECT_LE(gamma_eff(g, 4, 16), g);
    EXPECT_THROW(gamma_eff(0.0, 4, 64), Error);
}

TEST(GammaEff, ResidualMmse) {
    EXPECT_NEAR(mmse_j1(1.0, 0.5, 2.0, 4, 64), 0.5 / (0.5 + 32.0), 1e-15);
    EXPECT_NEAR(mmse_j1(2.0, 1e-12, 1.0, 4, 64), 0.0, 1e-11);
    // with sigma_n2 = P sigma_h2 / gamma the effective SNR identity holds
    const double p = 1.0, s = 1.0, gamma = 10.0, sn = p * s / gamma;
    const double j1 = mmse_j1(s, sn, p, 4, 64);
    const double snr = (s - j1) * p / (sn + j1 * p);
    EXPECT_NEAR(snr, gamma_eff(gamma, 4, 64), 1e-12);
}

TEST(Capacity, MatchesMonteCarlo) {
    for (double g : {1.0, 10.0, 100.0}) {
        double se = 0.0;
        const double mc = oracle::capacity_mc(g, 4, 1000000, 77, &se);
        EXPECT_NEAR(capacity_lb(g, 4), mc, 0.01) << g;
        EXPECT_NEAR(capacity_lb(g, 4), mc, 5 * se + 1e-12) << g;
    }
    for (int n : {1, 2, 7}) {
        double se = 0.0;
        const double mc = oracle::capacity_mc(3.0, n, 200000, 78 + n, &se);
        EXPECT_NEAR(capacity_lb(3.0, n), mc, 5 * se) << n;
    }
}

TEST(Capacity, FourAntennaForms) {
    // sum_{k<=4} e^a E_k(a) by hand: (a^2 - 4a + 11)/6 + e^a E1(a)(1 - a + a^2/2 - a^3/6)
    for (double g : {0.05, 0.3, 1.0, 4.0, 10.0, 100.0, 1e4}) {
        const double a = 4.0 / g;
        const double e1 = expint_en_scaled(1, a);
        const double exact = std::log2(std::exp(1.0)) *
                             ((a * a - 4 * a + 11) / 6 + e1 * (1 - a + a * a / 2 - a * a * a / 6));
        EXPECT_NEAR(capacity_lb(g, 4), exact, 1e-10 * (1 + exact)) << g;
    }
    // The tau-form with tau(x) = 2 - x(2 + x^2 - x) does not reduce to the sum;
    // it misses the 1/3 factors and goes negative at low SNR.
    for (double g : {0.1, 1.0, 10.0}) {
        const double diff = capacity_lb_tau4(g) - capacity_lb(g, 4);
        RecordProperty("tau_minus_lb_at_" + std::to_string(static_cast<int>(g * 10)), std::to_string(diff));
        EXPECT_GT(std::abs(diff), 0.01) << g;
    }
    EXPECT_LT(capacity_lb_tau4(0.1), 0.0);
}

TEST(Capacity, MonotoneConcaveAndLimits) {
    std::vector<double> c;
    for (int i = 0; i <= 120; ++i) c.push_back(capacity_lb(std::pow(10.0, -3.0 + i * 0.05), 4));
    for (std::size_t i = 1; i < c.size(); ++i) EXPECT_GT(c[i], c[i - 1]);
    // concave in gamma: second difference on a linear grid
    for (double g0 : {0.01, 0.5, 3.0, 40.0}) {
        const double h = g0 * 0.01;
        EXPECT_LT(capacity_lb(g0 + h, 4) - 2 * capacity_lb(g0, 4) + capacity_lb(g0 - h, 4), 0.0);
    }
    EXPECT_LT(capacity_lb(1e-8, 4), 1e-7);
    EXPECT_GT(capacity_lb(1e-8, 4), 0.0);
    EXPECT_TRUE(std::isfinite(capacity_lb(1e-6, 4)));
    EXPECT_NEAR(capacity_lb(1e6, 4), std::log2(1e6), 1.0);
    EXPECT_THROW(capacity_lb(0.0, 4), Error);
    EXPECT_THROW(capacity_lb(1.0, 0), Error);
}
