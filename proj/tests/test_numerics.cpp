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

#include "implab/complex_mat.hpp"
#include "implab/errors.hpp"
#include "implab/numerics.hpp"
#include "oracles.hpp"

using namespace implab;

namespace {

ComplexMat random_hermitian_psd(int l, std::mt19937_64& eng) {
    std::normal_distribution<double> nd;
    ComplexMat a(l, l);
    for (auto& v : a.data()) v = {nd(eng), nd(eng)};
    return a * a.adjoint();
}

}  // namespace

TEST(ComplexMat, ShapesAndProducts) {
    ComplexMat a{{1.0, cplx(0, 1)}, {2.0, 3.0}};
    ComplexMat b = ComplexMat::identity(2);
    EXPECT_EQ(a * b, a);
    EXPECT_EQ(a.adjoint()(0, 1), 2.0);
    EXPECT_EQ(a.adjoint()(1, 0), cplx(0, -1));
    EXPECT_EQ(a.trace(), cplx(4.0));
    EXPECT_THROW(a * ComplexMat(3, 3), Error);
    EXPECT_NEAR(trace_ab_h(a, a).real(), 1 + 1 + 4 + 9, 1e-15);
}

TEST(HermEig2, ClosedFormMatchesDefinition) {
    std::mt19937_64 eng(7);
    for (int rep = 0; rep < 200; ++rep) {
        const ComplexMat s = random_hermitian_psd(2, eng);
        const EigSys2 e = herm_eig2(s);
        EXPECT_GE(e.eta1, e.eta2);
        for (const auto& [vec, eta] : {std::pair{e.e1, e.eta1}, std::pair{e.e2, e.eta2}}) {
            for (int i = 0; i < 2; ++i) {
                const cplx sv = s(i, 0) * vec[0] + s(i, 1) * vec[1];
                EXPECT_NEAR(std::abs(sv - eta * vec[i]), 0.0, 1e-12 * (1 + e.eta1));
            }
            EXPECT_NEAR(std::norm(vec[0]) + std::norm(vec[1]), 1.0, 1e-12);
        }
    }
}

TEST(HermEig2, DiagonalAndStableGap) {
    const EigSys2 d = herm_eig2(ComplexMat{{2.0, 0.0}, {0.0, 5.0}});
    EXPECT_DOUBLE_EQ(d.eta1, 5.0);
    EXPECT_EQ(d.e1[1], cplx(1.0));
    // s11 >> s22 with tiny coupling: gap = |s12|^2 / (s11 - s22) approximately
    const Principal2 p = principal2(1.0, 0.0, cplx(1e-9, 0.0));
    EXPECT_NEAR(p.gap, 1e-18, 1e-30);
    EXPECT_THROW(herm_eig2(ComplexMat{{1.0, 2.0}, {3.0, 1.0}}), Error);
}

TEST(HermEigN, ReconstructsAndIsUnitary) {
    std::mt19937_64 eng(11);
    for (int l : {1, 2, 3, 5, 10, 20}) {
        const ComplexMat c = random_hermitian_psd(l, eng);
        const HermEig e = herm_eig_n(c);
        ASSERT_EQ(e.lambdas.size(), static_cast<std::size_t>(l));
        for (int k = 1; k < l; ++k) EXPECT_GE(e.lambdas[k - 1], e.lambdas[k]);
        const ComplexMat back = e.v.adjoint() * ComplexMat::diagonal(e.lambdas) * e.v;
        EXPECT_LT(max_abs_diff(back, c), 1e-11 * c.max_abs());
        EXPECT_LT(max_abs_diff(e.v * e.v.adjoint(), ComplexMat::identity(l)), 1e-12);
    }
}

TEST(HermEigN, KnownTridiagonalSpectrum) {
    // Eigenvalues of a real symmetric tridiagonal Toeplitz matrix are known:
    // 2 - 2 cos(k pi / (l + 1)) for [-1 2 -1].
    const int l = 6;
    ComplexMat c(l, l);
    for (int i = 0; i < l; ++i) {
        c(i, i) = 2.0;
        if (i + 1 < l) c(i, i + 1) = c(i + 1, i) = -1.0;
    }
    const HermEig e = herm_eig_n(c);
    for (int k = 1; k <= l; ++k) {
        const double expect = 2.0 - 2.0 * std::cos((l + 1 - k) * std::numbers::pi / (l + 1));
        EXPECT_NEAR(e.lambdas[k - 1], expect, 1e-13);
    }
}

TEST(HermEigN, RejectsIndefiniteAndNonHermitian) {
    EXPECT_THROW(herm_eig_n(ComplexMat{{1.0, 0.0}, {0.0, -1.0}}), Error);
    EXPECT_THROW(herm_eig_n(ComplexMat{{1.0, 1.0}, {0.0, 1.0}}), Error);
}

TEST(BesselJ0, AgreesWithIntegralAndStd) {
    for (double x = 0.0; x <= 60.0; x += 0.37) {
        const double v = bessel_j0(x);
        EXPECT_NEAR(v, oracle::j0_integral(x), 1e-12) << x;
        EXPECT_NEAR(v, std::cyl_bessel_j(0.0, x), 1e-12) << x;
    }
    EXPECT_NEAR(bessel_j0(0.61073), 0.908903612500, 1e-9);
    EXPECT_DOUBLE_EQ(bessel_j0(-2.5), bessel_j0(2.5));
}

TEST(ExpInt, AgreesWithQuadratureAndStd) {
    for (double a : {1e-3, 0.05, 0.3, 0.99, 1.0, 1.7, 3.9, 4.1, 10.0, 35.0}) {
        EXPECT_NEAR(expint_en(1, a), -std::expint(-a), 1e-13 * (1 + -std::expint(-a))) << a;
        for (int n = 1; n <= 6; ++n) {
            const double q = oracle::expint_quadrature(n, a);
            EXPECT_NEAR(expint_en(n, a) / q, 1.0, 1e-9) << "n=" << n << " a=" << a;
            EXPECT_NEAR(expint_en_scaled(n, a) / (std::exp(a) * q), 1.0, 1e-9);
        }
    }
    EXPECT_NEAR(expint_en(1, 1.0), 0.219383934396, 1e-12);
}

TEST(ExpInt, ScaledStaysFiniteForLargeArgument) {
    // e^a E_n(a) ~ 1/(a + n) for a >> n
    for (double a : {1e2, 1e4, 1e6}) {
        for (int n = 1; n <= 8; ++n) {
            const double v = expint_en_scaled(n, a);
            EXPECT_TRUE(std::isfinite(v));
            EXPECT_NEAR(v * (a + n), 1.0, 2.0 * n / (a * a) + 1e-12);
        }
    }
    EXPECT_THROW(expint_en(1, 0.0), Error);
    EXPECT_THROW(expint_en(0, 1.0), Error);
}

TEST(MaximizeScalar, FindsInteriorAndBoundaryMaxima) {
    const ScalarMax a = maximize_scalar([](double x) { return -(x - 3.3) * (x - 3.3); }, 0.0, 10.0, 1e-12);
    EXPECT_NEAR(a.x, 3.3, 1e-6);
    const ScalarMax b = maximize_scalar([](double x) { return -x; }, 0.0, 5.0, 1e-12);
    EXPECT_LT(b.x, 1e-8);
    // L [mu eta/(mu + s) - s ln(mu + s)] peaks at eta - s
    const double eta = 2.5, s = 0.4, l = 7.0;
    const ScalarMax c = maximize_scalar(
        [&](double m) { return l * (m * eta / (m + s) - s * std::log(m + s)); }, 0.0, 50.0, 1e-12);
    EXPECT_NEAR(c.x, eta - s, 1e-6);
    EXPECT_THROW(maximize_scalar([](double) { return 0.0; }, 1.0, 1.0, 1e-9), Error);
}

TEST(Solve, SolvesAndDetectsSingular) {
    std::mt19937_64 eng(3);
    const ComplexMat a = random_hermitian_psd(4, eng) + ComplexMat::identity(4);
    ComplexMat x(4, 2);
    std::normal_distribution<double> nd;
    for (auto& v : x.data()) v = {nd(eng), nd(eng)};
    EXPECT_LT(max_abs_diff(solve(a, a * x), x), 1e-10);
    EXPECT_THROW(solve(ComplexMat(2, 2), ComplexMat(2, 1)), Error);
}
