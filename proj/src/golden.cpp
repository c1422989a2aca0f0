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

#include "implab/golden.hpp"

#include <array>
#include <cmath>
#include <cstdio>

#include "implab/fading.hpp"
#include "implab/frontend.hpp"

namespace implab {

namespace {

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

}  // namespace

std::vector<GoldenCheck> golden_checks() {
    std::vector<GoldenCheck> out;
    const cplx za{73.0, 42.5}, z1{50.0, 0.0}, z2{60.0, 20.0};
    const cplx f_ref{0.9646, -0.1032};

    const cplx f = compute_F({za, z1, z2});
    out.push_back({"F(73+j42.5, 50, 60+j20) = 0.9646-j0.1032",
                   std::abs(f.real() - f_ref.real()) <= 5e-4 &&
                       std::abs(f.imag() - f_ref.imag()) <= 5e-4,
                   fmt("got %.6f%+.6fj", f.real(), f.imag())});

    const cplx za_hat = recover_ZA(f_ref, z1, z2);
    out.push_back({"recover_ZA(0.9646-j0.1032) = 73+j42.5",
                   std::abs(za_hat.real() - 73.0) <= 0.1 && std::abs(za_hat.imag() - 42.5) <= 0.1,
                   fmt("got %.4f%+.4fj", za_hat.real(), za_hat.imag())});

    const ComplexMat c = clarke_correlation(5, 97.2, 1e-3);
    const std::array<double, 5> row{1.0, 0.9089, 0.6602, 0.3210, -0.0199};
    double worst = 0.0;
    for (int k = 0; k < 5; ++k) worst = std::max(worst, std::abs(c(0, k).real() - row[k]));
    out.push_back({"Clarke row at 97.2 Hz, T_s = 1 ms", worst <= 5e-4,
                   fmt("max deviation %.2e", worst)});

    const ChannelSpec moderate(4, 1.0, c);
    const std::array<double, 3> top{3.5757, 1.3589, 0.0646};
    double worst_rel = 0.0;
    for (int k = 0; k < 3; ++k) {
        worst_rel = std::max(worst_rel, std::abs(moderate.lambdas()[k] - top[k]) / top[k]);
    }
    out.push_back({"moderate C_H eigenvalues 3.5757, 1.3589, 0.0646", worst_rel <= 1e-3,
                   fmt("max relative deviation %.2e; trailing %.4e, %.4e", worst_rel,
                       moderate.lambdas()[3], moderate.lambdas()[4])});

    const ChannelSpec slow(4, 1.0, clarke_correlation(5, 9.72, 1e-3));
    const double lam = slow.lambdas()[0];
    out.push_back({"slow C_H top eigenvalue 4.981", std::abs(lam - 4.981) <= 1e-3,
                   fmt("got %.5f", lam)});

    const double fd = doppler_hz(50.0, 2.1e9);
    out.push_back({"Doppler at 50 km/h, 2.1 GHz near 97.2 Hz", std::abs(fd - 97.2) <= 0.1,
                   fmt("got %.3f Hz", fd)});
    return out;
}

}  // namespace implab
