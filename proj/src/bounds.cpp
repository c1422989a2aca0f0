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

#include "implab/bounds.hpp"

#include <cmath>
#include <numbers>

#include "implab/errors.hpp"
#include "implab/numerics.hpp"

namespace implab {

namespace {
constexpr double kLog2e = std::numbers::log2e;
}

ComplexMat fim_multi(cplx f, double sigma_h2, double sigma2, int n,
                     std::span<const double> lambdas) {
    if (!(sigma_h2 > 0.0) || !(sigma2 > 0.0) || n < 1 || lambdas.empty()) {
        throw Error(Errc::DomainError, "fim_multi: need sigma_h2 > 0, sigma2 > 0, N >= 1");
    }
    const double g = 1.0 + std::norm(f);
    const double s4 = sigma_h2 * sigma_h2;
    double a11 = 0.0, w = 0.0;
    for (double lam : lambdas) {
        const double den = lam * sigma_h2 * g + sigma2;
        const double wk = lam * lam / (den * den);
        w += wk;
        a11 += wk * s4 * (lam * sigma_h2 / sigma2 + 1.0);
    }
    const double scale = n * g;
    return ComplexMat{{scale * a11, scale * w * f * sigma_h2},
                      {scale * w * std::conj(f) * sigma_h2, scale * w * g}};
}

BoundReport crb(cplx f, double sigma_h2, double sigma2, int n, std::span<const double> lambdas) {
    BoundReport r;
    r.fim = fim_multi(f, sigma_h2, sigma2, n, lambdas);
    const double i11 = r.fim(0, 0).real();
    const double i22 = r.fim(1, 1).real();
    const double det = i11 * i22 - std::norm(r.fim(0, 1));
    if (!(det > 1e-300) || !(det > 1e-14 * i11 * i22)) {
        throw Error(Errc::SingularFIM, "crb: Fisher information is singular");
    }
    r.crb_F = i22 / det;
    r.crb_sigma_h2 = i11 / det;
    return r;
}

double bayesian_crb_H(cplx f, double sigma_h2, double sigma2, const ChannelSpec& spec) {
    if (!(sigma_h2 >= 0.0) || !(sigma2 > 0.0)) {
        throw Error(Errc::DomainError, "bayesian_crb_H: need sigma_h2 >= 0, sigma2 > 0");
    }
    const double g = 1.0 + std::norm(f);
    double acc = 0.0;
    for (double lam : spec.lambdas()) acc += sigma_h2 * lam / (sigma_h2 * g * lam / sigma2 + 1.0);
    return acc / spec.l();
}

double gamma_eff(double gamma, int n, int t) {
    if (!(gamma > 0.0) || n < 1 || t < 1) {
        throw Error(Errc::DomainError, "gamma_eff: need gamma > 0, N >= 1, T >= 1");
    }
    return gamma / (1.0 + (1.0 + 1.0 / gamma) * n / t);
}

double mmse_j1(double sigma_h2, double sigma_n2, double p, int n, int t) {
    if (!(sigma_h2 >= 0.0) || !(sigma_n2 > 0.0) || !(p > 0.0) || n < 1 || t < 1) {
        throw Error(Errc::DomainError, "mmse_j1: invalid link budget");
    }
    return sigma_h2 * sigma_n2 / (sigma_n2 + t * p * sigma_h2 / n);
}

double capacity_lb(double gamma_eff, int n) {
    if (!(gamma_eff > 0.0) || n < 1) {
        throw Error(Errc::DomainError, "capacity_lb: need gamma_eff > 0, N >= 1");
    }
    const double a = n / gamma_eff;
    double acc = 0.0;
    for (int k = 1; k <= n; ++k) acc += expint_en_scaled(k, a);
    return kLog2e * acc;
}

double capacity_lb_tau4(double gamma_eff) {
    if (!(gamma_eff > 0.0)) throw Error(Errc::DomainError, "capacity_lb_tau4: gamma_eff > 0");
    const double a = 4.0 / gamma_eff;
    const double tau = 2.0 - a * (2.0 + a * a - a);
    return 0.5 * kLog2e * ((a - 1.0) * (a - 1.0) + 8.0 / 3.0 + tau * expint_en_scaled(1, a));
}

}  // namespace implab
