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

#include "implab/frontend.hpp"

#include <cmath>

#include "implab/errors.hpp"

namespace implab {

namespace {

void require_passive(cplx z, const char* what) {
    if (!(z.real() > 0.0)) {
        throw Error(Errc::NonPassive, std::string(what) + " must have positive resistance");
    }
}

}  // namespace

void ImpedanceSet::validate() const {
    require_passive(z_a, "Z_A");
    require_passive(z1, "Z1");
    require_passive(z2, "Z2");
    if (z1 == z2) throw Error(Errc::DomainError, "Z1 == Z2 leaves Z_A unidentifiable");
}

cplx compute_F(const ImpedanceSet& imp) {
    require_passive(imp.z_a, "Z_A");
    require_passive(imp.z1, "Z1");
    require_passive(imp.z2, "Z2");
    const cplx den = imp.z2 + imp.z_a;
    if (std::abs(den) < 1e-12) throw Error(Errc::SingularCircuit, "|Z2 + Z_A| vanishes");
    return std::sqrt(imp.r2() / imp.r1()) * (imp.z1 + imp.z_a) / den;
}

cplx recover_ZA(cplx f, cplx z1, cplx z2) {
    require_passive(z1, "Z1");
    require_passive(z2, "Z2");
    const double c = std::sqrt(z1.real() / z2.real());
    const cplx den = 1.0 - c * f;
    if (std::abs(den) < 1e-12) {
        throw Error(Errc::SingularInversion, "1 - sqrt(R1/R2) F vanishes");
    }
    return (z2 * c * f - z1) / den;
}

cplx conjugate_match(cplx z_a) {
    require_passive(z_a, "Z_A");
    return std::conj(z_a);
}

double mismatch_loss(cplx z_a, cplx z_l) {
    require_passive(z_a, "Z_A");
    require_passive(z_l, "Z_L");
    return 4.0 * z_a.real() * z_l.real() / std::norm(z_a + z_l);
}

cplx find_mismatched_load(cplx z_a, double loss_db) {
    require_passive(z_a, "Z_A");
    if (!(loss_db >= 0.0)) throw Error(Errc::DomainError, "loss_db must be non-negative");
    const double target = std::pow(10.0, -loss_db / 10.0);
    // M(R) over real loads peaks at R = |Z_A| and decays to 0 as R grows.
    double lo = std::abs(z_a);
    if (mismatch_loss(z_a, lo) < target) {
        // Small losses: keep R_L = R_A and detune the reactance, which gives
        // M = 4 R_A^2 / (4 R_A^2 + (X_A + X_L)^2).
        const double r = z_a.real();
        return {r, -z_a.imag() + 2.0 * r * std::sqrt(1.0 / target - 1.0)};
    }
    double hi = lo;
    while (mismatch_loss(z_a, hi) > target) {
        hi *= 2.0;
        if (hi > 1e15) throw Error(Errc::DomainError, "loss target bracket failed");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (mismatch_loss(z_a, mid) > target ? lo : hi) = mid;
    }
    return {0.5 * (lo + hi), 0.0};
}

double sigma_h2_from_gain(double sigma_g2, cplx z_a, cplx z1) {
    require_passive(z_a, "Z_A");
    require_passive(z1, "Z1");
    if (sigma_g2 < 0.0) throw Error(Errc::DomainError, "sigma_g2 must be non-negative");
    return z1.real() * sigma_g2 / std::norm(z_a + z1);
}

double effective_sigma2(double sigma_n2, int n, double p, int t) {
    if (!(p > 0.0) || n < 1 || t < 1 || sigma_n2 < 0.0) {
        throw Error(Errc::DomainError, "effective_sigma2 needs positive N, P, T");
    }
    return 2.0 * n * sigma_n2 / (p * t);
}

double noise_for_snr(double gamma, double sigma_h2, double p) {
    if (!(gamma > 0.0)) throw Error(Errc::DomainError, "SNR must be positive");
    return p * sigma_h2 / gamma;
}

}  // namespace implab
