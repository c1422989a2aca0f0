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

#pragma once

#include <cmath>

#include "implab/complex_mat.hpp"

namespace implab {

/// Antenna impedance and the two switched receiver loads, in ohms.
/// Z1 is the load used for data reception, Z2 the perturbation.
struct ImpedanceSet {
    cplx z_a;
    cplx z1;
    cplx z2;

    double r_a() const noexcept { return z_a.real(); }
    double r1() const noexcept { return z1.real(); }
    double r2() const noexcept { return z2.real(); }

    /// Throws NonPassive for non-positive resistances and DomainError when
    /// Z1 == Z2 (F is then identically sqrt(R2/R1) and Z_A unidentifiable).
    void validate() const;
};

/// Path-gain, noise and power figures for one link.
struct LinkBudget {
    double sigma_g2 = 0.0;  ///< path-gain variance
    double sigma_h2 = 0.0;  ///< variance of the effective channel h
    double sigma_n2 = 0.0;  ///< amplifier noise power
    double p = 0.0;         ///< per-symbol total transmit power
    double gamma = 0.0;     ///< post-detection SNR, P sigma_h2 / sigma_n2
    double sigma2 = 0.0;    ///< per-entry noise variance of the sufficient statistics
};

/// F = sqrt(R2) (Z1 + ZA) / (sqrt(R1) (Z2 + ZA)).
cplx compute_F(const ImpedanceSet& imp);

/// Inverse of compute_F for known loads.
cplx recover_ZA(cplx f, cplx z1, cplx z2);

/// Load that maximizes delivered power: Z_A*.
cplx conjugate_match(cplx z_a);

/// Delivered power relative to a conjugate match, 4 R_A R_L / |Z_A + Z_L|^2.
double mismatch_loss(cplx z_a, cplx z_l);

/// Load whose mismatch loss equals `loss_db` (non-negative dB): a resistive
/// load on the high-resistance branch when one exists, otherwise R_A with
/// detuned reactance (0 dB gives the conjugate match).
cplx find_mismatched_load(cplx z_a, double loss_db);

/// sigma_h^2 = R1 sigma_g^2 / |Z_A + Z1|^2
double sigma_h2_from_gain(double sigma_g2, cplx z_a, cplx z1);

/// sigma^2 = 2 N sigma_n^2 / (P T)
double effective_sigma2(double sigma_n2, int n, double p, int t);

/// Noise power giving post-detection SNR gamma: sigma_n^2 = P sigma_h^2 / gamma.
double noise_for_snr(double gamma, double sigma_h2, double p);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

}  // namespace implab
