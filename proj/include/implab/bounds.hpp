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

#include <span>

#include "implab/complex_mat.hpp"
#include "implab/fading.hpp"

namespace implab {

struct BoundReport {
    double crb_F = 0.0;         ///< bound on E|F_hat - F|^2
    double crb_sigma_h2 = 0.0;  ///< bound on E(sigma_h2_hat - sigma_h2)^2
    ComplexMat fim;             ///< 2x2, parameter order (F, sigma_h2)
    double bcrb_H = 0.0;        ///< per-entry channel MSE bound; 0 unless a ChannelSpec was supplied
};

/// Fisher information for theta = (F, sigma_h2) given the eigenvalues of C_H.
ComplexMat fim_multi(cplx f, double sigma_h2, double sigma2, int n,
                     std::span<const double> lambdas);

/// Diagonal of the inverse FIM. Throws SingularFIM when the FIM cannot be
/// inverted.
BoundReport crb(cplx f, double sigma_h2, double sigma2, int n, std::span<const double> lambdas);

/// Per-entry MSE of the MMSE channel estimate with known F:
/// (1/L) sum_k sigma_h2 lambda_k / (sigma_h2 (1+|F|^2) lambda_k / sigma2 + 1).
double bayesian_crb_H(cplx f, double sigma_h2, double sigma2, const ChannelSpec& spec);

/// gamma_eff = gamma / (1 + (1 + 1/gamma) N / T).
double gamma_eff(double gamma, int n, int t);

/// Residual MMSE per channel entry, sigma_h2 sigma_n2 / (sigma_n2 + T P sigma_h2 / N).
double mmse_j1(double sigma_h2, double sigma_n2, double p, int n, int t);

/// Ergodic capacity lower bound in bits/s/Hz:
/// log2(e) e^a sum_{k=1..N} E_k(a), a = N / gamma_eff.
double capacity_lb(double gamma_eff, int n);

/// Alternative four-antenna expression
/// (log2 e / 2) [(a - 1)^2 + 8/3 + tau(a) e^a E1(a)], tau(x) = 2 - x (2 + x^2 - x).
/// Kept for comparison only; capacity_lb() is the reference.
double capacity_lb_tau4(double gamma_eff);

struct CapacityPoint {
    double gamma = 0.0;
    double gamma_eff = 0.0;
    double c_lb = 0.0;
    double c_mc = 0.0;  ///< filled by Monte Carlo validation, else 0
    bool matched = false;
    double j1 = 0.0;
};

}  // namespace implab
