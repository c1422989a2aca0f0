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

#include <optional>
#include <span>
#include <string_view>

#include "implab/complex_mat.hpp"
#include "implab/fading.hpp"
#include "implab/signalpath.hpp"

namespace implab {

enum class Method {
    ML1,    ///< single-packet closed form
    ML_MP,  ///< multi-packet ML via scalar search over mu
    ML_FF,  ///< fast-fading (C_H = I) closed form
    MM,     ///< method of moments
};

std::string_view to_string(Method m) noexcept;
std::optional<Method> parse_method(std::string_view s) noexcept;

/// Estimates of F and the channel variance. A degenerate report (the
/// E1 = 0 limit where F-hat diverges) carries no usable F_hat.
struct EstimateReport {
    Method method = Method::ML1;
    bool degenerate = false;
    cplx f_hat{};
    std::optional<double> sigma_h2_hat;  ///< absent for MM
    std::optional<double> mu_hat;        ///< sigma_h2 (1 + |F|^2)
    std::optional<cplx> z_a_hat;         ///< filled by attach_impedance()
};

/// Relative threshold on |S12| (resp. |T12|) below which F-hat is declared
/// degenerate.
inline constexpr double kDegenerateRel = 1e-14;

/// Single-packet ML from y1, y2 in C^N.
EstimateReport ml_single_packet(std::span<const cplx> y1, std::span<const cplx> y2,
                                double sigma2);

/// T_ij = Tr[Y_i Y_j^H] / N.
ComplexMat build_T(const SufficientStats& stats);

/// Closed-form ML under fast fading (C_H = I).
EstimateReport ml_fast_fading(const SufficientStats& stats);

/// Multi-packet ML for known temporal correlation (eigensystem taken from spec).
EstimateReport ml_multi_packet(const SufficientStats& stats, const ChannelSpec& spec);

/// Method-of-moments F estimate; independent of C_H.
EstimateReport mm_estimator(const SufficientStats& stats);

/// Profile log-likelihood kernel maximized by ml_multi_packet:
/// e^H S(mu) e - sigma2 sum_k ln(mu lambda_k + sigma2), e a unit 2-vector.
double multi_packet_objective(const SufficientStats& stats, const ChannelSpec& spec, double mu,
                              std::span<const cplx, 2> e);

/// Ĥ = [(1+|F|^2) C_H + (sigma2/sigma_h2) I]^{-1} C_H (Y1 + F* Y2).
ComplexMat mmse_channel(const SufficientStats& stats, cplx f, double sigma_h2,
                        const ChannelSpec& spec);

/// Fills z_a_hat from f_hat for non-degenerate reports.
void attach_impedance(EstimateReport& report, cplx z1, cplx z2);

/// Dispatch by method tag; ML_MP needs the channel spec, the others ignore it.
EstimateReport estimate(Method m, const SufficientStats& stats, const ChannelSpec& spec);

}  // namespace implab
