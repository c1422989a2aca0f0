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

#include <vector>

#include "implab/complex_mat.hpp"
#include "implab/numerics.hpp"
#include "implab/rng.hpp"

namespace implab {

inline constexpr double kSpeedOfLight = 299'792'458.0;

/// Block-fading MISO channel: N transmit antennas, L packets, columns of
/// H i.i.d. CN(0, sigma_h2 * C_H).
class ChannelSpec {
public:
    /// Validates C_H (unit diagonal, Hermitian PSD) and caches its eigensystem.
    ChannelSpec(int n, double sigma_h2, ComplexMat c_h);

    /// Fast fading: C_H = I_L.
    static ChannelSpec iid(int n, int l, double sigma_h2);

    int n() const noexcept { return n_; }
    int l() const noexcept { return static_cast<int>(c_h_.rows()); }
    double sigma_h2() const noexcept { return sigma_h2_; }
    const ComplexMat& c_h() const noexcept { return c_h_; }
    const std::vector<double>& lambdas() const noexcept { return eig_.lambdas; }
    const ComplexMat& v() const noexcept { return eig_.v; }

    ChannelSpec with_sigma_h2(double sigma_h2) const;

private:
    int n_;
    double sigma_h2_;
    ComplexMat c_h_;
    HermEig eig_;
};

struct FadingDraw {
    ComplexMat h;  ///< L x N; row k is h_k^T
};

/// Maximum Doppler shift f_d = v / lambda for speed in km/h.
double doppler_hz(double v_kmh, double f_c_hz);

/// Clarke/Jakes temporal correlation, [C]_{kl} = J0(2 pi f_d T_s |k - l|).
ComplexMat clarke_correlation(int l, double f_d, double t_s);

/// H = sqrt(sigma_h2) V^H diag(sqrt(lambda)) G with G i.i.d. CN(0, 1).
FadingDraw sample_H(const ChannelSpec& spec, Substream& rng);

/// Unit-variance Rayleigh sequence from the Zheng-Xiao sum-of-sinusoids
/// model, sampled every t_s seconds.
std::vector<cplx> sos_sequence(int l, double f_d, double t_s, int m_sin, Substream& rng);

/// L x N channel whose columns are independent sum-of-sinusoids sequences.
FadingDraw sample_H_sos(int n, int l, double sigma_h2, double f_d, double t_s, int m_sin,
                        Substream& rng);

}  // namespace implab
