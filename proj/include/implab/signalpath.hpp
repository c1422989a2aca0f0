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

#include "implab/complex_mat.hpp"
#include "implab/fading.hpp"
#include "implab/rng.hpp"

namespace implab {

/// Training sequence split at the load switch. Columns of X1 are the symbols
/// sent while the receiver uses Z1, columns of X2 those sent under Z2.
struct TrainingSpec {
    int n = 0;
    int t = 0;
    int k = 0;
    double p = 0.0;
    ComplexMat x1;  ///< N x K
    ComplexMat x2;  ///< N x (T - K)

    /// P T / (2 N): the common Gram scale X1 X1^H = X2 X2^H.
    double gram_scale() const noexcept { return p * t / (2.0 * n); }
};

/// Ground truth carried alongside synthetic observations for scoring only.
struct Truth {
    cplx f;
    ComplexMat h;
    double sigma_h2 = 0.0;
};

struct Observations {
    ComplexMat u1;  ///< L x K
    ComplexMat u2;  ///< L x (T - K)
    std::optional<Truth> truth;
};

/// Reduced observations: Y1 - H and Y2 - F H carry i.i.d. CN(0, sigma2) noise.
struct SufficientStats {
    ComplexMat y1;  ///< L x N
    ComplexMat y2;  ///< L x N
    double sigma2 = 0.0;

    int n() const noexcept { return static_cast<int>(y1.cols()); }
    int l() const noexcept { return static_cast<int>(y1.rows()); }
};

/// X1 = rows 0..N-1 and X2 = rows N..2N-1 of the K-point DFT matrix
/// scaled so each block has Gram matrix (P T / 2N) I_N, K = T/2.
TrainingSpec dft_training(int n, int t, double p);

/// U1 = H X1 + N1, U2 = F H X2 + N2 with N1, N2 i.i.d. CN(0, sigma_n2).
Observations synthesize(const ChannelSpec& spec, const TrainingSpec& train, cplx f,
                        double sigma_n2, Substream& rng);

/// Same as synthesize() but with a caller-supplied channel draw.
Observations synthesize_with(const ComplexMat& h, const TrainingSpec& train, cplx f,
                             double sigma_n2, Substream& rng, double sigma_h2 = 0.0);

/// Y_i = (2N / PT) U_i X_i^H, sigma2 = 2N sigma_n2 / (PT).
SufficientStats sufficient_stats(const Observations& obs, const TrainingSpec& train,
                                 double sigma_n2);

}  // namespace implab
