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

#include "implab/signalpath.hpp"

#include <cmath>
#include <numbers>

#include "implab/errors.hpp"
#include "implab/frontend.hpp"

namespace implab {

TrainingSpec dft_training(int n, int t, double p) {
    if (n < 1 || t < 2 || t % 2 != 0 || !(p > 0.0)) {
        throw Error(Errc::InfeasibleTraining, "need N >= 1, even T >= 2, P > 0");
    }
    const int k = t / 2;
    if (k < n) {
        throw Error(Errc::InfeasibleTraining, "T/2 must be at least N for orthogonal blocks");
    }
    TrainingSpec out;
    out.n = n;
    out.t = t;
    out.k = k;
    out.p = p;
    out.x1 = ComplexMat(n, k);
    out.x2 = ComplexMat(n, t - k);

    // Each DFT row has squared norm K; scale to reach P T / 2N = K P / N.
    const double amp = std::sqrt(p / n);
    // X2 rows wrap modulo K when K < 2N; each block stays row-orthogonal.
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < k; ++c) {
            const double w1 = -2.0 * std::numbers::pi * r * c / k;
            const double w2 = -2.0 * std::numbers::pi * ((r + n) % k) * c / k;
            out.x1(r, c) = amp * cplx(std::cos(w1), std::sin(w1));
            out.x2(r, c) = amp * cplx(std::cos(w2), std::sin(w2));
        }
    }
    return out;
}

Observations synthesize_with(const ComplexMat& h, const TrainingSpec& train, cplx f,
                             double sigma_n2, Substream& rng, double sigma_h2) {
    if (h.cols() != static_cast<std::size_t>(train.n)) {
        throw Error(Errc::ShapeMismatch, "channel width must equal N");
    }
    Observations obs;
    obs.u1 = h * train.x1;
    obs.u2 = (f * h) * train.x2;
    if (sigma_n2 > 0.0) {
        for (auto& v : obs.u1.data()) v += rng.complex_normal(sigma_n2);
        for (auto& v : obs.u2.data()) v += rng.complex_normal(sigma_n2);
    }
    obs.truth = Truth{f, h, sigma_h2};
    return obs;
}

Observations synthesize(const ChannelSpec& spec, const TrainingSpec& train, cplx f,
                        double sigma_n2, Substream& rng) {
    if (spec.n() != train.n) throw Error(Errc::ShapeMismatch, "ChannelSpec N != TrainingSpec N");
    FadingDraw draw = sample_H(spec, rng);
    return synthesize_with(draw.h, train, f, sigma_n2, rng, spec.sigma_h2());
}

SufficientStats sufficient_stats(const Observations& obs, const TrainingSpec& train,
                                 double sigma_n2) {
    if (obs.u1.cols() != train.x1.cols() || obs.u2.cols() != train.x2.cols() ||
        obs.u1.rows() != obs.u2.rows()) {
        throw Error(Errc::ShapeMismatch, "observations do not match the training layout");
    }
    const double scale = 1.0 / train.gram_scale();
    SufficientStats s;
    s.y1 = (obs.u1 * train.x1.adjoint()) * scale;
    s.y2 = (obs.u2 * train.x2.adjoint()) * scale;
    s.sigma2 = effective_sigma2(sigma_n2, train.n, train.p, train.t);
    return s;
}

}  // namespace implab
