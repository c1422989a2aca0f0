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
#include <cstdint>
#include <random>

#include "implab/complex_mat.hpp"

namespace implab {

/// splitmix64 finalizer, used to turn structured keys into seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Independent random stream. A substream is a pure function of its key,
/// so Monte Carlo trials can run on any worker in any order.
class Substream {
public:
    explicit Substream(std::uint64_t seed) : engine_(mix64(seed)) {}

    /// Stream for (master seed, cell, trial).
    static Substream derive(std::uint64_t master, std::uint64_t cell, std::uint64_t trial) {
        return Substream(mix64(mix64(mix64(master) ^ cell) ^ (trial * 0xd1b54a32d192ed03ULL)));
    }

    double normal() { return normal_(engine_); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit_(engine_); }

    /// CN(0, var): independent real and imaginary parts, each N(0, var/2).
    cplx complex_normal(double var) {
        const double s = std::sqrt(0.5 * var);
        const double re = normal_(engine_);
        const double im = normal_(engine_);
        return {s * re, s * im};
    }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

}  // namespace implab
