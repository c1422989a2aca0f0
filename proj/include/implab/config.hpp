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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "implab/complex_mat.hpp"
#include "implab/estimators.hpp"
#include "implab/fading.hpp"
#include "implab/rng.hpp"

namespace implab {

enum class Scenario { Iid, Moderate, Slow, Custom };
enum class Generator { Factorization, Sos };

std::string_view to_string(Scenario s) noexcept;
std::string_view to_string(Generator g) noexcept;

struct ExperimentConfig {
    Scenario scenario = Scenario::Iid;
    int n = 4;
    int l = 5;
    int t = 64;
    double p = 1.0;
    double f_c_hz = 2.1e9;
    double v_kmh = 0.0;
    double t_s = 1e-3;
    cplx z_a{73.0, 42.5};
    cplx z1{50.0, 0.0};
    cplx z2{60.0, 20.0};
    double sigma_g2 = 1.0;
    std::vector<double> snr_grid_db;
    int trials = 1;
    std::uint64_t seed = 1;
    std::vector<Method> estimators;
    std::optional<double> loss_db;
    std::string output_path;
    Generator generator = Generator::Factorization;
    int sos_sinusoids = 16;

    /// Throws ConfigError naming the first offending field.
    void validate() const;
};

/// Parses the [experiment] section of an INI stream. Missing required keys
/// and malformed values raise ConfigError with the key name in the message.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

/// Complex literal such as "73+42.5j", "60+j20", "-4j" or "50".
std::optional<cplx> parse_complex(std::string_view s);

/// Channel model implied by the scenario. `sigma_h2` is the variance at
/// the training load.
struct ChannelSource {
    ChannelSpec spec;
    Generator generator = Generator::Factorization;
    double f_d = 0.0;
    double t_s = 1e-3;
    int sos_sinusoids = 16;

    ComplexMat draw(Substream& rng) const;
};

ChannelSource make_channel_source(const ExperimentConfig& cfg, double sigma_h2);

}  // namespace implab
