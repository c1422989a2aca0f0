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
#include <vector>

#include "implab/config.hpp"
#include "implab/estimators.hpp"
#include "implab/signalpath.hpp"

namespace implab {

struct CapacityFields {
    int trials_fallback = 0;  ///< estimates that gave a non-passive Z_A; load left unchanged
    double m_initial = 0.0;
    double m_hat_mean = 0.0;
    double c_mismatched = 0.0;
    double c_adapted = 0.0;
    double c_upper = 0.0;
};

/// One (scenario, estimator, SNR) cell. Relative errors are normalized by
/// |F|, sigma_h2 and sigma_h respectively; NaN marks a quantity the
/// estimator does not produce or a cell with no usable trial.
struct SweepRow {
    std::string scenario;
    std::string estimator;
    int n = 0;
    int l = 0;
    double snr_db = 0.0;
    int trials_ok = 0;
    int trials_degenerate = 0;
    double rmse_F_rel = 0.0;
    double rmse_sigma_h2_rel = 0.0;
    double crb_F_rel = 0.0;
    double rmse_H = 0.0;
    double bcrb_H = 0.0;
    std::optional<CapacityFields> capacity;
};

/// RMSE experiment. SNR is swept through sigma_n2 at fixed P and sigma_h2;
/// an infinite SNR entry means noiseless training. All estimators of a cell
/// see the same draws.
std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg);

struct CapacityInputs {
    cplx z_a;
    cplx z_l_initial;  ///< mismatched load used during training
    cplx z2;           ///< second training load
    Method method = Method::MM;
    ChannelSource channel;  ///< sigma_h2 is the variance at the matched load
    TrainingSpec train;
    std::vector<double> snr_db;  ///< SNR at the mismatched load, before adaptation
    int trials = 1;
    std::uint64_t seed = 1;
    double training_noise_scale = 1.0;  ///< 0 gives noiseless training
};

struct CapacityRow {
    double snr_db = 0.0;
    int trials_ok = 0;
    int trials_degenerate = 0;
    CapacityFields fields;
};

/// Adaptive-matching capacity. A grid value gamma is the SNR seen with the
/// initial load; the matched receiver sees gamma / M. Per trial, F is
/// estimated at the initial load, the load is set to the conjugate of the
/// recovered Z_A and capacity_lb is evaluated at the realized SNR.
std::vector<CapacityRow> capacity_scenario(const CapacityInputs& in);

/// Capacity rows for every (estimator, SNR) cell of cfg; needs loss_db.
std::vector<SweepRow> run_capacity(const ExperimentConfig& cfg);

inline constexpr int kCsvSchema = 1;

/// First line `schema=1`, then a header, then one line per row. Doubles
/// use 17 significant digits; absent values are empty fields.
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Fraction of flagged trials over all rows, 0 for an empty list.
double degenerate_fraction(const std::vector<SweepRow>& rows);

}  // namespace implab
