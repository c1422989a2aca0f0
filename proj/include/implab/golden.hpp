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

#include <string>
#include <vector>

namespace implab {

struct GoldenCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Reference constants of the dipole setup: F for the 50 / 60+j20 load
/// pair, Z_A recovery, the Clarke correlation row and eigenvalues at
/// 97.2 Hz and the slow-fading top eigenvalue at 9.72 Hz.
std::vector<GoldenCheck> golden_checks();

}  // namespace implab
