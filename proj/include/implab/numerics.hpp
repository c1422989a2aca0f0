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

#include <array>
#include <functional>
#include <vector>

#include "implab/complex_mat.hpp"

namespace implab {

/// Eigensystem of a 2x2 Hermitian matrix, eigenvalues ordered eta1 >= eta2.
struct EigSys2 {
    double eta1 = 0.0;
    double eta2 = 0.0;
    std::array<cplx, 2> e1{};
    std::array<cplx, 2> e2{};
};

/// Principal eigenpair of [[s11, s12], [conj(s12), s22]] in the explicit
/// form e1 ~ (s12, eta1 - s11). `gap` is eta1 - s11, evaluated without
/// cancellation when s11 > s22.
struct Principal2 {
    double eta1 = 0.0;
    double eta2 = 0.0;
    double gap = 0.0;
};
Principal2 principal2(double s11, double s22, cplx s12) noexcept;

/// Closed-form eigensystem of a 2x2 Hermitian matrix.
///
/// The leading eigenvector is (S12, eta1 - S11) normalized whenever that
/// vector is nonzero; when S12 = 0 the matrix is diagonal and the
/// corresponding unit basis vector is returned. Throws NonHermitian when
/// the input fails the symmetry tolerance.
EigSys2 herm_eig2(const ComplexMat& s);

/// Full eigendecomposition C = V^H diag(lambdas) V of an L x L Hermitian
/// positive semi-definite matrix by cyclic Jacobi rotations.
struct HermEig {
    std::vector<double> lambdas;  ///< descending
    ComplexMat v;                 ///< unitary; rows are conjugated eigenvectors
};
HermEig herm_eig_n(const ComplexMat& c);

/// Bessel function of the first kind, order zero.
double bessel_j0(double x);

/// Exponential integral E_n(a) = int_1^inf e^{-a t} / t^n dt, a > 0.
double expint_en(int n, double a);

/// e^a * E_n(a), evaluated without forming e^{-a} so it stays finite for
/// large a.
double expint_en_scaled(int n, double a);

struct ScalarMax {
    double x = 0.0;
    double value = 0.0;
};

/// Maximize f on [lo, hi]: coarse scan over 64 log-spaced points (plus lo),
/// then golden-section refinement on the neighbourhood of the best grid
/// point until the bracket is within `tol` relative.
ScalarMax maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                          double tol);

/// Solve A x = b for square A by partial-pivot Gaussian elimination.
/// `b` may have several columns.
ComplexMat solve(ComplexMat a, ComplexMat b);

}  // namespace implab
