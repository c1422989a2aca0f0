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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace implab {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. Sized for the small problems in this
/// library (2x2 sample covariances, L x L correlation matrices, L x N channels).
class ComplexMat {
public:
    ComplexMat() = default;
    ComplexMat(std::size_t rows, std::size_t cols, cplx fill = {});
    ComplexMat(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMat identity(std::size_t n);
    static ComplexMat diagonal(std::span<const double> d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<cplx> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const cplx> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::span<cplx> data() noexcept { return data_; }
    std::span<const cplx> data() const noexcept { return data_; }

    ComplexMat adjoint() const;
    ComplexMat transpose() const;
    cplx trace() const;
    double max_abs() const;
    double frobenius_norm() const;

    /// max|A - A^H| <= rel_tol * max|A|
    bool is_hermitian(double rel_tol = 1e-12) const;

    ComplexMat& operator+=(const ComplexMat& rhs);
    ComplexMat& operator-=(const ComplexMat& rhs);
    ComplexMat& operator*=(cplx s);

    friend bool operator==(const ComplexMat&, const ComplexMat&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

ComplexMat operator+(ComplexMat lhs, const ComplexMat& rhs);
ComplexMat operator-(ComplexMat lhs, const ComplexMat& rhs);
ComplexMat operator*(ComplexMat lhs, cplx s);
ComplexMat operator*(cplx s, ComplexMat rhs);
ComplexMat operator*(const ComplexMat& a, const ComplexMat& b);

/// Tr[A B^H] without forming the product.
cplx trace_ab_h(const ComplexMat& a, const ComplexMat& b);

/// max_ij |A_ij - B_ij|
double max_abs_diff(const ComplexMat& a, const ComplexMat& b);

}  // namespace implab
