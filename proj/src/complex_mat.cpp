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

#include "implab/complex_mat.hpp"

#include <algorithm>
#include <cmath>

#include "implab/errors.hpp"

namespace implab {

namespace {

void require_same_shape(const ComplexMat& a, const ComplexMat& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(Errc::ShapeMismatch, std::string(op) + ": operand shapes differ");
    }
}

}  // namespace

ComplexMat::ComplexMat(std::size_t rows, std::size_t cols, cplx fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

ComplexMat::ComplexMat(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw Error(Errc::ShapeMismatch, "ragged initializer list");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

ComplexMat ComplexMat::identity(std::size_t n) {
    ComplexMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMat ComplexMat::diagonal(std::span<const double> d) {
    ComplexMat m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

ComplexMat ComplexMat::adjoint() const {
    ComplexMat out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

ComplexMat ComplexMat::transpose() const {
    ComplexMat out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
}

cplx ComplexMat::trace() const {
    cplx t{};
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double ComplexMat::max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
}

double ComplexMat::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

bool ComplexMat::is_hermitian(double rel_tol) const {
    if (rows_ != cols_) return false;
    const double scale = max_abs();
    double dev = 0.0;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = r; c < cols_; ++c)
            dev = std::max(dev, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return dev <= rel_tol * scale;
}

ComplexMat& ComplexMat::operator+=(const ComplexMat& rhs) {
    require_same_shape(*this, rhs, "operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

ComplexMat& ComplexMat::operator-=(const ComplexMat& rhs) {
    require_same_shape(*this, rhs, "operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

ComplexMat& ComplexMat::operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
}

ComplexMat operator+(ComplexMat lhs, const ComplexMat& rhs) { return lhs += rhs; }
ComplexMat operator-(ComplexMat lhs, const ComplexMat& rhs) { return lhs -= rhs; }
ComplexMat operator*(ComplexMat lhs, cplx s) { return lhs *= s; }
ComplexMat operator*(cplx s, ComplexMat rhs) { return rhs *= s; }

ComplexMat operator*(const ComplexMat& a, const ComplexMat& b) {
    if (a.cols() != b.rows()) {
        throw Error(Errc::ShapeMismatch, "matrix product: inner dimensions differ");
    }
    ComplexMat out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

cplx trace_ab_h(const ComplexMat& a, const ComplexMat& b) {
    require_same_shape(a, b, "trace_ab_h");
    cplx t{};
    const auto da = a.data();
    const auto db = b.data();
    for (std::size_t i = 0; i < da.size(); ++i) t += da[i] * std::conj(db[i]);
    return t;
}

double max_abs_diff(const ComplexMat& a, const ComplexMat& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    const auto da = a.data();
    const auto db = b.data();
    for (std::size_t i = 0; i < da.size(); ++i) m = std::max(m, std::abs(da[i] - db[i]));
    return m;
}

}  // namespace implab
