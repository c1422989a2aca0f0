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

#include "implab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "implab/errors.hpp"

namespace implab {

const char* to_string(Errc code) noexcept {
    switch (code) {
        case Errc::NonHermitian: return "NonHermitian";
        case Errc::IndefiniteMatrix: return "IndefiniteMatrix";
        case Errc::DomainError: return "DomainError";
        case Errc::BadBracket: return "BadBracket";
        case Errc::SingularCircuit: return "SingularCircuit";
        case Errc::SingularInversion: return "SingularInversion";
        case Errc::NonPassive: return "NonPassive";
        case Errc::InfeasibleTraining: return "InfeasibleTraining";
        case Errc::ShapeMismatch: return "ShapeMismatch";
        case Errc::SingularSystem: return "SingularSystem";
        case Errc::SingularFIM: return "SingularFIM";
        case Errc::OptimizerFailure: return "OptimizerFailure";
        case Errc::ConfigError: return "ConfigError";
        case Errc::IoError: return "IoError";
    }
    return "Unknown";
}

// ---------------------------------------------------------------------------
// 2x2 Hermitian eigensystem

Principal2 principal2(double s11, double s22, cplx s12) noexcept {
    const double d = s22 - s11;
    const double a2 = std::norm(s12);
    const double r = std::sqrt(d * d + 4.0 * a2);
    Principal2 p;
    // eta1 - s11 = (d + r) / 2; rewrite to avoid cancellation when d < 0.
    p.gap = d >= 0.0 ? 0.5 * (d + r) : (r - d > 0.0 ? 2.0 * a2 / (r - d) : 0.0);
    p.eta1 = s11 + p.gap;
    p.eta2 = s11 + s22 - p.eta1;
    return p;
}

EigSys2 herm_eig2(const ComplexMat& s) {
    if (s.rows() != 2 || s.cols() != 2 || !s.is_hermitian()) {
        throw Error(Errc::NonHermitian, "herm_eig2 expects a 2x2 Hermitian matrix");
    }
    const double s11 = s(0, 0).real();
    const double s22 = s(1, 1).real();
    const cplx s12 = s(0, 1);
    const Principal2 p = principal2(s11, s22, s12);

    EigSys2 out;
    out.eta1 = p.eta1;
    out.eta2 = p.eta2;

    const double len = std::sqrt(std::norm(s12) + p.gap * p.gap);
    if (len > 0.0) {
        out.e1 = {s12 / len, cplx(p.gap / len, 0.0)};
    } else if (s11 >= s22) {
        out.e1 = {cplx(1.0, 0.0), cplx(0.0, 0.0)};
    } else {
        out.e1 = {cplx(0.0, 0.0), cplx(1.0, 0.0)};
    }
    out.e2 = {-std::conj(out.e1[1]), std::conj(out.e1[0])};
    return out;
}

// ---------------------------------------------------------------------------
// Cyclic Jacobi for L x L Hermitian matrices

HermEig herm_eig_n(const ComplexMat& c) {
    const std::size_t n = c.rows();
    if (n == 0 || c.cols() != n || !c.is_hermitian()) {
        throw Error(Errc::NonHermitian, "herm_eig_n expects a square Hermitian matrix");
    }
    if (n > 512) {
        throw Error(Errc::DomainError, "herm_eig_n supports at most 512 x 512");
    }

    ComplexMat a = c;
    ComplexMat q = ComplexMat::identity(n);  // columns are eigenvectors

    auto off_norm2 = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a(i, j));
        return s;
    };
    const double total = std::max(c.frobenius_norm(), std::numeric_limits<double>::min());

    for (int sweep = 0; sweep < 100; ++sweep) {
        if (std::sqrt(off_norm2()) <= 1e-15 * total) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t r = p + 1; r < n; ++r) {
                const cplx apq = a(p, r);
                const double mag = std::abs(apq);
                if (mag <= 1e-300) continue;
                const double app = a(p, p).real();
                const double aqq = a(r, r).real();
                const cplx phase = apq / mag;  // e^{i phi}

                // Real symmetric Schur rotation on the phase-stripped block.
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * cs;

                // U = diag(1, e^{-i phi}) * [[c, s], [-s, c]]
                const cplx u_pp = cs;
                const cplx u_pq = sn;
                const cplx u_qp = -sn * std::conj(phase);
                const cplx u_qq = cs * std::conj(phase);

                // A <- A U (columns p, r)
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx aip = a(i, p);
                    const cplx aiq = a(i, r);
                    a(i, p) = aip * u_pp + aiq * u_qp;
                    a(i, r) = aip * u_pq + aiq * u_qq;
                }
                // A <- U^H A (rows p, r)
                for (std::size_t j = 0; j < n; ++j) {
                    const cplx apj = a(p, j);
                    const cplx aqj = a(r, j);
                    a(p, j) = std::conj(u_pp) * apj + std::conj(u_qp) * aqj;
                    a(r, j) = std::conj(u_pq) * apj + std::conj(u_qq) * aqj;
                }
                a(p, r) = 0.0;
                a(r, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(r, r) = a(r, r).real();

                for (std::size_t i = 0; i < n; ++i) {
                    const cplx qip = q(i, p);
                    const cplx qiq = q(i, r);
                    q(i, p) = qip * u_pp + qiq * u_qp;
                    q(i, r) = qip * u_pq + qiq * u_qq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    HermEig out;
    out.lambdas.resize(n);
    out.v = ComplexMat(n, n);
    const double lmax = std::max(a(order.front(), order.front()).real(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double lam = a(order[k], order[k]).real();
        if (lam < 0.0) {
            if (-lam > 1e-10 * lmax) {
                throw Error(Errc::IndefiniteMatrix, "negative eigenvalue beyond clamping tolerance");
            }
            lam = 0.0;
        }
        out.lambdas[k] = lam;
        for (std::size_t i = 0; i < n; ++i) out.v(k, i) = std::conj(q(i, order[k]));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Special functions

double bessel_j0(double x) {
    const double ax = std::abs(x);
    if (ax <= 12.0) {
        // sum_k (-1)^k (x^2/4)^k / (k!)^2
        const double q = 0.25 * ax * ax;
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < 200; ++k) {
            term *= -q / (static_cast<double>(k) * k);
            sum += term;
            if (std::abs(term) < 1e-17 * std::max(1.0, std::abs(sum))) break;
        }
        return sum;
    }
    // Hankel asymptotic expansion: J0 = sqrt(2/(pi x)) (P cos chi - Q sin chi)
    const double z = 8.0 * ax;
    const double z2 = z * z;
    double p = 1.0;
    double qv = -1.0 / z;
    double tp = 1.0;
    double tq = -1.0 / z;
    // term ratios follow from mu = 4 nu^2 = 0
    for (int k = 1; k < 30; ++k) {
        const double a = 4.0 * k - 3.0;
        const double b = 4.0 * k - 1.0;
        const double c = 4.0 * k + 1.0;
        const double nt_p = -tp * (a * a) * (b * b) / (z2 * (2.0 * k - 1.0) * (2.0 * k));
        const double nt_q = -tq * (b * b) * (c * c) / (z2 * (2.0 * k) * (2.0 * k + 1.0));
        if (std::abs(nt_p) > std::abs(tp) && k > 1) break;  // series started diverging
        tp = nt_p;
        tq = nt_q;
        p += tp;
        qv += tq;
        if (std::abs(tp) < 1e-17 && std::abs(tq) < 1e-17) break;
    }
    const double chi = ax - 0.25 * std::numbers::pi;
    return std::sqrt(2.0 / (std::numbers::pi * ax)) * (p * std::cos(chi) - qv * std::sin(chi));
}

namespace {

// e^a E_n(a) by continued fraction (modified Lentz); converges fast for a >= 1.
double scaled_en_cf(int n, double a) {
    const double tiny = 1e-300;
    double b = a + n;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -static_cast<double>(i) * (n - 1 + i);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h;
}

// e^a E_1(a)
double scaled_e1(double a) {
    if (a < 1.0) {
        // E_1 = -gamma - ln a - sum_{k>=1} (-a)^k / (k k!)
        double term = 1.0;
        double sum = 0.0;
        for (int k = 1; k < 400; ++k) {
            term *= -a / k;
            const double add = term / k;
            sum += add;
            if (std::abs(add) < 1e-18 * std::abs(sum)) break;
        }
        const double e1 = -std::numbers::egamma - std::log(a) - sum;
        return std::exp(a) * e1;
    }
    return scaled_en_cf(1, a);
}

void require_positive(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw Error(Errc::DomainError, "exponential integral requires a > 0");
    }
}

}  // namespace

double expint_en(int n, double a) {
    require_positive(a);
    if (n < 1) throw Error(Errc::DomainError, "exponential integral requires n >= 1");
    if (a >= 1.0) return std::exp(-a) * scaled_en_cf(n, a);
    const double ema = std::exp(-a);
    double e = ema * scaled_e1(a);
    for (int k = 2; k <= n; ++k) e = (ema - a * e) / (k - 1);
    return e;
}

double expint_en_scaled(int n, double a) {
    require_positive(a);
    if (n < 1) throw Error(Errc::DomainError, "exponential integral requires n >= 1");
    // Upward recursion cancels badly once a*E is close to 1.
    if (a >= 1.0) return scaled_en_cf(n, a);
    double e = scaled_e1(a);
    for (int k = 2; k <= n; ++k) e = (1.0 - a * e) / (k - 1);
    return e;
}

// ---------------------------------------------------------------------------
// Scalar maximization

ScalarMax maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                          double tol) {
    if (!(lo < hi)) throw Error(Errc::BadBracket, "maximize_scalar requires lo < hi");
    if (!(tol > 0.0)) throw Error(Errc::BadBracket, "maximize_scalar requires tol > 0");

    constexpr int kGrid = 64;
    // Log spacing needs a positive start; below it only lo itself is probed.
    const double start = lo > 0.0 ? lo : hi * 1e-9;
    std::vector<double> xs;
    xs.reserve(kGrid + 1);
    if (lo < start) xs.push_back(lo);
    const double ratio = std::log(hi / start) / (kGrid - 1);
    for (int i = 0; i < kGrid; ++i) {
        xs.push_back(i == kGrid - 1 ? hi : start * std::exp(ratio * i));
    }

    std::size_t best = 0;
    std::vector<double> fs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        fs[i] = f(xs[i]);
        if (fs[i] > fs[best]) best = i;
    }

    double a = xs[best == 0 ? 0 : best - 1];
    double b = xs[best + 1 < xs.size() ? best + 1 : best];
    ScalarMax result{xs[best], fs[best]};
    if (!(b > a)) return result;

    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    const double abs_floor = 1e-14 * (hi - lo);
    for (int it = 0; it < 300; ++it) {
        if (b - a <= tol * 0.5 * (std::abs(a) + std::abs(b)) + abs_floor) break;
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    if (fc > result.value) result = {c, fc};
    if (fd > result.value) result = {d, fd};
    return result;
}

// ---------------------------------------------------------------------------

ComplexMat solve(ComplexMat a, ComplexMat b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.rows() != n) {
        throw Error(Errc::ShapeMismatch, "solve: incompatible dimensions");
    }
    const double scale = a.max_abs();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (std::abs(a(piv, col)) <= 1e-300 + 1e-15 * scale) {
            throw Error(Errc::SingularSystem, "solve: matrix is singular to working precision");
        }
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            for (std::size_t j = 0; j < b.cols(); ++j) std::swap(b(piv, j), b(col, j));
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const cplx m = a(r, col) / a(col, col);
            if (m == cplx{}) continue;
            for (std::size_t j = col; j < n; ++j) a(r, j) -= m * a(col, j);
            for (std::size_t j = 0; j < b.cols(); ++j) b(r, j) -= m * b(col, j);
        }
    }
    for (std::size_t ri = n; ri-- > 0;) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            cplx s = b(ri, j);
            for (std::size_t k = ri + 1; k < n; ++k) s -= a(ri, k) * b(k, j);
            b(ri, j) = s / a(ri, ri);
        }
    }
    return b;
}

}  // namespace implab
