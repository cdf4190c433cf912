// Copyright 2026 The phasebound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "phasebound/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include <complex>
#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "phasebound/errors.hpp"

namespace phasebound {

namespace {

constexpr int kRescaleBits = 500;
constexpr double kRescaleThreshold = 0x1p500;

void check_bessel_domain(int n, double x) {
    if (n < 0) {
        throw DomainError("scaled_bessel_i: negative order " + std::to_string(n));
    }
    if (!std::isfinite(x) || x < 0.0) {
        throw DomainError("scaled_bessel_i: argument must be finite and >= 0, got " + std::to_string(x));
    }
}

// Backward-recurrence start offset above the highest requested order.
// I_{n+1}/I_n decreases in n, so the relative error at any order <= max_order
// is bounded by I_{m+1}(x)/I_0(x) ~ exp(-m^2 / 2x) for the chosen m.
int miller_start_order(int max_order, double x) {
    const double m = 32.0 + std::ceil(std::sqrt(80.0 * x));
    return max_order + static_cast<int>(m);
}

// a * 2^(exp_shift) / b without intermediate overflow or premature underflow.
double scaled_ratio(double a, double b, long exp_shift) {
    int ea = 0;
    int eb = 0;
    const double ma = std::frexp(a, &ea);
    const double mb = std::frexp(b, &eb);
    const long e = static_cast<long>(ea) - eb + exp_shift;
    if (e < std::numeric_limits<double>::min_exponent - 1) {
        return 0.0;
    }
    const double v = std::ldexp(ma / mb, static_cast<int>(e));
    return v < std::numeric_limits<double>::min() ? 0.0 : v;
}

// Below this argument the ascending series converges in a handful of terms and the
// backward recurrence coefficients 2k/x would overflow.
constexpr double kSeriesThreshold = 1e-3;

void fill_from_series(double x, std::vector<double> &values) {
    const double half = 0.5 * x;
    const double log_half = std::log(half);
    const double q = half * half;
    for (std::size_t n = 0; n < values.size(); ++n) {
        const double nd = static_cast<double>(n);
        const double log_lead = nd * log_half - std::lgamma(nd + 1.0) - x;
        if (log_lead < -745.0) {
            break;  // underflows; later orders are smaller still
        }
        // 1 + q/(n+1) + q^2/(2 (n+1)(n+2)) + ...
        double term = 1.0;
        double series = 1.0;
        for (int m = 1; m <= 4; ++m) {
            term *= q / (m * (nd + m));
            series += term;
        }
        const double v = std::exp(log_lead) * series;
        values[n] = v < std::numeric_limits<double>::min() ? 0.0 : v;
    }
}

}  // namespace

ScaledBesselTable::ScaledBesselTable(double x, int max_order) : x_(x) {
    check_bessel_domain(max_order, x);
    values_.assign(static_cast<std::size_t>(max_order) + 1, 0.0);
    if (x == 0.0) {
        values_[0] = 1.0;
        return;
    }

    if (x < kSeriesThreshold) {
        fill_from_series(x, values_);
        return;
    }

    const int start = miller_start_order(max_order, x);
    const double inv_x = 1.0 / x;

    // Unnormalised backward sweep: cur ~ c * I_k(x). Stored entries remember how many
    // rescales happened before they were recorded.
    std::vector<double> mantissa(values_.size(), 0.0);
    std::vector<long> rescales_at_store(values_.size(), 0);
    long rescales = 0;
    double next = 0.0;  // ~ I_{k+1}
    double cur = 1.0;   // ~ I_k, seeded at k = start
    double sum = 0.0;   // ~ 2 sum_{j >= k+1} I_j
    for (int k = start; k >= 1; --k) {
        if (k <= max_order) {
            mantissa[k] = cur;
            rescales_at_store[k] = rescales;
        }
        sum += 2.0 * cur;
        const double prev = 2.0 * k * inv_x * cur + next;
        next = cur;
        cur = prev;
        if (cur > kRescaleThreshold) {
            cur = std::ldexp(cur, -kRescaleBits);
            next = std::ldexp(next, -kRescaleBits);
            sum = std::ldexp(sum, -kRescaleBits);
            ++rescales;
        }
    }
    mantissa[0] = cur;
    rescales_at_store[0] = rescales;
    sum += cur;

    for (std::size_t k = 0; k < values_.size(); ++k) {
        const long shift = -static_cast<long>(kRescaleBits) * (rescales - rescales_at_store[k]);
        values_[k] = scaled_ratio(mantissa[k], sum, shift);
    }
}

double ScaledBesselTable::operator()(int n) const {
    const auto order = static_cast<std::size_t>(n < 0 ? -static_cast<long>(n) : n);
    return order < values_.size() ? values_[order] : 0.0;
}

double ScaledBesselTable::normalization_sum() const {
    double tail = 0.0;
    for (std::size_t k = values_.size() - 1; k >= 1; --k) {
        tail += values_[k];
    }
    return values_[0] + 2.0 * tail;
}

double ScaledBesselTable::tail_mass(int order) const {
    double tail = 0.0;
    for (std::size_t k = values_.size() - 1; k > static_cast<std::size_t>(std::max(order, 0)); --k) {
        tail += values_[k];
    }
    return 2.0 * tail;
}

double scaled_bessel_i(int n, double x) {
    check_bessel_domain(n, x);
    return ScaledBesselTable(x, n)(n);
}

void HermitianMatrix::mirror_upper() {
    for (std::size_t i = 0; i < dim_; ++i) {
        (*this)(i, i) = cplx((*this)(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < dim_; ++j) {
            (*this)(j, i) = std::conj((*this)(i, j));
        }
    }
}

bool HermitianMatrix::is_hermitian() const {
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = i; j < dim_; ++j) {
            if ((*this)(j, i) != std::conj((*this)(i, j))) {
                return false;
            }
        }
    }
    return true;
}

cplx HermitianMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double HermitianMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx &c : entries_) {
        m = std::max(m, std::abs(c));
    }
    return m;
}

double HermitianMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cplx &c : entries_) {
        s += std::norm(c);
    }
    return std::sqrt(s);
}

std::vector<double> hermitian_eigenvalues(const HermitianMatrix &h) {
    const std::size_t n = h.dim();
    if (n == 0) {
        return {};
    }
    std::vector<cplx> a(h.data().begin(), h.data().end());
    std::vector<double> w(n);
    const auto ln = static_cast<lapack_int>(n);
    const lapack_int info = LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'N', 'U', ln, a.data(), ln, w.data());
    if (info != 0) {
        throw NumericalError(
            "hermitian_eigenvalues: zheevd failed with info=" + std::to_string(info) + " (dim " +
                std::to_string(n) + ", frobenius norm " + std::to_string(h.frobenius_norm()) + ")",
            n, h.frobenius_norm());
    }
    std::sort(w.begin(), w.end(), std::greater<>());
    return w;
}

double eigenvalue_zero_threshold(const HermitianMatrix &h) {
    return 1e-13 * static_cast<double>(h.dim()) * h.max_abs();
}

double positive_part_sum(std::span<const double> eigenvalues, double threshold) {
    double s = 0.0;
    for (double v : eigenvalues) {
        if (v > threshold) {
            s += v;
        }
    }
    return s;
}

}  // namespace phasebound
