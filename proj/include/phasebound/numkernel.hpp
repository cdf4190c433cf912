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

#ifndef PHASEBOUND_NUMKERNEL_HPP
#define PHASEBOUND_NUMKERNEL_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace phasebound {

using cplx = std::complex<double>;

/// e^{-x} I_n(x) for integer n >= 0 and x >= 0.
///
/// Computed with Miller's backward recurrence, normalised by
/// I_0(x) + 2 sum_{n>=1} I_n(x) = e^x, so only the scaled product is ever formed.
/// Safe up to x = 1e6 and beyond; throws DomainError on negative or non-finite input.
double scaled_bessel_i(int n, double x);

/// Scaled modified Bessel values e^{-x} I_n(x) for n = 0..max_order at a fixed x.
///
/// Values below the smallest normal double are flushed to zero. The table is
/// immutable after construction and may be shared across threads.
class ScaledBesselTable {
   public:
    ScaledBesselTable(double x, int max_order);

    double x() const {
        return x_;
    }
    int max_order() const {
        return static_cast<int>(values_.size()) - 1;
    }
    /// e^{-x} I_{|n|}(x); orders beyond max_order are reported as 0.
    double operator()(int n) const;
    std::span<const double> values() const {
        return values_;
    }
    /// value(0) + 2 sum_{n>=1} value(n); equals 1 up to the dropped tail.
    double normalization_sum() const;
    /// 2 sum_{n > order} value(n), the two-sided mass beyond |n| = order (from the table itself).
    double tail_mass(int order) const;

   private:
    double x_;
    std::vector<double> values_;
};

/// Dense Hermitian matrix, row-major. Only constructed through the helpers below or by
/// filling the upper triangle and calling `mirror_upper`.
class HermitianMatrix {
   public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
    }

    std::size_t dim() const {
        return dim_;
    }
    cplx &operator()(std::size_t row, std::size_t col) {
        return entries_[row * dim_ + col];
    }
    const cplx &operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }
    std::span<const cplx> data() const {
        return entries_;
    }
    std::span<cplx> data() {
        return entries_;
    }

    /// Sets (j, i) = conj((i, j)) for i < j and forces a real diagonal.
    void mirror_upper();
    bool is_hermitian() const;
    cplx trace() const;
    double max_abs() const;
    double frobenius_norm() const;

   private:
    std::size_t dim_ = 0;
    std::vector<cplx> entries_;
};

/// All eigenvalues of a Hermitian matrix, sorted descending.
///
/// Backed by LAPACK zheevd. Throws NumericalError (carrying dim and the Frobenius
/// norm) if the solver does not converge.
std::vector<double> hermitian_eigenvalues(const HermitianMatrix &h);

/// Threshold under which an eigenvalue is treated as numerically zero when summing
/// the positive part: 1e-13 * dim * max|h_ij|.
double eigenvalue_zero_threshold(const HermitianMatrix &h);

/// Sum of eigenvalues strictly above `threshold`.
double positive_part_sum(std::span<const double> eigenvalues, double threshold);

}  // namespace phasebound

#endif
