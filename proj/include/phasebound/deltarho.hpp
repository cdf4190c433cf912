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

#ifndef PHASEBOUND_DELTARHO_HPP
#define PHASEBOUND_DELTARHO_HPP

#include <optional>
#include <string>

#include "phasebound/encoding.hpp"
#include "phasebound/numkernel.hpp"

namespace phasebound {

inline constexpr double kDefaultTruncationTol = 1e-14;

/// Mean photon number per bit and the per-mode amplitude it implies (beta = alpha / sqrt 2).
class SignalParams {
   public:
    explicit SignalParams(double n_mean);

    double n_mean() const {
        return n_mean_;
    }
    /// |beta|^2 = n_mean / 2
    double beta_sq() const {
        return beta_sq_;
    }

   private:
    double n_mean_;
    double beta_sq_;
};

/// Matrix of Delta rho = rho_1 - rho_0 (basis-averaged) in the orthonormal
/// photon-number-difference states |Phi_d>>, d = n_2 - n_1 in [-2P, 2P].
///
/// Row/column i holds d = i - 2P, i.e. half-integer steps p = d/2 in [-P, P].
/// Entries: c(d, d') = sqrt(e^{-x} I_|d|(x) e^{-x} I_|d'|(x)) * T(d - d'), x = n_mean,
/// with T the bit-contrast sum of the alphabet. Hermitian, zero diagonal, zero whenever
/// d - d' = 0 mod 4, trace exactly zero.
struct CoefficientMatrix {
    int truncation = 1;  // P
    HermitianMatrix entries;
    SignalParams params{0.0};
    PhaseAlphabet alphabet;
    /// Two-sided Bessel (Skellam) mass dropped beyond |d| = 2P.
    double tail_bound = 0.0;
    /// Set when e^{-x} I_{2P}(x) is not below the caller tolerance.
    std::optional<std::string> truncation_warning;

    int difference_of(std::size_t index) const {
        return static_cast<int>(index) - 2 * truncation;
    }
};

/// Smallest P >= 1 with e^{-x} I_{2P}(x) < tol, x = n_mean. tol must lie in (0, 1).
int truncation_order(const SignalParams &params, double tol = kDefaultTruncationTol);

CoefficientMatrix build_coefficient_matrix(const PhaseAlphabet &alphabet, const SignalParams &params,
                                           int truncation, double tol = kDefaultTruncationTol);

/// Convenience: truncation_order followed by build_coefficient_matrix.
CoefficientMatrix build_coefficient_matrix(const PhaseAlphabet &alphabet, const SignalParams &params,
                                           double tol = kDefaultTruncationTol);

/// Empty when all structural invariants hold exactly; otherwise a description of the first violation.
std::optional<std::string> structural_violation(const CoefficientMatrix &c);

/// Binary debug dump. Layout (all little-endian):
///   8 bytes magic "PBCMAT01", u32 dim, u32 P, f64 n_mean, f64 tail_bound,
///   then dim*dim (re, im) f64 pairs in row-major order.
void write_matrix_dump(const CoefficientMatrix &c, const std::string &path);

}  // namespace phasebound

#endif
