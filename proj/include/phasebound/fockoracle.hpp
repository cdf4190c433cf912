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

#ifndef PHASEBOUND_FOCKORACLE_HPP
#define PHASEBOUND_FOCKORACLE_HPP

#include <vector>

#include "phasebound/deltarho.hpp"
#include "phasebound/discrimination.hpp"

// Brute-force reference: everything here is built from explicit Fock amplitudes and
// never touches Bessel functions or structure sums.

namespace phasebound {

inline constexpr int kOracleMaxBases = 64;
inline constexpr double kOracleMaxMeanPhotons = 16.0;
inline constexpr int kOracleMaxModeCutoff = 60;
/// Dense two-mode operators are limited to (48+1)^2 = 2401 rows.
inline constexpr int kOracleMaxDenseCutoff = 48;
/// Coherent vectors losing more than this much probability to truncation are rejected.
inline constexpr double kMaxNormDefect = 1e-6;

/// Truncated single-mode coherent state e^{-|a|^2/2} a^n / sqrt(n!), n = 0..n_max.
struct CoherentVector {
    std::vector<cplx> amplitudes;
    double norm_defect = 0.0;  // Poisson mass above n_max
};

CoherentVector coherent_vector(cplx amplitude, int n_max);

/// |a_x> (x) |a_y>, flattened as index n1 * (n_max + 1) + n2.
struct TwoModeState {
    int n_max = 0;
    std::vector<cplx> amplitudes;
    double norm_defect = 0.0;

    std::size_t index(int n1, int n2) const {
        return static_cast<std::size_t>(n1) * static_cast<std::size_t>(n_max + 1) + static_cast<std::size_t>(n2);
    }
};

/// Dense operator on the truncated two-mode space, same flattening as TwoModeState.
struct TwoModeOperator {
    int n_max = 0;
    HermitianMatrix entries;
};

/// Smallest cutoff whose per-mode Poisson tail (mean n_mean/2) is below 1e-12, times 1.5.
int default_mode_cutoff(const SignalParams &params);

/// |beta e^{-i phi/2}>_x |beta e^{+i phi/2}>_y with phi = signal_phase(bit, basis), beta^2 = n_mean/2.
TwoModeState modulated_state(int bit, int basis, const PhaseAlphabet &alphabet, const SignalParams &params,
                             int n_max);

/// (1/M) sum_k (|Psi(1,k)><Psi(1,k)| - |Psi(0,k)><Psi(0,k)|) as a dense matrix.
TwoModeOperator mixed_state_delta(const PhaseAlphabet &alphabet, const SignalParams &params, int n_max);

enum class OracleSpectrum {
    /// Eigenvalues of the full dense (n_max+1)^2 operator.
    Dense,
    /// Same spectrum from the 2M generating vectors: Delta = V S V^dagger = Q (R S R^dagger) Q^dagger.
    Factored,
};

/// 1/2 (1 - sum of positive eigenvalues of mixed_state_delta); method FockOracle.
ErrorProbability oracle_error_probability(const PhaseAlphabet &alphabet, const SignalParams &params, int n_max,
                                          OracleSpectrum route = OracleSpectrum::Factored);

/// Normalised |Phi_d>> = sum_{n2 - n1 = d} beta^{n1+n2} / sqrt(n1! n2!) |n1, n2>, normalised inside
/// the cutoff. Zero vector when the sector is empty.
std::vector<cplx> sector_vector(int difference, const SignalParams &params, int n_max);

/// <<Phi_d| op |Phi_d'>> for d, d' in [-2P, 2P]; same indexing as CoefficientMatrix.
HermitianMatrix project_to_sectors(const TwoModeOperator &op, const SignalParams &params, int truncation);

}  // namespace phasebound

#endif
