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

#ifndef PHASEBOUND_DISCRIMINATION_HPP
#define PHASEBOUND_DISCRIMINATION_HPP

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phasebound/deltarho.hpp"

namespace phasebound {

enum class PeMethod { AnalyticSpectral, FockOracle, HelstromClosedForm, MonteCarlo };

std::string_view to_string(PeMethod method);

/// Attacker's per-bit error probability together with how it was obtained.
struct ErrorProbability {
    double value = 0.5;
    PeMethod method = PeMethod::AnalyticSpectral;
    std::optional<int> truncation;  // P (analytic) or n_max (oracle)
    std::optional<double> stat_error;
};

/// 1/2 (1 - sum of positive eigenvalues of Delta rho); the optimal measurement projects onto
/// the positive eigenspace. Eigenvalues under eigenvalue_zero_threshold are ignored.
ErrorProbability attacker_error_probability(const CoefficientMatrix &c);

/// |<alpha|alpha e^{i dphi}>|^2 of the two-mode signals, exp(-2 n (1 - cos(dphi/2))).
double coherent_overlap_sq(double n_mean, double delta_phi);

/// Helstrom bound 1/2 (1 - sqrt(1 - 4 p0 p1 |<Psi0|Psi1>|^2)) for two pure signals
/// a phase delta_phi apart.
ErrorProbability helstrom_two_state(double n_mean, double delta_phi, double p0 = 0.5, double p1 = 0.5);

struct SweepRow {
    AlphabetKind kind = AlphabetKind::Wheel;
    int bases = 0;             // M (or M_f)
    int concentration = 1;     // f
    int separation_denom = 0;  // N_B
    double n_mean = 0.0;
    int truncation = 0;        // P, 0 when the point failed before truncation was chosen
    double pe = 0.0;
    PeMethod method = PeMethod::AnalyticSpectral;
    double tail_bound = 0.0;
    std::optional<std::string> error;
};

/// One analytic P_e per (M, n_mean) point, sorted by (M, n_mean). Failures are kept in-row.
std::vector<SweepRow> sweep_wheel(std::span<const int> bases, std::span<const double> n_means,
                                  double tol = kDefaultTruncationTol);

/// Fans with fixed closest-spoke separation pi/N_B; each M_f must divide N_B.
/// Sorted by (M_f, n_mean).
std::vector<SweepRow> sweep_fan(int separation_denom, std::span<const int> fan_bases,
                                std::span<const double> n_means, double tol = kDefaultTruncationTol);

/// CSV with header `kind,M,f,N_B,n_mean,P,pe,method,tail_bound`; reals use 17 significant digits.
/// Failed points carry pe=nan and method=failed.
void write_sweep_csv(std::ostream &out, std::span<const SweepRow> rows);

}  // namespace phasebound

#endif
