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

#ifndef PHASEBOUND_ENCODING_HPP
#define PHASEBOUND_ENCODING_HPP

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace phasebound {

using cplx = std::complex<double>;

enum class AlphabetKind { Wheel, Fan };

std::string_view to_string(AlphabetKind kind);

/// The M basis angles phi_k of a phase-modulated encoding, in radians, reduced to [0, 2pi).
///
/// Wheel: phi_k = pi [k/M + (1 - (-1)^k)/2], covering the whole circle.
/// Fan:   phi_k = pi [k/N_B + (1 - (-1)^k)/2] with N_B = f * M_f, covering pi/f of it.
/// A wheel is a fan with f = 1 (and then N_B = M).
struct PhaseAlphabet {
    AlphabetKind kind = AlphabetKind::Wheel;
    int bases = 1;            // M (M_f for a fan)
    int concentration = 1;    // f
    int separation_denom = 1; // N_B; neighbouring spokes are pi/N_B apart
    std::vector<double> angles;

    bool operator==(const PhaseAlphabet &) const = default;
};

PhaseAlphabet wheel_angles(int bases);
PhaseAlphabet fan_angles(int fan_bases, int concentration);

/// phi(j, k) = phi_k + j pi, reduced to [0, 2pi). Throws DomainError for bad bit or basis.
double signal_phase(int bit, int basis, const PhaseAlphabet &alphabet);

/// S(d) = (1/M) sum_k exp(-i phi_k d), by direct summation.
cplx structure_sum(const PhaseAlphabet &alphabet, long d);

/// Closed form of structure_sum for fan alphabets, with y = exp(-i pi d / N_B):
///
///   S(d) = 1/(2 M_f) [ (1 - (-y)^{M_f}) (1 - y^{N_B}) / (1 + y)
///                    + (1 - y^{M_f})    (1 + y^{N_B}) / (1 - y) ].
///
/// Since y^{N_B} = (-1)^d only one bracket survives. At y = +-1 the surviving bracket is
/// 0/0 and the direct sum over the fan is used instead.
cplx structure_sum_closed_fan(long d, int fan_bases, int separation_denom);

/// Bit-contrast sum for a half-step frequency m/2:
///
///   T(m) = (1/M) sum_k [ exp(i phi(1,k) m/2) - exp(i phi(0,k) m/2) ].
///
/// For even m = 2x this equals ((-1)^x - 1) * S(-x); odd m picks up the reduction of
/// phi(1,k) to [0, 2pi). T(-m) = conj(T(m)) and T(m) = 0 whenever m = 0 mod 4.
cplx contrast_sum(const PhaseAlphabet &alphabet, long m);

/// JSON object {kind, M, f, N_B, angles}; angles are written with round-trip precision.
std::string alphabet_to_json(const PhaseAlphabet &alphabet);
PhaseAlphabet alphabet_from_json(std::string_view text);

}  // namespace phasebound

#endif
