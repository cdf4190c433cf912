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

#include "phasebound/encoding.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "json.hpp"
#include "phasebound/errors.hpp"

namespace phasebound {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    return r >= kTwoPi ? 0.0 : r;
}

// exp(-i pi d / n) evaluated from the reduced rational angle, so large |d| keeps full accuracy.
cplx unit_root(long d, long n) {
    const long r = ((d % (2 * n)) + 2 * n) % (2 * n);
    return std::polar(1.0, -kPi * static_cast<double>(r) / static_cast<double>(n));
}

cplx direct_fan_sum(long d, int fan_bases, int separation_denom) {
    cplx s = 0.0;
    const long nb = separation_denom;
    for (int k = 0; k < fan_bases; ++k) {
        // phase numerator k + (k mod 2) N_B over N_B, times d, reduced mod 2 N_B
        const long num = (static_cast<long>(k) + static_cast<long>(k % 2) * nb) % (2 * nb);
        const long dr = ((d % (2 * nb)) + 2 * nb) % (2 * nb);
        s += unit_root((num * dr) % (2 * nb), nb);
    }
    return s / static_cast<double>(fan_bases);
}

}  // namespace

std::string_view to_string(AlphabetKind kind) {
    return kind == AlphabetKind::Wheel ? "wheel" : "fan";
}

PhaseAlphabet wheel_angles(int bases) {
    if (bases < 1) {
        throw DomainError("wheel_angles: need at least one basis, got " + std::to_string(bases));
    }
    PhaseAlphabet a;
    a.kind = AlphabetKind::Wheel;
    a.bases = bases;
    a.concentration = 1;
    a.separation_denom = bases;
    a.angles.reserve(static_cast<std::size_t>(bases));
    for (int k = 0; k < bases; ++k) {
        a.angles.push_back(reduce_angle(kPi * (static_cast<double>(k) / bases + (k % 2))));
    }
    return a;
}

PhaseAlphabet fan_angles(int fan_bases, int concentration) {
    if (fan_bases < 1 || concentration < 1) {
        throw DomainError("fan_angles: M_f and f must be >= 1, got M_f=" + std::to_string(fan_bases) +
                          " f=" + std::to_string(concentration));
    }
    const long nb = static_cast<long>(fan_bases) * concentration;
    if (nb > (1L << 30)) {
        throw DomainError("fan_angles: N_B = f * M_f too large");
    }
    PhaseAlphabet a;
    a.kind = AlphabetKind::Fan;
    a.bases = fan_bases;
    a.concentration = concentration;
    a.separation_denom = static_cast<int>(nb);
    a.angles.reserve(static_cast<std::size_t>(fan_bases));
    for (int k = 0; k < fan_bases; ++k) {
        a.angles.push_back(reduce_angle(kPi * (static_cast<double>(k) / static_cast<double>(nb) + (k % 2))));
    }
    return a;
}

double signal_phase(int bit, int basis, const PhaseAlphabet &alphabet) {
    if (bit != 0 && bit != 1) {
        throw DomainError("signal_phase: bit must be 0 or 1, got " + std::to_string(bit));
    }
    if (basis < 0 || basis >= static_cast<int>(alphabet.angles.size())) {
        throw DomainError("signal_phase: basis " + std::to_string(basis) + " out of range for M=" +
                          std::to_string(alphabet.angles.size()));
    }
    const double phi = alphabet.angles[static_cast<std::size_t>(basis)] + bit * kPi;
    return phi >= kTwoPi ? phi - kTwoPi : phi;
}

cplx structure_sum(const PhaseAlphabet &alphabet, long d) {
    if (alphabet.angles.empty()) {
        throw DomainError("structure_sum: empty alphabet");
    }
    if (d == 0) {
        return 1.0;
    }
    cplx s = 0.0;
    for (double phi : alphabet.angles) {
        s += std::polar(1.0, -phi * static_cast<double>(d));
    }
    return s / static_cast<double>(alphabet.angles.size());
}

cplx structure_sum_closed_fan(long d, int fan_bases, int separation_denom) {
    if (fan_bases < 1 || separation_denom < fan_bases) {
        throw DomainError("structure_sum_closed_fan: need 1 <= M_f <= N_B");
    }
    if (d == 0) {
        return 1.0;
    }
    const long nb = separation_denom;
    const long r = ((d % (2 * nb)) + 2 * nb) % (2 * nb);
    if (r == 0 || r == nb) {
        return direct_fan_sum(d, fan_bases, separation_denom);
    }
    const cplx y = unit_root(d, nb);
    const cplx y_m = unit_root(d * fan_bases, nb);              // y^{M_f}
    const cplx neg_y_m = (fan_bases % 2 == 0) ? y_m : -y_m;     // (-y)^{M_f}
    const double y_nb = (d % 2 == 0) ? 1.0 : -1.0;              // y^{N_B} = (-1)^d
    const cplx odd_part = (1.0 - neg_y_m) / (1.0 + y) * (1.0 - y_nb);
    const cplx even_part = (1.0 - y_m) / (1.0 - y) * (1.0 + y_nb);
    return (odd_part + even_part) / (2.0 * fan_bases);
}

cplx contrast_sum(const PhaseAlphabet &alphabet, long m) {
    if (alphabet.angles.empty()) {
        throw DomainError("contrast_sum: empty alphabet");
    }
    if (m % 4 == 0) {
        return 0.0;
    }
    if (m % 2 == 0) {
        // integer frequency x = m/2 is odd here: (-1)^x - 1 = -2
        return -2.0 * std::conj(structure_sum(alphabet, m / 2));
    }
    const double freq = 0.5 * static_cast<double>(m);
    cplx s = 0.0;
    for (int k = 0; k < alphabet.bases; ++k) {
        s += std::polar(1.0, signal_phase(1, k, alphabet) * freq) -
             std::polar(1.0, signal_phase(0, k, alphabet) * freq);
    }
    return s / static_cast<double>(alphabet.bases);
}

std::string alphabet_to_json(const PhaseAlphabet &alphabet) {
    nlohmann::ordered_json j;
    j["kind"] = std::string(to_string(alphabet.kind));
    j["M"] = alphabet.bases;
    j["f"] = alphabet.concentration;
    j["N_B"] = alphabet.separation_denom;
    j["angles"] = alphabet.angles;
    return j.dump();
}

PhaseAlphabet alphabet_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw DomainError(std::string("alphabet_from_json: ") + e.what());
    }
    const std::string kind = j.value("kind", "");
    PhaseAlphabet a;
    if (kind == "wheel") {
        a = wheel_angles(j.at("M").get<int>());
    } else if (kind == "fan") {
        const int m = j.at("M").get<int>();
        const int f = j.at("f").get<int>();
        a = fan_angles(m, f);
        if (j.contains("N_B") && j.at("N_B").get<int>() != a.separation_denom) {
            throw DomainError("alphabet_from_json: N_B inconsistent with f * M");
        }
    } else {
        throw DomainError("alphabet_from_json: unknown kind '" + kind + "'");
    }
    if (j.contains("angles")) {
        const auto angles = j.at("angles").get<std::vector<double>>();
        if (angles != a.angles) {
            throw DomainError("alphabet_from_json: angles do not match the declared geometry");
        }
    }
    return a;
}

}  // namespace phasebound
