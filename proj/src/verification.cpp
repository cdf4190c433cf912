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

#include "phasebound/verification.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "phasebound/deltarho.hpp"
#include "phasebound/discrimination.hpp"
#include "phasebound/fockoracle.hpp"
#include "phasebound/numkernel.hpp"

namespace phasebound {

namespace {

std::string label(const PhaseAlphabet &a, double n) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%s M=%d f=%d n=%g", std::string(to_string(a.kind)).c_str(), a.bases,
                  a.concentration, n);
    return buf;
}

VerificationCheck check(std::string name, double measured, double tolerance) {
    return {std::move(name), measured, tolerance, measured <= tolerance};
}

}  // namespace

std::vector<VerificationCheck> run_verification(const VerifyOptions &options) {
    std::vector<VerificationCheck> out;

    std::vector<double> n_means{0.5, 1.0, 2.0, 4.0};
    std::vector<int> bases{1, 2, 4, 8};
    if (!options.small_grid) {
        n_means.push_back(8.0);
        bases.push_back(16);
        bases.push_back(32);
    }
    for (double n : n_means) {
        const SignalParams params(n);
        for (int m : bases) {
            for (const PhaseAlphabet &a : {wheel_angles(m), fan_angles(m, 2)}) {
                const CoefficientMatrix c = build_coefficient_matrix(a, params, options.tol);
                const double analytic = attacker_error_probability(c).value;
                const double oracle = oracle_error_probability(a, params, options.oracle_n_max).value;
                out.push_back(check("oracle agreement " + label(a, n), std::abs(analytic - oracle), 1e-6));
                out.push_back(check("structure " + label(a, n), structural_violation(c) ? 1.0 : 0.0, 0.0));
            }
        }
    }

    for (double n : {0.25, 1.0, 4.0}) {
        const SignalParams params(n);
        const PhaseAlphabet single = wheel_angles(1);
        const double helstrom = helstrom_two_state(n, std::numbers::pi).value;
        const double analytic = attacker_error_probability(build_coefficient_matrix(single, params, options.tol)).value;
        const double oracle = oracle_error_probability(single, params, options.oracle_n_max).value;
        char buf[64];
        std::snprintf(buf, sizeof(buf), "helstrom vs spectral n=%g", n);
        out.push_back(check(buf, std::abs(helstrom - analytic), 1e-8));
        std::snprintf(buf, sizeof(buf), "helstrom vs oracle n=%g", n);
        out.push_back(check(buf, std::abs(helstrom - oracle), 1e-8));
    }

    for (double x : {0.1, 1.0, 10.0, 100.0, 1000.0}) {
        const ScaledBesselTable table(x, 2 * static_cast<int>(std::sqrt(80.0 * x)) + 80);
        char buf[64];
        std::snprintf(buf, sizeof(buf), "bessel normalisation x=%g", x);
        out.push_back(check(buf, std::abs(table.normalization_sum() - 1.0), 1e-10));
    }
    return out;
}

void print_verification_table(std::ostream &out, const std::vector<VerificationCheck> &checks) {
    char line[200];
    std::snprintf(line, sizeof(line), "%-48s %14s %10s  %s\n", "check", "measured", "tolerance", "result");
    out << line;
    for (const VerificationCheck &c : checks) {
        std::snprintf(line, sizeof(line), "%-48s %14.3e %10.1e  %s\n", c.name.c_str(), c.measured, c.tolerance,
                      c.passed ? "PASS" : "FAIL");
        out << line;
    }
}

}  // namespace phasebound
