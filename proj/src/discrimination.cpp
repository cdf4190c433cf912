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

#include "phasebound/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <tuple>

#include "phasebound/errors.hpp"

namespace phasebound {

namespace {

double clamp_probability(double v) {
    return std::clamp(v, 0.0, 0.5);
}

std::string format_real(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

SweepRow evaluate_point(const PhaseAlphabet &alphabet, double n_mean, double tol) {
    SweepRow row;
    row.kind = alphabet.kind;
    row.bases = alphabet.bases;
    row.concentration = alphabet.concentration;
    row.separation_denom = alphabet.separation_denom;
    row.n_mean = n_mean;
    try {
        const SignalParams params(n_mean);
        const CoefficientMatrix c = build_coefficient_matrix(alphabet, params, tol);
        const ErrorProbability pe = attacker_error_probability(c);
        row.truncation = c.truncation;
        row.pe = pe.value;
        row.tail_bound = c.tail_bound;
    } catch (const std::exception &e) {
        row.pe = std::nan("");
        row.error = e.what();
    }
    return row;
}

}  // namespace

std::string_view to_string(PeMethod method) {
    switch (method) {
        case PeMethod::AnalyticSpectral:
            return "analytic_spectral";
        case PeMethod::FockOracle:
            return "fock_oracle";
        case PeMethod::HelstromClosedForm:
            return "helstrom_closed_form";
        case PeMethod::MonteCarlo:
            return "monte_carlo";
    }
    return "unknown";
}

ErrorProbability attacker_error_probability(const CoefficientMatrix &c) {
    const std::vector<double> eigenvalues = hermitian_eigenvalues(c.entries);
    const double positive = positive_part_sum(eigenvalues, eigenvalue_zero_threshold(c.entries));
    ErrorProbability pe;
    pe.value = clamp_probability(0.5 * (1.0 - positive));
    pe.method = PeMethod::AnalyticSpectral;
    pe.truncation = c.truncation;
    return pe;
}

double coherent_overlap_sq(double n_mean, double delta_phi) {
    if (!(n_mean >= 0.0)) {
        throw DomainError("coherent_overlap_sq: n_mean must be >= 0");
    }
    return std::exp(-2.0 * n_mean * (1.0 - std::cos(0.5 * delta_phi)));
}

ErrorProbability helstrom_two_state(double n_mean, double delta_phi, double p0, double p1) {
    if (p0 < 0.0 || p1 < 0.0 || std::abs(p0 + p1 - 1.0) > 1e-12) {
        throw DomainError("helstrom_two_state: priors must be non-negative and sum to 1");
    }
    const double overlap = coherent_overlap_sq(n_mean, delta_phi);
    const double radicand = std::max(0.0, 1.0 - 4.0 * p0 * p1 * overlap);
    ErrorProbability pe;
    // 1 - sqrt(1 - a) written as a / (1 + sqrt(1 - a)) to keep precision when a is small.
    pe.value = clamp_probability(0.5 * (4.0 * p0 * p1 * overlap) / (1.0 + std::sqrt(radicand)));
    pe.method = PeMethod::HelstromClosedForm;
    return pe;
}

std::vector<SweepRow> sweep_wheel(std::span<const int> bases, std::span<const double> n_means, double tol) {
    if (bases.empty() || n_means.empty()) {
        throw DomainError("sweep_wheel: grid lists must be non-empty");
    }
    std::vector<SweepRow> rows;
    for (int m : bases) {
        for (double n : n_means) {
            try {
                rows.push_back(evaluate_point(wheel_angles(m), n, tol));
            } catch (const DomainError &e) {
                SweepRow row;
                row.bases = m;
                row.separation_denom = m;
                row.n_mean = n;
                row.pe = std::nan("");
                row.error = e.what();
                rows.push_back(row);
            }
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow &a, const SweepRow &b) {
        return std::tie(a.bases, a.n_mean) < std::tie(b.bases, b.n_mean);
    });
    return rows;
}

std::vector<SweepRow> sweep_fan(int separation_denom, std::span<const int> fan_bases,
                                std::span<const double> n_means, double tol) {
    if (fan_bases.empty() || n_means.empty()) {
        throw DomainError("sweep_fan: grid lists must be non-empty");
    }
    std::vector<SweepRow> rows;
    for (int mf : fan_bases) {
        for (double n : n_means) {
            if (mf < 1 || separation_denom < mf || separation_denom % mf != 0) {
                SweepRow row;
                row.kind = AlphabetKind::Fan;
                row.bases = mf;
                row.separation_denom = separation_denom;
                row.n_mean = n;
                row.pe = std::nan("");
                row.error = "sweep_fan: M_f=" + std::to_string(mf) + " must divide N_B=" +
                            std::to_string(separation_denom);
                rows.push_back(row);
                continue;
            }
            rows.push_back(evaluate_point(fan_angles(mf, separation_denom / mf), n, tol));
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow &a, const SweepRow &b) {
        return std::tie(a.bases, a.n_mean) < std::tie(b.bases, b.n_mean);
    });
    return rows;
}

void write_sweep_csv(std::ostream &out, std::span<const SweepRow> rows) {
    out << "kind,M,f,N_B,n_mean,P,pe,method,tail_bound\n";
    for (const SweepRow &r : rows) {
        out << to_string(r.kind) << ',' << r.bases << ',' << r.concentration << ',' << r.separation_denom << ','
            << format_real(r.n_mean) << ',' << r.truncation << ',' << format_real(r.error ? std::nan("") : r.pe)
            << ',' << (r.error ? std::string_view("failed") : to_string(r.method)) << ','
            << format_real(r.tail_bound) << '\n';
    }
}

}  // namespace phasebound
