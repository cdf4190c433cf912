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

#include "phasebound/deltarho.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <vector>

#include "phasebound/errors.hpp"

namespace phasebound {

SignalParams::SignalParams(double n_mean) : n_mean_(n_mean), beta_sq_(n_mean / 2.0) {
    if (!std::isfinite(n_mean) || n_mean < 0.0) {
        throw DomainError("SignalParams: n_mean must be finite and >= 0, got " + std::to_string(n_mean));
    }
}

int truncation_order(const SignalParams &params, double tol) {
    if (!(tol > 0.0 && tol < 1.0)) {
        throw DomainError("truncation_order: tol must lie in (0, 1)");
    }
    const double x = params.n_mean();
    // e^{-x} I_n(x) ~ exp(-n^2 / 2x): start with a table comfortably past the cut and grow if needed.
    int max_order = 2 * static_cast<int>(std::ceil(std::sqrt(2.0 * x * -std::log(tol)))) + 64;
    for (;;) {
        const ScaledBesselTable table(x, max_order);
        for (int p = 1; 2 * p <= max_order; ++p) {
            if (table(2 * p) < tol) {
                return p;
            }
        }
        max_order *= 2;
    }
}

CoefficientMatrix build_coefficient_matrix(const PhaseAlphabet &alphabet, const SignalParams &params,
                                           int truncation, double tol) {
    if (truncation < 1) {
        throw DomainError("build_coefficient_matrix: truncation order P must be >= 1");
    }
    if (alphabet.angles.empty() || static_cast<int>(alphabet.angles.size()) != alphabet.bases) {
        throw DomainError("build_coefficient_matrix: malformed alphabet");
    }
    const int max_d = 2 * truncation;
    const auto dim = static_cast<std::size_t>(2 * max_d + 1);
    const double x = params.n_mean();

    // Table reaches a bit past the cut so the dropped tail can be reported.
    const int table_order = max_d + 64 + static_cast<int>(std::ceil(std::sqrt(80.0 * x)));
    const ScaledBesselTable bessel(x, table_order);

    std::vector<double> weight(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        weight[i] = std::sqrt(bessel(static_cast<int>(i) - max_d));
    }
    // T(m) for m = d - d' in [0, 4P]; negative differences use T(-m) = conj T(m).
    std::vector<cplx> contrast(static_cast<std::size_t>(2 * max_d + 1));
    for (std::size_t m = 0; m < contrast.size(); ++m) {
        contrast[m] = contrast_sum(alphabet, static_cast<long>(m));
    }

    CoefficientMatrix c;
    c.truncation = truncation;
    c.params = params;
    c.alphabet = alphabet;
    c.entries = HermitianMatrix(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i + 1; j < dim; ++j) {
            const std::size_t m = j - i;  // d - d' = i - j = -m
            if (m % 4 == 0) {
                continue;
            }
            c.entries(i, j) = weight[i] * weight[j] * std::conj(contrast[m]);
        }
    }
    c.entries.mirror_upper();
    c.tail_bound = bessel.tail_mass(max_d);
    if (bessel(max_d) >= tol) {
        c.truncation_warning = "truncation P=" + std::to_string(truncation) + " leaves e^{-x}I_{2P}(x) = " +
                               std::to_string(bessel(max_d)) + " above tolerance";
    }
    if (auto violation = structural_violation(c)) {
        throw NumericalError("build_coefficient_matrix: " + *violation, dim, c.entries.frobenius_norm());
    }
    return c;
}

CoefficientMatrix build_coefficient_matrix(const PhaseAlphabet &alphabet, const SignalParams &params, double tol) {
    return build_coefficient_matrix(alphabet, params, truncation_order(params, tol), tol);
}

std::optional<std::string> structural_violation(const CoefficientMatrix &c) {
    const HermitianMatrix &h = c.entries;
    if (h.dim() != static_cast<std::size_t>(4 * c.truncation + 1)) {
        return "dimension does not match 4P+1";
    }
    if (!h.is_hermitian()) {
        return "not Hermitian";
    }
    for (std::size_t i = 0; i < h.dim(); ++i) {
        if (h(i, i) != cplx(0.0)) {
            return "nonzero diagonal at row " + std::to_string(i);
        }
        for (std::size_t j = i + 4; j < h.dim(); j += 4) {
            if (h(i, j) != cplx(0.0)) {
                return "nonzero entry with difference = 0 mod 4 at (" + std::to_string(i) + "," +
                       std::to_string(j) + ")";
            }
        }
    }
    if (h.trace() != cplx(0.0)) {
        return "trace not zero";
    }
    return std::nullopt;
}

namespace {

template <typename T>
void put_le(std::ofstream &out, T value) {
    static_assert(std::endian::native == std::endian::little, "dump writer assumes a little-endian host");
    out.write(reinterpret_cast<const char *>(&value), sizeof(T));
}

}  // namespace

void write_matrix_dump(const CoefficientMatrix &c, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DomainError("write_matrix_dump: cannot open " + path);
    }
    out.write("PBCMAT01", 8);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(c.entries.dim()));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(c.truncation));
    put_le<double>(out, c.params.n_mean());
    put_le<double>(out, c.tail_bound);
    for (const cplx &z : c.entries.data()) {
        put_le<double>(out, z.real());
        put_le<double>(out, z.imag());
    }
}

}  // namespace phasebound
