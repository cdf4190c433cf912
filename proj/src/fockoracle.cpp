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

#include "phasebound/fockoracle.hpp"

#include <cmath>
#include <string>

#include <complex>
#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "phasebound/errors.hpp"

namespace phasebound {

namespace {

// Poisson(lambda) mass strictly above n.
double poisson_upper_tail(double lambda, int n) {
    if (lambda == 0.0) {
        return 0.0;
    }
    double tail = 0.0;
    for (int k = n + 1;; ++k) {
        const double term = std::exp(-lambda + k * std::log(lambda) - std::lgamma(k + 1.0));
        tail += term;
        if (k > lambda && (term == 0.0 || term < 1e-18 * tail)) {
            break;
        }
        if (k > n + 100000) {
            break;
        }
    }
    return tail;
}

void check_oracle_scale(const PhaseAlphabet &alphabet, const SignalParams &params, int n_max, int cutoff_limit) {
    if (alphabet.bases > kOracleMaxBases) {
        throw ResourceError("fock oracle: M=" + std::to_string(alphabet.bases) + " exceeds the desk-scale limit " +
                            std::to_string(kOracleMaxBases));
    }
    if (params.n_mean() > kOracleMaxMeanPhotons) {
        throw ResourceError("fock oracle: n_mean=" + std::to_string(params.n_mean()) + " exceeds " +
                            std::to_string(kOracleMaxMeanPhotons));
    }
    if (n_max < 0 || n_max > cutoff_limit) {
        throw ResourceError("fock oracle: mode cutoff " + std::to_string(n_max) + " outside [0, " +
                            std::to_string(cutoff_limit) + "]");
    }
}

}  // namespace

CoherentVector coherent_vector(cplx amplitude, int n_max) {
    if (n_max < 0) {
        throw DomainError("coherent_vector: n_max must be >= 0");
    }
    CoherentVector v;
    v.amplitudes.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    const double r = std::abs(amplitude);
    if (r == 0.0) {
        v.amplitudes[0] = 1.0;
        return v;
    }
    const double theta = std::arg(amplitude);
    const double log_r = std::log(r);
    for (int n = 0; n <= n_max; ++n) {
        const double log_mag = -0.5 * r * r + n * log_r - 0.5 * std::lgamma(n + 1.0);
        v.amplitudes[static_cast<std::size_t>(n)] = std::polar(std::exp(log_mag), n * theta);
    }
    v.norm_defect = poisson_upper_tail(r * r, n_max);
    if (v.norm_defect > kMaxNormDefect) {
        throw TruncationError("coherent_vector: cutoff " + std::to_string(n_max) + " drops " +
                                  std::to_string(v.norm_defect) + " of the norm for |a|^2=" + std::to_string(r * r),
                              v.norm_defect);
    }
    return v;
}

int default_mode_cutoff(const SignalParams &params) {
    const double lambda = params.beta_sq();
    int n = 0;
    while (poisson_upper_tail(lambda, n) >= 1e-12) {
        ++n;
    }
    return static_cast<int>(std::ceil(1.5 * n));
}

TwoModeState modulated_state(int bit, int basis, const PhaseAlphabet &alphabet, const SignalParams &params,
                             int n_max) {
    const double phi = signal_phase(bit, basis, alphabet);
    const double beta = std::sqrt(params.beta_sq());
    const CoherentVector x = coherent_vector(std::polar(beta, -0.5 * phi), n_max);
    const CoherentVector y = coherent_vector(std::polar(beta, 0.5 * phi), n_max);

    TwoModeState s;
    s.n_max = n_max;
    s.amplitudes.resize(static_cast<std::size_t>(n_max + 1) * static_cast<std::size_t>(n_max + 1));
    for (int n1 = 0; n1 <= n_max; ++n1) {
        for (int n2 = 0; n2 <= n_max; ++n2) {
            s.amplitudes[s.index(n1, n2)] = x.amplitudes[static_cast<std::size_t>(n1)] *
                                            y.amplitudes[static_cast<std::size_t>(n2)];
        }
    }
    s.norm_defect = x.norm_defect + y.norm_defect - x.norm_defect * y.norm_defect;
    return s;
}

TwoModeOperator mixed_state_delta(const PhaseAlphabet &alphabet, const SignalParams &params, int n_max) {
    check_oracle_scale(alphabet, params, n_max, kOracleMaxDenseCutoff);
    const std::size_t dim = static_cast<std::size_t>(n_max + 1) * static_cast<std::size_t>(n_max + 1);
    TwoModeOperator op;
    op.n_max = n_max;
    op.entries = HermitianMatrix(dim);
    const double weight = 1.0 / alphabet.bases;
    for (int k = 0; k < alphabet.bases; ++k) {
        for (int bit = 0; bit <= 1; ++bit) {
            const TwoModeState s = modulated_state(bit, k, alphabet, params, n_max);
            const double sign = bit == 1 ? weight : -weight;
            for (std::size_t i = 0; i < dim; ++i) {
                const cplx left = sign * s.amplitudes[i];
                if (left == cplx(0.0)) {
                    continue;
                }
                for (std::size_t j = i; j < dim; ++j) {
                    op.entries(i, j) += left * std::conj(s.amplitudes[j]);
                }
            }
        }
    }
    op.entries.mirror_upper();
    return op;
}

ErrorProbability oracle_error_probability(const PhaseAlphabet &alphabet, const SignalParams &params, int n_max,
                                          OracleSpectrum route) {
    ErrorProbability pe;
    pe.method = PeMethod::FockOracle;
    pe.truncation = n_max;

    std::vector<double> eigenvalues;
    double threshold = 0.0;
    if (route == OracleSpectrum::Dense) {
        const TwoModeOperator op = mixed_state_delta(alphabet, params, n_max);
        eigenvalues = hermitian_eigenvalues(op.entries);
        threshold = eigenvalue_zero_threshold(op.entries);
    } else {
        check_oracle_scale(alphabet, params, n_max, kOracleMaxModeCutoff);
        const auto dim = static_cast<lapack_int>((n_max + 1) * (n_max + 1));
        const auto cols = static_cast<lapack_int>(2 * alphabet.bases);
        // Column-major V: column 2k + bit is Psi(bit, k).
        std::vector<cplx> v(static_cast<std::size_t>(dim) * static_cast<std::size_t>(cols));
        std::vector<double> signs(static_cast<std::size_t>(cols));
        for (int k = 0; k < alphabet.bases; ++k) {
            for (int bit = 0; bit <= 1; ++bit) {
                const TwoModeState s = modulated_state(bit, k, alphabet, params, n_max);
                const auto col = static_cast<std::size_t>(2 * k + bit);
                std::copy(s.amplitudes.begin(), s.amplitudes.end(), v.begin() + static_cast<long>(col * dim));
                signs[col] = (bit == 1 ? 1.0 : -1.0) / alphabet.bases;
            }
        }
        const lapack_int rank = std::min(dim, cols);
        std::vector<cplx> tau(static_cast<std::size_t>(rank));
        const lapack_int info = LAPACKE_zgeqrf(LAPACK_COL_MAJOR, dim, cols, v.data(), dim, tau.data());
        if (info != 0) {
            throw NumericalError("oracle_error_probability: zgeqrf failed with info=" + std::to_string(info),
                                 static_cast<std::size_t>(dim), 0.0);
        }
        // K = R S R^dagger, R = rank x cols upper trapezoid stored in v.
        auto r_at = [&](lapack_int i, lapack_int j) -> cplx {
            return i <= j ? v[static_cast<std::size_t>(j) * dim + i] : cplx(0.0);
        };
        HermitianMatrix k_mat(static_cast<std::size_t>(rank));
        for (lapack_int i = 0; i < rank; ++i) {
            for (lapack_int j = i; j < rank; ++j) {
                cplx acc = 0.0;
                for (lapack_int c = std::max(i, j); c < cols; ++c) {
                    acc += r_at(i, c) * signs[static_cast<std::size_t>(c)] * std::conj(r_at(j, c));
                }
                k_mat(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = acc;
            }
        }
        k_mat.mirror_upper();
        eigenvalues = hermitian_eigenvalues(k_mat);
        threshold = eigenvalue_zero_threshold(k_mat);
    }
    pe.value = std::clamp(0.5 * (1.0 - positive_part_sum(eigenvalues, threshold)), 0.0, 0.5);
    return pe;
}

std::vector<cplx> sector_vector(int difference, const SignalParams &params, int n_max) {
    const std::size_t side = static_cast<std::size_t>(n_max) + 1;
    std::vector<cplx> out(side * side, 0.0);
    const double beta_sq = params.beta_sq();
    double norm_sq = 0.0;
    for (int n1 = 0; n1 <= n_max; ++n1) {
        const int n2 = n1 + difference;
        if (n2 < 0 || n2 > n_max) {
            continue;
        }
        // beta^{n1+n2} / sqrt(n1! n2!), kept in log form for large cutoffs.
        double amp = 0.0;
        if (beta_sq > 0.0) {
            amp = std::exp(0.5 * (n1 + n2) * std::log(beta_sq) - 0.5 * (std::lgamma(n1 + 1.0) + std::lgamma(n2 + 1.0)));
        } else if (n1 == 0 && n2 == 0) {
            amp = 1.0;
        }
        out[static_cast<std::size_t>(n1) * side + static_cast<std::size_t>(n2)] = amp;
        norm_sq += amp * amp;
    }
    if (norm_sq > 0.0) {
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (cplx &c : out) {
            c *= inv;
        }
    }
    return out;
}

HermitianMatrix project_to_sectors(const TwoModeOperator &op, const SignalParams &params, int truncation) {
    const int max_d = 2 * truncation;
    const auto dim = static_cast<std::size_t>(2 * max_d + 1);
    const std::size_t side = static_cast<std::size_t>(op.n_max) + 1;

    // Sparse supports of each sector vector.
    struct Entry {
        std::size_t index;
        cplx value;
    };
    std::vector<std::vector<Entry>> sectors(dim);
    for (std::size_t a = 0; a < dim; ++a) {
        const std::vector<cplx> v = sector_vector(static_cast<int>(a) - max_d, params, op.n_max);
        for (std::size_t i = 0; i < side * side; ++i) {
            if (v[i] != cplx(0.0)) {
                sectors[a].push_back({i, v[i]});
            }
        }
    }
    HermitianMatrix out(dim);
    for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t b = a; b < dim; ++b) {
            cplx acc = 0.0;
            for (const Entry &l : sectors[a]) {
                for (const Entry &r : sectors[b]) {
                    acc += std::conj(l.value) * op.entries(l.index, r.index) * r.value;
                }
            }
            out(a, b) = acc;
        }
    }
    out.mirror_upper();
    return out;
}

}  // namespace phasebound
