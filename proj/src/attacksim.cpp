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

#include "phasebound/attacksim.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "phasebound/errors.hpp"

namespace phasebound {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::uint32_t kLfsrFeedback = 0x80200003u;

double uniform_open(Rng &rng) {
    // (0, 1]: never zero, so log() below is finite.
    return static_cast<double>((rng() >> 11) + 1) * 0x1p-53;
}

int random_bit(Rng &rng) {
    return static_cast<int>(rng() >> 63);
}

int random_index(Rng &rng, int n) {
    return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
}

double wrap_phase(double z) {
    double r = std::fmod(z, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    return r >= kTwoPi ? 0.0 : r;
}

// log g(u) with g(u) = 1 + sqrt(2 pi) u e^{u^2/2} Phi(u), so that the phase density is
// (1/2pi) e^{-a^2/2} g(a cos(z - mu)).
double log_g(double u) {
    constexpr double kSqrt2Pi = 2.5066282746310002;
    constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;
    if (u >= 0.0) {
        const double phi = 0.5 * std::erfc(-u * kInvSqrt2);
        return 0.5 * u * u + std::log(std::exp(-0.5 * u * u) + kSqrt2Pi * u * phi);
    }
    const double t = -u;
    if (t > 15.0) {
        // 1 - t R(t) with R the Mills ratio: 1/t^2 - 3/t^4 + 15/t^6 - 105/t^8 + 945/t^10
        const double s = 1.0 / (t * t);
        return std::log(s * (1.0 - s * (3.0 - s * (15.0 - s * (105.0 - s * 945.0)))));
    }
    const double q = 0.5 * std::erfc(t * kInvSqrt2);
    return std::log1p(-t * kSqrt2Pi * std::exp(0.5 * t * t) * q);
}

double log_sum_exp(const std::vector<double> &v) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : v) {
        m = std::max(m, x);
    }
    double s = 0.0;
    for (double x : v) {
        s += std::exp(x - m);
    }
    return m + std::log(s);
}

class Lfsr {
   public:
    explicit Lfsr(std::uint32_t state) : state_(state) {
    }
    int clock() {
        const int out = static_cast<int>(state_ & 1u);
        state_ >>= 1;
        if (out) {
            state_ ^= kLfsrFeedback;
        }
        return out;
    }

   private:
    std::uint32_t state_;
};

int bits_for(int bases) {
    int bits = 1;
    while ((1 << bits) < bases) {
        ++bits;
    }
    return bits;
}

}  // namespace

Rng trial_stream(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    return Rng(seq);
}

AttackResult make_attack_result(std::int64_t successes, std::int64_t trials) {
    AttackResult r;
    r.trials = trials;
    r.success_rate = trials > 0 ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0;
    r.ci95 = trials > 0 ? 1.96 * std::sqrt(r.success_rate * (1.0 - r.success_rate) / static_cast<double>(trials)) : 0.0;
    return r;
}

double sample_measurement(int bit, int basis, const PhaseAlphabet &alphabet, const SignalParams &params, Rng &rng) {
    if (!(params.n_mean() > 0.0)) {
        throw DomainError("sample_measurement: n_mean must be > 0");
    }
    const double half_phase = 0.5 * signal_phase(bit, basis, alphabet);
    const double amp = std::sqrt(params.n_mean());
    const double radius = std::sqrt(-std::log(uniform_open(rng)));  // sqrt(-2 ln u) * sqrt(1/2)
    const double angle = kTwoPi * uniform_open(rng);
    const double re = amp * std::cos(half_phase) + radius * std::cos(angle);
    const double im = amp * std::sin(half_phase) + radius * std::sin(angle);
    return wrap_phase(std::atan2(im, re));
}

double phase_log_density(double z, double center, double n_mean) {
    const double a = std::sqrt(2.0 * n_mean);
    return -std::log(kTwoPi) - 0.5 * a * a + log_g(a * std::cos(z - center));
}

MapDecoder::MapDecoder(const PhaseAlphabet &alphabet, const SignalParams &params)
    : scale_(std::sqrt(2.0 * params.n_mean())) {
    for (int bit = 0; bit <= 1; ++bit) {
        centers_[bit].reserve(static_cast<std::size_t>(alphabet.bases));
        for (int k = 0; k < alphabet.bases; ++k) {
            centers_[bit].push_back(0.5 * signal_phase(bit, k, alphabet));
        }
    }
}

double MapDecoder::log_g(double z, double center) const {
    return phasebound::log_g(scale_ * std::cos(z - center));
}

int MapDecoder::decide(double z) const {
    std::vector<double> terms(centers_[0].size());
    double score[2];
    for (int bit = 0; bit <= 1; ++bit) {
        for (std::size_t k = 0; k < terms.size(); ++k) {
            terms[k] = log_g(z, centers_[bit][k]);
        }
        score[bit] = log_sum_exp(terms);
    }
    return score[1] > score[0] ? 1 : 0;
}

double MapDecoder::best_bit_log_likelihood(double z, int basis) const {
    const auto k = static_cast<std::size_t>(basis);
    return std::max(log_g(z, centers_[0][k]), log_g(z, centers_[1][k]));
}

int map_bit_decision(double z, const PhaseAlphabet &alphabet, const SignalParams &params) {
    return MapDecoder(alphabet, params).decide(z);
}

AttackResult per_bit_success(const PhaseAlphabet &alphabet, const SignalParams &params, std::int64_t trials,
                             std::uint64_t seed) {
    if (trials < 1) {
        throw DomainError("per_bit_success: trials must be >= 1");
    }
    const MapDecoder decoder(alphabet, params);
    std::int64_t hits = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
        Rng rng = trial_stream(seed, static_cast<std::uint64_t>(t));
        const int bit = random_bit(rng);
        const int basis = random_index(rng, alphabet.bases);
        const double z = sample_measurement(bit, basis, alphabet, params, rng);
        hits += decoder.decide(z) == bit ? 1 : 0;
    }
    return make_attack_result(hits, trials);
}

JointAttackResult joint_attack_success(int k_bits, const PhaseAlphabet &alphabet, const SignalParams &params,
                                       std::int64_t trials, std::uint64_t seed) {
    if (k_bits < 1) {
        throw DomainError("joint_attack_success: k_bits must be >= 1");
    }
    if (trials < 1) {
        throw DomainError("joint_attack_success: trials must be >= 1");
    }
    const MapDecoder decoder(alphabet, params);
    std::int64_t joint_hits = 0;
    std::int64_t single_hits = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
        Rng rng = trial_stream(seed, static_cast<std::uint64_t>(t));
        bool all = true;
        for (int i = 0; i < k_bits; ++i) {
            const int bit = random_bit(rng);
            const int basis = random_index(rng, alphabet.bases);
            const double z = sample_measurement(bit, basis, alphabet, params, rng);
            const bool ok = decoder.decide(z) == bit;
            single_hits += ok ? 1 : 0;
            all = all && ok;
        }
        joint_hits += all ? 1 : 0;
    }
    JointAttackResult out;
    out.joint = make_attack_result(joint_hits, trials);
    out.single = make_attack_result(single_hits, trials * k_bits);
    const double p = out.single.success_rate;
    out.predicted = std::pow(p, k_bits);
    const double joint_var = out.predicted * (1.0 - out.predicted) / static_cast<double>(trials);
    const double p_var = p * (1.0 - p) / static_cast<double>(trials * k_bits);
    const double slope = k_bits * std::pow(p, k_bits - 1);
    out.predicted_sigma = std::sqrt(joint_var + slope * slope * p_var);
    return out;
}

std::vector<int> keystream_bases(std::uint32_t key, int key_bits, int symbols, int bases) {
    if (key_bits < 1 || key_bits > kMaxKeyBits) {
        throw DomainError("keystream_bases: key_bits must lie in [1, 24]");
    }
    if (bases < 1 || symbols < 0) {
        throw DomainError("keystream_bases: need bases >= 1 and symbols >= 0");
    }
    const std::uint32_t mask = (1u << key_bits) - 1u;
    Lfsr lfsr((key & mask) | (1u << key_bits));
    for (int i = 0; i < 64; ++i) {
        lfsr.clock();
    }
    const int bits = bits_for(bases);
    std::vector<int> out(static_cast<std::size_t>(symbols));
    for (int s = 0; s < symbols; ++s) {
        int v = 0;
        for (int b = 0; b < bits; ++b) {
            v = (v << 1) | lfsr.clock();
        }
        out[static_cast<std::size_t>(s)] = v % bases;
    }
    return out;
}

MeasuredSequence simulate_keyed_sequence(std::uint32_t key, int key_bits, int symbols, const PhaseAlphabet &alphabet,
                                         const SignalParams &params, Rng &rng) {
    MeasuredSequence seq;
    seq.true_bases = keystream_bases(key, key_bits, symbols, alphabet.bases);
    seq.true_bits.resize(static_cast<std::size_t>(symbols));
    seq.z.resize(static_cast<std::size_t>(symbols));
    for (std::size_t i = 0; i < seq.z.size(); ++i) {
        seq.true_bits[i] = random_bit(rng);
        seq.z[i] = sample_measurement(seq.true_bits[i], seq.true_bases[i], alphabet, params, rng);
    }
    return seq;
}

KeySearchResult ml_key_search(int key_bits, int symbols, const PhaseAlphabet &alphabet, const SignalParams &params,
                              std::int64_t trials, std::uint64_t seed) {
    if (key_bits > kMaxKeyBits) {
        throw ResourceError("ml_key_search: key_bits=" + std::to_string(key_bits) + " exceeds the guardrail of " +
                            std::to_string(kMaxKeyBits));
    }
    if (key_bits < 1 || symbols < 1 || trials < 1) {
        throw DomainError("ml_key_search: key_bits, symbols and trials must be >= 1");
    }
    const MapDecoder decoder(alphabet, params);
    const int m = alphabet.bases;
    const int bits = bits_for(m);
    const std::uint32_t candidates = 1u << key_bits;

    KeySearchResult out;
    std::int64_t hits = 0;
    double elapsed = 0.0;
    for (std::int64_t t = 0; t < trials; ++t) {
        Rng rng = trial_stream(seed, static_cast<std::uint64_t>(t));
        const auto key = static_cast<std::uint32_t>(rng() & (candidates - 1u));
        const MeasuredSequence seq = simulate_keyed_sequence(key, key_bits, symbols, alphabet, params, rng);

        // Per-symbol score for every basis; the enumeration below only sums table entries.
        std::vector<double> table(static_cast<std::size_t>(symbols) * static_cast<std::size_t>(m));
        for (int i = 0; i < symbols; ++i) {
            for (int k = 0; k < m; ++k) {
                table[static_cast<std::size_t>(i) * m + k] = decoder.best_bit_log_likelihood(seq.z[i], k);
            }
        }

        const auto start = std::chrono::steady_clock::now();
        std::uint32_t best_key = 0;
        double best_score = -std::numeric_limits<double>::infinity();
        for (std::uint32_t cand = 0; cand < candidates; ++cand) {
            Lfsr lfsr(cand | candidates);
            for (int i = 0; i < 64; ++i) {
                lfsr.clock();
            }
            double score = 0.0;
            for (int i = 0; i < symbols; ++i) {
                int v = 0;
                for (int b = 0; b < bits; ++b) {
                    v = (v << 1) | lfsr.clock();
                }
                score += table[static_cast<std::size_t>(i) * m + static_cast<std::size_t>(v % m)];
            }
            if (score > best_score) {
                best_score = score;
                best_key = cand;
            }
        }
        elapsed += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        out.recovered_keys.push_back(best_key);
        if (best_key == key || keystream_bases(best_key, key_bits, symbols, m) == seq.true_bases) {
            ++hits;
        }
    }
    out.result = make_attack_result(hits, trials);
    out.result.candidates_tried = candidates;
    out.result.elapsed_seconds = elapsed;
    return out;
}

}  // namespace phasebound
