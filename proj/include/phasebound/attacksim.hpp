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

#ifndef PHASEBOUND_ATTACKSIM_HPP
#define PHASEBOUND_ATTACKSIM_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "phasebound/deltarho.hpp"
#include "phasebound/encoding.hpp"

// Monte Carlo attacker against the phase encoding.
//
// Measurement model: ideal heterodyne (Husimi-Q sampling). The two-mode signal
// |beta e^{-i phi/2}>|beta e^{i phi/2}> has the same Gram matrix as the single-mode
// coherent state |sqrt(n) e^{i phi/2}>, so heterodyne of that mode is a physical
// measurement on the real signals: gamma = sqrt(n) e^{i phi/2} + w, w complex normal
// with variance 1/2 per quadrature. The recorded outcome is z = arg(gamma) in [0, 2pi).
//
// Random streams: every trial t owns std::mt19937_64 seeded through
// std::seed_seq{lo32(seed), hi32(seed), lo32(t), hi32(t)}. Uniform reals are
// (draw >> 11) * 2^-53; Gaussian pairs come from Box-Muller on two such reals.
// Both the engine and seed_seq are fully specified by the standard, so pinned
// values are portable.

namespace phasebound {

using Rng = std::mt19937_64;

inline constexpr int kMaxKeyBits = 24;

Rng trial_stream(std::uint64_t seed, std::uint64_t trial);

struct MeasuredSequence {
    std::vector<double> z;
    std::vector<int> true_bits;
    std::vector<int> true_bases;
    std::uint64_t seed = 0;
};

struct AttackResult {
    double success_rate = 0.0;
    std::int64_t trials = 0;
    double ci95 = 0.0;  // 1.96 sqrt(p (1-p) / trials)
    std::uint64_t candidates_tried = 0;
    double elapsed_seconds = 0.0;
};

AttackResult make_attack_result(std::int64_t successes, std::int64_t trials);

/// Draws one heterodyne phase for the signal phi(bit, basis). Requires n_mean > 0.
double sample_measurement(int bit, int basis, const PhaseAlphabet &alphabet, const SignalParams &params, Rng &rng);

/// Log of the density of z = arg(gamma) when gamma ~ CN(sqrt(n) e^{i center}, 1).
double phase_log_density(double z, double center, double n_mean);

/// Per-bit MAP decoder with a uniform prior over bases; ties go to bit 0.
class MapDecoder {
   public:
    MapDecoder(const PhaseAlphabet &alphabet, const SignalParams &params);

    int decide(double z) const;
    /// max over bits of log p(z | basis, bit), up to a z-independent constant.
    double best_bit_log_likelihood(double z, int basis) const;
    int bases() const {
        return static_cast<int>(centers_[0].size());
    }

   private:
    double log_g(double z, double center) const;

    double scale_;  // sqrt(2 n_mean)
    std::vector<double> centers_[2];
};

int map_bit_decision(double z, const PhaseAlphabet &alphabet, const SignalParams &params);

/// Fraction of correct MAP decisions over `trials` symbols with uniformly random bit and basis.
AttackResult per_bit_success(const PhaseAlphabet &alphabet, const SignalParams &params, std::int64_t trials,
                             std::uint64_t seed);

struct JointAttackResult {
    AttackResult joint;   // all k decisions right
    AttackResult single;  // every individual decision, k * trials of them
    double predicted = 0.0;        // single.success_rate^k
    double predicted_sigma = 0.0;  // binomial sigma of the joint rate plus propagated sigma of the prediction
};

JointAttackResult joint_attack_success(int k_bits, const PhaseAlphabet &alphabet, const SignalParams &params,
                                       std::int64_t trials, std::uint64_t seed);

/// Basis indices generated from a key by a 32-bit maximal-length Galois LFSR
/// (feedback mask 0x80200003). Initial state is key | (1 << key_bits), followed by 64
/// warm-up clocks; each symbol takes ceil(log2 M) output bits, reduced mod M.
std::vector<int> keystream_bases(std::uint32_t key, int key_bits, int symbols, int bases);

MeasuredSequence simulate_keyed_sequence(std::uint32_t key, int key_bits, int symbols, const PhaseAlphabet &alphabet,
                                         const SignalParams &params, Rng &rng);

struct KeySearchResult {
    AttackResult result;
    std::vector<std::uint32_t> recovered_keys;  // one per trial
};

/// Exhaustive maximum-likelihood key search: every one of the 2^key_bits candidates is scored by
/// sum_i max_bit log p(z_i | basis_i(candidate), bit). elapsed_seconds covers the enumeration only.
/// Recovery counts as success when the winning key reproduces the true basis sequence.
KeySearchResult ml_key_search(int key_bits, int symbols, const PhaseAlphabet &alphabet, const SignalParams &params,
                              std::int64_t trials, std::uint64_t seed);

}  // namespace phasebound

#endif
