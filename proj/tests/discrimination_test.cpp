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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "phasebound/deltarho.hpp"
#include "phasebound/errors.hpp"

namespace phasebound {
namespace {

constexpr double kPi = 3.14159265358979323846;

double spectral(const PhaseAlphabet &a, double n) {
    return attacker_error_probability(build_coefficient_matrix(a, SignalParams(n))).value;
}

TEST(Helstrom, ClosedFormAtAntipodalPhases) {
    for (double n : {0.0, 0.25, 1.0, 4.0, 30.0}) {
        const double expected = 0.5 * (1.0 - std::sqrt(1.0 - std::exp(-2.0 * n)));
        EXPECT_NEAR(helstrom_two_state(n, kPi).value, expected, 1e-15);
        EXPECT_EQ(helstrom_two_state(n, kPi).method, PeMethod::HelstromClosedForm);
    }
    EXPECT_NEAR(helstrom_two_state(1.0, kPi).value, 0.0350632525, 1e-10);
}

TEST(Helstrom, UnequalPriors) {
    const double n = 0.7;
    const double dphi = 1.1;
    const double p0 = 0.3;
    const double ov = std::exp(-2.0 * n * (1.0 - std::cos(dphi / 2.0)));
    EXPECT_NEAR(helstrom_two_state(n, dphi, p0, 0.7).value, 0.5 * (1.0 - std::sqrt(1.0 - 4.0 * p0 * 0.7 * ov)), 1e-15);
    // identical states: guess the likelier one
    EXPECT_NEAR(helstrom_two_state(3.0, 0.0, 0.2, 0.8).value, 0.2, 1e-15);
    EXPECT_THROW(helstrom_two_state(1.0, kPi, 0.6, 0.6), DomainError);
    EXPECT_THROW(helstrom_two_state(1.0, kPi, -0.1, 1.1), DomainError);
}

TEST(Helstrom, TinyErrorKeepsRelativePrecision) {
    const double pe = helstrom_two_state(20.0, kPi).value;
    EXPECT_NEAR(pe / (std::exp(-40.0) / 4.0), 1.0, 1e-12);
}

TEST(Overlap, KnownValues) {
    EXPECT_DOUBLE_EQ(coherent_overlap_sq(2.0, 0.0), 1.0);
    EXPECT_NEAR(coherent_overlap_sq(1.0, kPi), std::exp(-2.0), 1e-16);
    EXPECT_THROW(coherent_overlap_sq(-1.0, 1.0), DomainError);
}

TEST(SpectralPe, SingleBasisEqualsHelstrom) {
    for (double n : {0.25, 1.0, 4.0}) {
        EXPECT_NEAR(spectral(wheel_angles(1), n), helstrom_two_state(n, kPi).value, 1e-12);
    }
}

// Independent dense-matrix computation, 6-7 significant digits.
TEST(SpectralPe, PinnedSmallGrid) {
    struct Point {
        int m;
        double n;
        double pe;
        double tol;
    };
    const Point points[] = {
        {1, 0.5, 0.10247, 1e-5},   {2, 0.5, 0.25444, 1e-5},    {4, 0.5, 0.400527, 1e-6}, {8, 0.5, 0.452894, 1e-6},
        {1, 1.0, 0.035063, 1e-6},  {2, 1.0, 0.16758, 1e-5},    {4, 1.0, 0.371483, 1e-6}, {8, 1.0, 0.441865, 1e-6},
        {1, 4.0, 8.4e-05, 1e-6},   {2, 4.0, 0.024879, 1e-6},   {4, 4.0, 0.253595, 1e-6}, {8, 4.0, 0.430273, 1e-6},
        {32, 100.0, 0.4757485, 1e-7}, {32, 1000.0, 0.0465161, 1e-7}, {64, 1000.0, 0.3682879, 1e-7},
    };
    for (const Point &p : points) {
        EXPECT_NEAR(spectral(wheel_angles(p.m), p.n), p.pe, p.tol) << "M=" << p.m << " n=" << p.n;
    }
}

TEST(SpectralPe, PinnedFan) {
    EXPECT_NEAR(spectral(fan_angles(2, 512), 1000.0), 0.475760, 1e-6);
    EXPECT_NEAR(spectral(fan_angles(32, 32), 1000.0), 0.485076, 1e-6);
    EXPECT_NEAR(spectral(fan_angles(2, 128), 1000.0), 0.403889, 1e-6);
    EXPECT_NEAR(spectral(fan_angles(32, 8), 1000.0), 0.484066, 1e-6);
}

TEST(SpectralPe, BoundedAndInvariantUnderRelabelling) {
    std::mt19937 rng(11);
    for (int m : {3, 6, 12}) {
        for (double n : {0.3, 2.0, 40.0}) {
            PhaseAlphabet a = fan_angles(m, 2);
            const double pe = spectral(a, n);
            EXPECT_GE(pe, 0.0);
            EXPECT_LE(pe, 0.5);
            std::shuffle(a.angles.begin(), a.angles.end(), rng);
            EXPECT_NEAR(spectral(a, n), pe, 1e-12);
        }
    }
}

TEST(SpectralPe, MoreBasesNeverHelpTheAttackerOnTheWheel) {
    for (double n : {1.0, 100.0}) {
        double prev = 0.0;
        for (int m = 1; m <= 256; m *= 2) {
            const double pe = spectral(wheel_angles(m), n);
            EXPECT_GE(pe, prev - 1e-12) << "M=" << m;
            prev = pe;
        }
    }
}

TEST(SpectralPe, TruncationIsReported) {
    const auto pe = attacker_error_probability(build_coefficient_matrix(wheel_angles(4), SignalParams(2.0), 9));
    ASSERT_TRUE(pe.truncation.has_value());
    EXPECT_EQ(*pe.truncation, 9);
    EXPECT_EQ(pe.method, PeMethod::AnalyticSpectral);
}

TEST(Sweep, WheelSortedAndFailuresKeptInRow) {
    const std::vector<int> ms{8, 0, 2};
    const std::vector<double> ns{4.0, 1.0};
    const auto rows = sweep_wheel(ms, ns, 1e-14);
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_EQ(rows[0].bases, 0);
    EXPECT_TRUE(rows[0].error.has_value());
    EXPECT_TRUE(rows[1].error.has_value());
    EXPECT_EQ(rows[2].bases, 2);
    EXPECT_EQ(rows[2].n_mean, 1.0);
    EXPECT_EQ(rows[3].n_mean, 4.0);
    EXPECT_EQ(rows[5].bases, 8);
    EXPECT_NEAR(rows[2].pe, 0.16758, 1e-5);
    EXPECT_THROW(sweep_wheel({}, ns, 1e-14), DomainError);
}

TEST(Sweep, FanRowsCarryGeometry) {
    const std::vector<int> mfs{4, 3};
    const std::vector<double> ns{1.0};
    const auto rows = sweep_fan(16, mfs, ns, 1e-14);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].bases, 3);
    EXPECT_TRUE(rows[0].error.has_value());
    EXPECT_EQ(rows[1].kind, AlphabetKind::Fan);
    EXPECT_EQ(rows[1].concentration, 4);
    EXPECT_EQ(rows[1].separation_denom, 16);
    EXPECT_FALSE(rows[1].error.has_value());
}

TEST(Sweep, CsvFormat) {
    const std::vector<int> ms{0, 1};
    const std::vector<double> ns{1.0};
    const auto rows = sweep_wheel(ms, ns, 1e-14);
    std::ostringstream out;
    write_sweep_csv(out, rows);
    std::istringstream in(out.str());
    std::string header;
    std::string failed;
    std::string ok;
    std::getline(in, header);
    std::getline(in, failed);
    std::getline(in, ok);
    EXPECT_EQ(header, "kind,M,f,N_B,n_mean,P,pe,method,tail_bound");
    EXPECT_NE(failed.find(",nan,failed,"), std::string::npos);
    EXPECT_EQ(ok.rfind("wheel,1,1,1,1,", 0), 0u);
    // 17 significant digits round-trip the stored double
    std::vector<std::string> cells;
    std::stringstream ss(ok);
    for (std::string cell; std::getline(ss, cell, ',');) {
        cells.push_back(cell);
    }
    ASSERT_EQ(cells.size(), 9u);
    EXPECT_EQ(std::stod(cells[6]), rows[1].pe);
    EXPECT_EQ(cells[7], "analytic_spectral");
}

TEST(PeMethodNames, Strings) {
    EXPECT_EQ(to_string(PeMethod::AnalyticSpectral), "analytic_spectral");
    EXPECT_EQ(to_string(PeMethod::FockOracle), "fock_oracle");
    EXPECT_EQ(to_string(PeMethod::HelstromClosedForm), "helstrom_closed_form");
    EXPECT_EQ(to_string(PeMethod::MonteCarlo), "monte_carlo");
}

}  // namespace
}  // namespace phasebound
