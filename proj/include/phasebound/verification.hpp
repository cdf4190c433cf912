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

#ifndef PHASEBOUND_VERIFICATION_HPP
#define PHASEBOUND_VERIFICATION_HPP

#include <ostream>
#include <string>
#include <vector>

namespace phasebound {

struct VerificationCheck {
    std::string name;
    double measured = 0.0;  // deviation (or statistic) being checked
    double tolerance = 0.0;
    bool passed = false;
};

struct VerifyOptions {
    bool small_grid = true;  // false adds M in {16, 32} and n_mean = 8
    int oracle_n_max = 40;
    double tol = 1e-14;
};

/// Analytic-vs-oracle agreement on a grid of wheels and f=2 fans, Helstrom consistency,
/// Bessel normalisation and coefficient-matrix structure.
std::vector<VerificationCheck> run_verification(const VerifyOptions &options);

void print_verification_table(std::ostream &out, const std::vector<VerificationCheck> &checks);

}  // namespace phasebound

#endif
