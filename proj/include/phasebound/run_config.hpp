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

#ifndef PHASEBOUND_RUN_CONFIG_HPP
#define PHASEBOUND_RUN_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "phasebound/encoding.hpp"

namespace phasebound {

enum class Command { Alphabet, PeWheel, PeFan, Helstrom, McAttack, MlSearch, Verify };

std::optional<Command> parse_command(std::string_view name);
std::string_view to_string(Command command);

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Environment variable naming the directory for relative output paths.
inline constexpr const char *kOutDirEnv = "PHASEBOUND_OUT_DIR";

/// Thrown by validate() and the config-file reader; maps to exit code 2.
class ConfigError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    Command command = Command::Verify;

    AlphabetKind kind = AlphabetKind::Wheel;  // alphabet, mc-attack, ml-search
    std::vector<int> bases;                   // M list (wheel) or single M / M_f
    std::vector<int> fan_bases;               // M_f list (pe-fan)
    int separation_denom = 0;                 // N_B (pe-fan)
    int concentration = 1;                    // f (fan alphabets outside pe-fan)
    std::vector<double> n_means;

    double delta_phi = 3.141592653589793;  // helstrom
    double p0 = 0.5;

    std::vector<int> k_bits;    // mc-attack
    std::vector<int> key_bits;  // ml-search
    int symbols = 64;
    std::int64_t trials = 10000;
    std::optional<std::uint64_t> seed;

    double tol = 1e-14;
    int oracle_n_max = 40;
    bool small_grid = false;

    std::string csv_path;
    std::string json_path;
    std::string svg_path;
    std::string out_dir;  // empty: use $PHASEBOUND_OUT_DIR, then the working directory
    bool log_x = true;
    bool timing = false;  // when false, JSON reports carry elapsed_seconds = 0 for reproducible output
};

/// Reads a JSON config object; keys mirror the long flag names with '_' for '-'
/// (e.g. "n_mean": [100, 1000], "nb": 1024, "mf": [2, 32]).
RunConfig parse_config_json(std::string_view text);

/// Throws ConfigError when a parameter is outside the module guardrails.
void validate(const RunConfig &config);

/// Accepts plain numbers and forms like "pi", "-pi", "pi/4", "3pi/2", "0.5*pi".
double parse_angle(std::string_view text);

/// Executes the command; artifacts go to the configured paths, summaries to `out`.
/// Errors are written to `err` as one JSON line {"error", "message", "exit_code"}.
int run(const RunConfig &config, std::ostream &out, std::ostream &err);

}  // namespace phasebound

#endif
