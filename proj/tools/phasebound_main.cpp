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

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "phasebound/run_config.hpp"

namespace {

using phasebound::Command;
using phasebound::RunConfig;

struct Flags {
    std::string config_path;
    std::string kind;
    std::vector<int> bases;
    std::vector<int> fan_bases;
    int separation_denom = 0;
    int concentration = 1;
    std::vector<double> n_means;
    std::string delta_phi;
    double p0 = 0.5;
    std::vector<int> k_bits;
    std::vector<int> key_bits;
    int symbols = 0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    double tol = 0.0;
    int n_max = 0;
    std::string csv, json, svg, out_dir;
    bool small_grid = false;
    bool linear_x = false;
    bool timing = false;
};

void add_outputs(CLI::App *sub, Flags &f, bool csv, bool json, bool svg) {
    if (csv) {
        sub->add_option("--csv", f.csv, "CSV output path (default: stdout)");
    }
    if (json) {
        sub->add_option("--json", f.json, "JSON output path (default: stdout)");
    }
    if (svg) {
        sub->add_option("--svg", f.svg, "SVG plot output path");
    }
    sub->add_option("--out-dir", f.out_dir, "Directory for relative output paths");
    sub->add_option("--config", f.config_path, "JSON config file; flags override its values");
}

void add_common(CLI::App *sub, Flags &f) {
    sub->add_option("--kind", f.kind, "Alphabet family")->check(CLI::IsMember({"wheel", "fan"}));
    sub->add_option("--m", f.bases, "Number of bases (M, or M_f for a fan)")->delimiter(',');
    sub->add_option("--f", f.concentration, "Fan concentration factor");
}

bool given(const CLI::App *sub, const char *name) {
    const CLI::Option *opt = sub->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
}

RunConfig merge(const CLI::App *sub, Command command, const Flags &f) {
    RunConfig c;
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) {
            throw phasebound::ConfigError("cannot read config file " + f.config_path);
        }
        std::stringstream ss;
        ss << in.rdbuf();
        c = phasebound::parse_config_json(ss.str());
    }
    c.command = command;
    if (given(sub, "--kind")) {
        c.kind = f.kind == "fan" ? phasebound::AlphabetKind::Fan : phasebound::AlphabetKind::Wheel;
    }
    if (given(sub, "--m")) c.bases = f.bases;
    if (given(sub, "--mf")) c.fan_bases = f.fan_bases;
    if (given(sub, "--nb")) c.separation_denom = f.separation_denom;
    if (given(sub, "--f")) c.concentration = f.concentration;
    if (given(sub, "--n-mean")) c.n_means = f.n_means;
    if (given(sub, "--delta-phi")) c.delta_phi = phasebound::parse_angle(f.delta_phi);
    if (given(sub, "--p0")) c.p0 = f.p0;
    if (given(sub, "--k-bits")) c.k_bits = f.k_bits;
    if (given(sub, "--key-bits")) c.key_bits = f.key_bits;
    if (given(sub, "--symbols")) c.symbols = f.symbols;
    if (given(sub, "--trials")) c.trials = f.trials;
    if (given(sub, "--seed")) c.seed = f.seed;
    if (given(sub, "--tol")) c.tol = f.tol;
    if (given(sub, "--n-max")) c.oracle_n_max = f.n_max;
    if (given(sub, "--small-grid")) c.small_grid = f.small_grid;
    if (given(sub, "--csv")) c.csv_path = f.csv;
    if (given(sub, "--json")) c.json_path = f.json;
    if (given(sub, "--svg")) c.svg_path = f.svg;
    if (given(sub, "--out-dir")) c.out_dir = f.out_dir;
    if (given(sub, "--linear-x")) c.log_x = !f.linear_x;
    if (given(sub, "--timing")) c.timing = f.timing;
    return c;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Phase-keyed coherent-state cipher: attacker error bounds and attack simulations"};
    app.require_subcommand(1);
    Flags f;

    auto *alphabet = app.add_subcommand("alphabet", "Emit a phase alphabet as JSON");
    add_common(alphabet, f);
    add_outputs(alphabet, f, false, true, true);

    auto *wheel = app.add_subcommand("pe-wheel", "Optimal attacker error probability, full wheel");
    wheel->add_option("--m", f.bases, "Comma-separated list of M")->delimiter(',');
    wheel->add_option("--n-mean", f.n_means, "Comma-separated list of mean photon numbers")->delimiter(',');
    wheel->add_option("--tol", f.tol, "Bessel truncation tolerance");
    wheel->add_flag("--linear-x", f.linear_x, "Linear x axis in the plot");
    add_outputs(wheel, f, true, false, true);

    auto *fan = app.add_subcommand("pe-fan", "Optimal attacker error probability, fan alphabet");
    fan->add_option("--nb", f.separation_denom, "Separation denominator N_B");
    fan->add_option("--mf", f.fan_bases, "Comma-separated list of M_f")->delimiter(',');
    fan->add_option("--n-mean", f.n_means, "Comma-separated list of mean photon numbers")->delimiter(',');
    fan->add_option("--tol", f.tol, "Bessel truncation tolerance");
    fan->add_flag("--linear-x", f.linear_x, "Linear x axis in the plot");
    add_outputs(fan, f, true, false, true);

    auto *helstrom = app.add_subcommand("helstrom", "Two-state Helstrom error probability");
    helstrom->add_option("--n-mean", f.n_means, "Comma-separated list of mean photon numbers")->delimiter(',');
    helstrom->add_option("--delta-phi", f.delta_phi, "Phase separation, e.g. pi or pi/4");
    helstrom->add_option("--p0", f.p0, "Prior of the first state");
    add_outputs(helstrom, f, true, false, true);

    auto *mc = app.add_subcommand("mc-attack", "Monte Carlo heterodyne MAP attack");
    add_common(mc, f);
    mc->add_option("--n-mean", f.n_means, "Mean photon number(s)")->delimiter(',');
    mc->add_option("--k-bits", f.k_bits, "Joint block lengths")->delimiter(',');
    mc->add_option("--trials", f.trials, "Number of trials");
    mc->add_option("--seed", f.seed, "RNG seed (required)");
    mc->add_flag("--timing", f.timing, "Report wall-clock time in the JSON");
    add_outputs(mc, f, false, true, false);

    auto *ml = app.add_subcommand("ml-search", "Exhaustive maximum-likelihood key search");
    add_common(ml, f);
    ml->add_option("--n-mean", f.n_means, "Mean photon number(s)")->delimiter(',');
    ml->add_option("--key-bits", f.key_bits, "Key lengths in bits")->delimiter(',');
    ml->add_option("--symbols", f.symbols, "Observed symbols per trial");
    ml->add_option("--trials", f.trials, "Number of trials");
    ml->add_option("--seed", f.seed, "RNG seed (required)");
    ml->add_flag("--timing", f.timing, "Report wall-clock time in the JSON");
    add_outputs(ml, f, false, true, false);

    auto *verify = app.add_subcommand("verify", "Cross-check the spectral route against independent oracles");
    verify->add_flag("--small-grid", f.small_grid, "Restrict to the quick grid");
    verify->add_option("--n-max", f.n_max, "Fock cutoff per mode");
    verify->add_option("--tol", f.tol, "Bessel truncation tolerance");
    verify->add_option("--config", f.config_path, "JSON config file; flags override its values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return phasebound::kExitUsage;
    }

    CLI::App *sub = app.get_subcommands().front();
    const Command command = *phasebound::parse_command(sub->get_name());
    RunConfig config;
    try {
        config = merge(sub, command, f);
    } catch (const phasebound::ConfigError &e) {
        nlohmann::ordered_json j;
        j["error"] = "usage";
        j["message"] = e.what();
        j["exit_code"] = phasebound::kExitUsage;
        std::cerr << j.dump() << "\n";
        return phasebound::kExitUsage;
    }
    return phasebound::run(config, std::cout, std::cerr);
}
