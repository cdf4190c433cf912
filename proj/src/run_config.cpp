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

#include "phasebound/run_config.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "phasebound/attacksim.hpp"
#include "phasebound/discrimination.hpp"
#include "phasebound/errors.hpp"
#include "phasebound/svg_plot.hpp"
#include "phasebound/verification.hpp"

namespace phasebound {

namespace {

using ordered_json = nlohmann::ordered_json;

const std::map<std::string_view, Command> &command_names() {
    static const std::map<std::string_view, Command> names{
        {"alphabet", Command::Alphabet}, {"pe-wheel", Command::PeWheel},   {"pe-fan", Command::PeFan},
        {"helstrom", Command::Helstrom}, {"mc-attack", Command::McAttack}, {"ml-search", Command::MlSearch},
        {"verify", Command::Verify},
    };
    return names;
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::filesystem::path resolve_output(const RunConfig &config, const std::string &path) {
    std::filesystem::path p(path);
    if (p.is_absolute()) {
        return p;
    }
    std::string dir = config.out_dir;
    if (dir.empty()) {
        if (const char *env = std::getenv(kOutDirEnv)) {
            dir = env;
        }
    }
    return dir.empty() ? p : std::filesystem::path(dir) / p;
}

void write_file(const RunConfig &config, const std::string &path, const std::string &content) {
    const std::filesystem::path target = resolve_output(config, path);
    if (target.has_parent_path()) {
        std::filesystem::create_directories(target.parent_path());
    }
    std::ofstream f(target, std::ios::binary);
    if (!f) {
        throw ConfigError("cannot open output file " + target.string());
    }
    f << content;
}

// CSV goes to --csv when given, otherwise to stdout.
void emit_text(const RunConfig &config, const std::string &path, const std::string &content, std::ostream &out) {
    if (path.empty()) {
        out << content;
    } else {
        write_file(config, path, content);
    }
}

PhaseAlphabet single_alphabet(const RunConfig &config) {
    const int m = config.bases.front();
    return config.kind == AlphabetKind::Wheel ? wheel_angles(m) : fan_angles(m, config.concentration);
}

ordered_json alphabet_summary(const PhaseAlphabet &a) {
    ordered_json j;
    j["kind"] = std::string(to_string(a.kind));
    j["M"] = a.bases;
    j["f"] = a.concentration;
    j["N_B"] = a.separation_denom;
    return j;
}

std::string dump_reports(const std::vector<ordered_json> &reports) {
    if (reports.size() == 1) {
        return reports.front().dump(2) + "\n";
    }
    ordered_json arr = ordered_json::array();
    for (const auto &r : reports) {
        arr.push_back(r);
    }
    return arr.dump(2) + "\n";
}

std::vector<PlotSeries> series_by_n_mean(const std::vector<SweepRow> &rows, const std::vector<double> &n_means) {
    std::vector<PlotSeries> series;
    for (double n : n_means) {
        PlotSeries s;
        s.label = "<n> = " + format_real(n);
        for (const SweepRow &r : rows) {
            if (r.n_mean == n && !r.error) {
                s.x.push_back(r.bases);
                s.y.push_back(r.pe);
            }
        }
        series.push_back(std::move(s));
    }
    return series;
}

int run_sweep(const RunConfig &config, const std::vector<SweepRow> &rows, const std::string &x_label,
              std::ostream &out, std::ostream &err) {
    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    emit_text(config, config.csv_path, csv.str(), out);
    if (!config.svg_path.empty()) {
        PlotOptions opt;
        opt.title = config.command == Command::PeWheel
                        ? "Attacker error probability, full wheel"
                        : "Attacker error probability, fan with N_B = " + std::to_string(config.separation_denom);
        opt.x_label = x_label;
        opt.y_label = "P_e";
        opt.log_x = config.log_x;
        write_file(config, config.svg_path, render_line_chart(series_by_n_mean(rows, config.n_means), opt));
    }
    int failures = 0;
    for (const SweepRow &r : rows) {
        if (r.error) {
            ++failures;
            ordered_json e;
            e["error"] = "point_failed";
            e["M"] = r.bases;
            e["n_mean"] = r.n_mean;
            e["message"] = *r.error;
            err << e.dump() << "\n";
        }
    }
    return failures == 0 ? kExitOk : kExitNumerical;
}

int run_helstrom(const RunConfig &config, std::ostream &out) {
    std::ostringstream csv;
    csv << "n_mean,delta_phi,p0,p1,pe,method\n";
    PlotSeries s;
    s.label = "Helstrom";
    for (double n : config.n_means) {
        const ErrorProbability pe = helstrom_two_state(n, config.delta_phi, config.p0, 1.0 - config.p0);
        csv << format_real(n) << ',' << format_real(config.delta_phi) << ',' << format_real(config.p0) << ','
            << format_real(1.0 - config.p0) << ',' << format_real(pe.value) << ',' << to_string(pe.method) << '\n';
        s.x.push_back(n);
        s.y.push_back(pe.value);
    }
    emit_text(config, config.csv_path, csv.str(), out);
    if (!config.svg_path.empty()) {
        PlotOptions opt;
        opt.title = "Two-state Helstrom error probability";
        opt.x_label = "<n>";
        opt.y_label = "P_e";
        opt.log_x = false;
        write_file(config, config.svg_path, render_line_chart({s}, opt));
    }
    return kExitOk;
}

int run_mc_attack(const RunConfig &config, std::ostream &out) {
    const PhaseAlphabet alphabet = single_alphabet(config);
    const std::vector<int> ks = config.k_bits.empty() ? std::vector<int>{1} : config.k_bits;
    std::vector<ordered_json> reports;
    for (double n : config.n_means) {
        const SignalParams params(n);
        for (int k : ks) {
            const auto start = std::chrono::steady_clock::now();
            const JointAttackResult r = joint_attack_success(k, alphabet, params, config.trials, *config.seed);
            const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            ordered_json j;
            j["model"] = "heterodyne_map_uniform_basis";
            j["alphabet"] = alphabet_summary(alphabet);
            j["n_mean"] = n;
            j["k_bits"] = k;
            j["trials"] = r.joint.trials;
            j["success_rate"] = r.joint.success_rate;
            j["ci95"] = r.joint.ci95;
            j["candidates_tried"] = 0;
            j["elapsed_seconds"] = config.timing ? elapsed : 0.0;
            j["seed"] = *config.seed;
            j["per_bit_success_rate"] = r.single.success_rate;
            j["predicted_joint"] = r.predicted;
            reports.push_back(j);
            out << "n_mean=" << format_real(n) << " k=" << k << " joint=" << format_real(r.joint.success_rate)
                << " per_bit=" << format_real(r.single.success_rate) << " per_bit^k=" << format_real(r.predicted)
                << "\n";
        }
    }
    emit_text(config, config.json_path, dump_reports(reports), out);
    return kExitOk;
}

int run_ml_search(const RunConfig &config, std::ostream &out) {
    const PhaseAlphabet alphabet = single_alphabet(config);
    std::vector<ordered_json> reports;
    for (double n : config.n_means) {
        const SignalParams params(n);
        for (int b : config.key_bits) {
            const KeySearchResult r = ml_key_search(b, config.symbols, alphabet, params, config.trials, *config.seed);
            ordered_json j;
            j["model"] = "heterodyne_ml_lfsr_key_search";
            j["alphabet"] = alphabet_summary(alphabet);
            j["n_mean"] = n;
            j["key_bits"] = b;
            j["symbols"] = config.symbols;
            j["trials"] = r.result.trials;
            j["success_rate"] = r.result.success_rate;
            j["ci95"] = r.result.ci95;
            j["candidates_tried"] = r.result.candidates_tried;
            j["elapsed_seconds"] = config.timing ? r.result.elapsed_seconds : 0.0;
            j["seed"] = *config.seed;
            reports.push_back(j);
            out << "n_mean=" << format_real(n) << " key_bits=" << b << " success=" << format_real(r.result.success_rate)
                << " candidates=" << r.result.candidates_tried << " search_seconds=" << r.result.elapsed_seconds
                << "\n";
        }
    }
    emit_text(config, config.json_path, dump_reports(reports), out);
    return kExitOk;
}

template <typename T>
void read_list(const nlohmann::json &j, const char *key, std::vector<T> &dst) {
    if (!j.contains(key)) {
        return;
    }
    const auto &v = j.at(key);
    dst = v.is_array() ? v.get<std::vector<T>>() : std::vector<T>{v.get<T>()};
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
    const auto &names = command_names();
    const auto it = names.find(name);
    if (it == names.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::string_view to_string(Command command) {
    for (const auto &[name, c] : command_names()) {
        if (c == command) {
            return name;
        }
    }
    return "unknown";
}

double parse_angle(std::string_view text) {
    std::string s;
    for (char c : text) {
        if (c != ' ' && c != '*') {
            s += c;
        }
    }
    if (s.empty()) {
        throw ConfigError("empty angle");
    }
    const auto pos = s.find("pi");
    try {
        if (pos == std::string::npos) {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size()) {
                throw ConfigError("bad angle '" + std::string(text) + "'");
            }
            return v;
        }
        const std::string coef = s.substr(0, pos);
        std::string rest = s.substr(pos + 2);
        double factor = 1.0;
        if (coef == "-") {
            factor = -1.0;
        } else if (!coef.empty() && coef != "+") {
            std::size_t used = 0;
            factor = std::stod(coef, &used);
            if (used != coef.size()) {
                throw ConfigError("bad angle '" + std::string(text) + "'");
            }
        }
        double divisor = 1.0;
        if (!rest.empty()) {
            if (rest[0] != '/') {
                throw ConfigError("bad angle '" + std::string(text) + "'");
            }
            std::size_t used = 0;
            divisor = std::stod(rest.substr(1), &used);
            if (used != rest.size() - 1 || divisor == 0.0) {
                throw ConfigError("bad angle '" + std::string(text) + "'");
            }
        }
        return factor * std::numbers::pi / divisor;
    } catch (const std::logic_error &) {
        throw ConfigError("bad angle '" + std::string(text) + "'");
    }
}

RunConfig parse_config_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) {
        throw ConfigError("config: top level must be an object");
    }
    RunConfig c;
    try {
        if (j.contains("command")) {
            const auto cmd = parse_command(j.at("command").get<std::string>());
            if (!cmd) {
                throw ConfigError("config: unknown command");
            }
            c.command = *cmd;
        }
        if (j.contains("kind")) {
            const std::string kind = j.at("kind").get<std::string>();
            if (kind != "wheel" && kind != "fan") {
                throw ConfigError("config: kind must be wheel or fan");
            }
            c.kind = kind == "wheel" ? AlphabetKind::Wheel : AlphabetKind::Fan;
        }
        read_list(j, "m", c.bases);
        read_list(j, "mf", c.fan_bases);
        read_list(j, "n_mean", c.n_means);
        read_list(j, "k_bits", c.k_bits);
        read_list(j, "key_bits", c.key_bits);
        c.separation_denom = j.value("nb", c.separation_denom);
        c.concentration = j.value("f", c.concentration);
        if (j.contains("delta_phi")) {
            const auto &v = j.at("delta_phi");
            c.delta_phi = v.is_string() ? parse_angle(v.get<std::string>()) : v.get<double>();
        }
        c.p0 = j.value("p0", c.p0);
        c.symbols = j.value("symbols", c.symbols);
        c.trials = j.value("trials", c.trials);
        if (j.contains("seed")) {
            c.seed = j.at("seed").get<std::uint64_t>();
        }
        c.tol = j.value("tol", c.tol);
        c.oracle_n_max = j.value("n_max", c.oracle_n_max);
        c.small_grid = j.value("small_grid", c.small_grid);
        c.csv_path = j.value("csv", c.csv_path);
        c.json_path = j.value("json", c.json_path);
        c.svg_path = j.value("svg", c.svg_path);
        c.out_dir = j.value("out_dir", c.out_dir);
        c.log_x = j.value("log_x", c.log_x);
        c.timing = j.value("timing", c.timing);
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return c;
}

void validate(const RunConfig &c) {
    auto require = [](bool ok, const std::string &msg) {
        if (!ok) {
            throw ConfigError(msg);
        }
    };
    for (int m : c.bases) {
        require(m >= 1 && m <= (1 << 16), "M must lie in [1, 65536]");
    }
    for (double n : c.n_means) {
        require(std::isfinite(n) && n >= 0.0 && n <= 1e6, "n_mean must lie in [0, 1e6]");
    }
    require(c.tol > 0.0 && c.tol < 1.0, "tol must lie in (0, 1)");
    require(c.concentration >= 1, "f must be >= 1");

    switch (c.command) {
        case Command::Alphabet:
            require(c.bases.size() == 1, "alphabet needs exactly one --m");
            break;
        case Command::PeWheel:
            require(!c.bases.empty() && !c.n_means.empty(), "pe-wheel needs --m and --n-mean lists");
            break;
        case Command::PeFan:
            require(c.separation_denom >= 1, "pe-fan needs --nb >= 1");
            require(!c.fan_bases.empty() && !c.n_means.empty(), "pe-fan needs --mf and --n-mean lists");
            for (int mf : c.fan_bases) {
                require(mf >= 1 && mf <= c.separation_denom, "each M_f must lie in [1, N_B]");
            }
            break;
        case Command::Helstrom:
            require(!c.n_means.empty(), "helstrom needs --n-mean");
            require(std::isfinite(c.delta_phi), "delta-phi must be finite");
            require(c.p0 >= 0.0 && c.p0 <= 1.0, "p0 must lie in [0, 1]");
            break;
        case Command::McAttack:
        case Command::MlSearch:
            require(c.seed.has_value(), std::string(to_string(c.command)) + " requires --seed");
            require(c.bases.size() == 1, std::string(to_string(c.command)) + " needs exactly one --m");
            require(!c.n_means.empty(), std::string(to_string(c.command)) + " needs --n-mean");
            for (double n : c.n_means) {
                require(n > 0.0, "attack simulations need n_mean > 0");
            }
            require(c.trials >= 1 && c.trials <= 100000000, "trials must lie in [1, 1e8]");
            if (c.command == Command::McAttack) {
                for (int k : c.k_bits) {
                    require(k >= 1 && k <= 64, "k-bits must lie in [1, 64]");
                }
            } else {
                require(!c.key_bits.empty(), "ml-search needs --key-bits");
                for (int b : c.key_bits) {
                    require(b >= 1 && b <= kMaxKeyBits, "key-bits must lie in [1, 24]");
                }
                require(c.symbols >= 1 && c.symbols <= 1000000, "symbols must lie in [1, 1e6]");
            }
            break;
        case Command::Verify:
            require(c.oracle_n_max >= 1 && c.oracle_n_max <= 60, "n-max must lie in [1, 60]");
            break;
    }
}

int run(const RunConfig &config, std::ostream &out, std::ostream &err) {
    auto fail = [&](const char *kind, const std::string &message, int code) {
        ordered_json e;
        e["error"] = kind;
        e["message"] = message;
        e["exit_code"] = code;
        err << e.dump() << "\n";
        return code;
    };
    try {
        validate(config);
        switch (config.command) {
            case Command::Alphabet: {
                const PhaseAlphabet a = single_alphabet(config);
                emit_text(config, config.json_path, alphabet_to_json(a) + "\n", out);
                if (!config.svg_path.empty()) {
                    write_file(config, config.svg_path,
                               render_spokes(a, std::string(to_string(a.kind)) + " M=" + std::to_string(a.bases) +
                                                    " f=" + std::to_string(a.concentration)));
                }
                return kExitOk;
            }
            case Command::PeWheel:
                return run_sweep(config, sweep_wheel(config.bases, config.n_means, config.tol), "M", out, err);
            case Command::PeFan:
                return run_sweep(config,
                                 sweep_fan(config.separation_denom, config.fan_bases, config.n_means, config.tol),
                                 "M_f", out, err);
            case Command::Helstrom:
                return run_helstrom(config, out);
            case Command::McAttack:
                return run_mc_attack(config, out);
            case Command::MlSearch:
                return run_ml_search(config, out);
            case Command::Verify: {
                VerifyOptions opt;
                opt.small_grid = config.small_grid;
                opt.oracle_n_max = config.oracle_n_max;
                opt.tol = config.tol;
                const auto checks = run_verification(opt);
                print_verification_table(out, checks);
                for (const auto &c : checks) {
                    if (!c.passed) {
                        return fail("verification_failed", c.name, kExitNumerical);
                    }
                }
                return kExitOk;
            }
        }
    } catch (const ConfigError &e) {
        return fail("usage", e.what(), kExitUsage);
    } catch (const DomainError &e) {
        return fail("usage", e.what(), kExitUsage);
    } catch (const ResourceError &e) {
        return fail("usage", e.what(), kExitUsage);
    } catch (const NumericalError &e) {
        return fail("numerical", e.what(), kExitNumerical);
    } catch (const TruncationError &e) {
        return fail("numerical", e.what(), kExitNumerical);
    }
    return kExitOk;
}

}  // namespace phasebound
