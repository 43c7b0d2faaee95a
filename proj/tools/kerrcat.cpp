// Copyright 2026 The kerrcat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "kerrcat/config.hpp"
#include "kerrcat/errors.hpp"
#include "kerrcat/experiments.hpp"

namespace {

using kerrcat::cli::Diagnostic;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw kerrcat::ConfigInvalid("cannot read config file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw kerrcat::ConfigInvalid("config '" + path + "' is not valid JSON: " + e.what());
    }
}

void print(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags) {
        std::cerr << kerrcat::cli::to_string(d.severity) << ": " << (d.path.empty() ? "<root>" : d.path)
                  << ": " << d.message << '\n';
    }
}

int cmd_run(const std::string& path, std::optional<std::uint64_t> seed, std::optional<double> rate_scale,
            std::optional<std::string> out) {
    json doc = read_json(path);
    if (doc.is_object()) {
        if (seed) doc["seed"] = *seed;
        if (rate_scale) doc["rate_scale"] = *rate_scale;
        if (out) doc["output_dir"] = *out;
    }
    const auto diags = kerrcat::cli::validate(doc);
    print(diags);
    const auto cfg = kerrcat::cli::parse_config(doc);
    const auto rec = kerrcat::cli::run(cfg);
    std::cout << "experiment " << cfg.experiment << " finished in " << rec.wall_time_s << " s\n";
    for (const auto& f : rec.outputs) std::cout << "  " << (std::filesystem::path(cfg.output_dir) / f.name).string() << "  " << f.sha256 << '\n';
    std::cout << rec.summary.dump(2) << '\n';
    return kExitOk;
}

int cmd_validate(const std::string& path) {
    const auto diags = kerrcat::cli::validate(read_json(path));
    print(diags);
    if (kerrcat::cli::has_errors(diags)) return kExitConfig;
    std::cout << "config ok\n";
    return kExitOk;
}

int cmd_list() {
    for (const auto& e : kerrcat::cli::experiment_catalog()) {
        std::cout << e.name << "\n    " << e.summary << "\n    outputs:";
        for (const auto& o : e.outputs) std::cout << ' ' << o;
        std::cout << "\n    parameters:";
        for (const auto& p : e.params) std::cout << ' ' << p.key << '=' << p.default_value.dump();
        std::cout << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kerr-cat qubit simulation experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kerrcat::cli::tool_version()));

    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<double> rate_scale;
    std::optional<std::string> out;

    auto* run = app.add_subcommand("run", "Run an experiment from a config file");
    run->add_option("--config", config, "JSON config file")->required();
    run->add_option("--seed", seed, "Override the RNG seed");
    run->add_option("--rate-scale", rate_scale, "Override the dissipation rate multiplier");
    run->add_option("--out", out, "Override the output directory");

    auto* val = app.add_subcommand("validate", "Check a config file and print diagnostics");
    val->add_option("--config", config, "JSON config file")->required();

    app.add_subcommand("list-experiments", "List experiments and their parameters");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run) return cmd_run(config, seed, rate_scale, out);
        if (*val) return cmd_validate(config);
        return cmd_list();
    } catch (const kerrcat::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const kerrcat::NumericalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}
