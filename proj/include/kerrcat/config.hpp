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


#ifndef KERRCAT_CONFIG_HPP
#define KERRCAT_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace kerrcat::cli {

/// One run request. Frequencies inside `parameters` carry their unit in the
/// key name (_MHz, _GHz) and are converted to rad/us by the experiments.
struct ExperimentConfig {
    std::string experiment;
    nlohmann::json parameters = nlohmann::json::object();
    std::uint64_t seed = 0;
    double rate_scale = 1.0;
    std::string output_dir = "out";
};

enum class Severity { error, warning, note };

struct Diagnostic {
    Severity severity = Severity::error;
    /// JSON-pointer-like location, e.g. "parameters.cat_size".
    std::string path;
    std::string message;
};

const char* to_string(Severity s);

struct ParamSpec {
    std::string key;
    nlohmann::json default_value;
    std::string help;
    /// Lower bound for numbers (applied to every list element).
    double min = -std::numeric_limits<double>::infinity();
    bool min_inclusive = true;
};

struct ExperimentInfo {
    std::string name;
    std::string summary;
    std::vector<std::string> outputs;
    std::vector<ParamSpec> params;
    /// Whether rate_scale changes the result.
    bool uses_rate_scale = false;
};

const std::vector<ExperimentInfo>& experiment_catalog();
const ExperimentInfo* find_experiment(std::string_view name);

/// Collects every problem instead of stopping at the first one.
std::vector<Diagnostic> validate(const nlohmann::json& doc);
bool has_errors(const std::vector<Diagnostic>& diags);

/// Throws ConfigInvalid listing all errors.
ExperimentConfig parse_config(const nlohmann::json& doc);
/// Reads and parses a JSON file. Throws ConfigInvalid on I/O or syntax errors.
ExperimentConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const ExperimentConfig& cfg);

/// Parameters with every default filled in.
nlohmann::json resolved_parameters(const ExperimentConfig& cfg);

}  // namespace kerrcat::cli

#endif  // KERRCAT_CONFIG_HPP
