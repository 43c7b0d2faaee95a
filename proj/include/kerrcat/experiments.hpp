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


#ifndef KERRCAT_EXPERIMENTS_HPP
#define KERRCAT_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "kerrcat/config.hpp"

namespace kerrcat::cli {

std::string_view tool_version();

std::string sha256_hex(std::string_view data);

struct OutputFile {
    std::string name;
    std::string sha256;
    std::uintmax_t bytes = 0;
};

struct ExperimentRecord {
    ExperimentConfig config;
    nlohmann::json resolved_parameters;
    std::string tool_version;
    /// "ok" or "failed"
    std::string status = "ok";
    std::string error;
    double wall_time_s = 0.0;
    std::vector<OutputFile> outputs;
    nlohmann::json summary = nlohmann::json::object();

    nlohmann::json to_json() const;
};

/// Data files are staged and renamed into config.output_dir only after the
/// experiment finishes; record.json follows the same path. On failure the
/// staged files and the record go to output_dir/failed/ and the error is
/// rethrown (numerical problems as ExperimentFailed).
ExperimentRecord run(const ExperimentConfig& config);

}  // namespace kerrcat::cli

#endif  // KERRCAT_EXPERIMENTS_HPP
