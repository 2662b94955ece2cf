// Copyright 2026 The spusim Authors
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

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace spusim::cli {

/**
 * @brief Record of one invocation: what ran, on what, with which knobs.
 *
 * Everything except wall_time_ms is a pure function of the invocation, so
 * two identical runs serialize to byte-identical JSON once that field is
 * dropped.
 */
struct RunManifest {
    std::string command;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    nlohmann::json parameters = nlohmann::json::object();
    std::optional<double> certified_error;
    double wall_time_ms = 0.0;
};

void write_run_manifest(const RunManifest& m, const std::string& path);
RunManifest read_run_manifest(const std::string& path);

/// Exit codes: 0 success, 2 validation failure, 3 requested accuracy not
/// met. Diagnostics go to err; one line per failure.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace spusim::cli
