// Copyright 2026 The mbqc-correlator Authors
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

#pragma once

#include <cstddef>
#include <filesystem>
#include <string>

#include "mbqc_tools/config.hpp"

namespace mbqc::tools {

enum ExitCode : int { kSuccess = 0, kCheckFailure = 1, kConfigError = 2, kResourceLimit = 3 };

struct RunResult {
  int exit_code = kSuccess;
  std::string summary;  // one human-readable line
};

/// Central-equivalence and ideal-value checks; writes verify.csv and verify.json.
RunResult run_verify(const ExperimentConfig& config, const std::filesystem::path& out, std::size_t jobs);
/// One CSV per plan over the sweep grid plus sweep.json.
RunResult run_sweep(const ExperimentConfig& config, const std::filesystem::path& out, std::size_t jobs);
/// Geometry search (or pinned re-validation); writes csign_geometry.json and csign_transcript.txt.
RunResult run_csign_search(const ExperimentConfig& config, const std::filesystem::path& out);
/// Resource-state density per plan; writes tomography_<i>_<label>.csv and tomography.json.
RunResult run_tomography(const ExperimentConfig& config, const std::filesystem::path& out, std::size_t jobs);

/// "%.17g", the only float format written to result files.
std::string format_double(double v);

}  // namespace mbqc::tools
