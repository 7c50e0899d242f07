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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mbqc/gate_plan.hpp"
#include "mbqc/lattice.hpp"

namespace mbqc::tools {

inline constexpr int kSchemaVersion = 1;

enum class BackendChoice { Dense, Tableau, Both };

/// Plan description as written in the config; built into a GatePlan on demand
/// so sweeps can rebuild it with a different rotation angle.
struct PlanSpec {
  std::string gate;  // identity | hadamard | pi2 | zrot | diag2d | csign | concat | custom
  nlohmann::json params = nlohmann::json::object();
  std::optional<nlohmann::json> graph;
  std::vector<PlanSpec> parts;  // concat only
  nlohmann::json custom;        // custom only: inputs, outputs, steps, corrections, ideal
  std::string where;            // field path for diagnostics
};

struct VerifySettings {
  std::size_t random_inputs = 3;
  double max_strength = 0.6;
  bool all_pairs = true;
  double tolerance = 1e-9;
  double ideal_tolerance = 1e-10;
};

struct SweepSettings {
  std::string parameter;  // "strength" or "theta"
  double start = 0.0;
  double stop = 0.0;
  double step = 0.1;

  std::vector<double> points() const;
};

struct CsignSearchSettings {
  std::size_t max_vertices = 13;
  int window = 4;
  std::optional<std::string> pinned;  // geometry JSON to re-validate
};

struct ExperimentConfig {
  std::uint64_t seed = 0;
  BackendChoice backend = BackendChoice::Dense;
  std::size_t dense_qubit_cap = 22;
  std::vector<PlanSpec> plans;
  Perturbation perturbation;
  VerifySettings verify;
  std::optional<SweepSettings> sweep;
  CsignSearchSettings csign;
  std::string output_dir = "mbqc-out";
  std::vector<std::string> formats{"csv", "json"};
  nlohmann::json source;  // the parsed document, echoed into sidecars
};

/// Throws ParseError naming the offending field (or line for JSON syntax).
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// The built-in gate set (identity, Clifford, rotation, 2D and CSIGN plans) with every check enabled.
ExperimentConfig paper_suite_config();

/// Builds a plan; theta overrides the rotation angle of zrot parts.
GatePlan build_plan(const PlanSpec& spec, std::optional<double> theta = std::nullopt);
/// Builds every configured plan, reporting failures as ParseError.
std::vector<GatePlan> build_plans(const ExperimentConfig& config, std::optional<double> theta = std::nullopt);

std::string_view name_of(BackendChoice b);
BackendChoice parse_backend(std::string_view name);

Graph graph_from_json(const nlohmann::json& j, const std::string& where);
nlohmann::json graph_to_json(const Graph& g);
nlohmann::json plan_to_json(const GatePlan& plan);

}  // namespace mbqc::tools
