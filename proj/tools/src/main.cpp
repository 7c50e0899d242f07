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

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "mbqc/error.hpp"
#include "mbqc_tools/config.hpp"
#include "mbqc_tools/runners.hpp"

namespace {

using namespace mbqc::tools;

struct Options {
  std::string config_path;
  std::string builtin;
  std::string out;
  std::string backend;
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 0;
  std::string pinned;
};

ExperimentConfig resolve(const Options& o) {
  ExperimentConfig c;
  if (!o.config_path.empty()) {
    c = load_config(o.config_path);
  } else if (o.builtin.empty() || o.builtin == "paper-suite") {
    c = paper_suite_config();
  } else {
    throw mbqc::ParseError("--builtin: unknown config '" + o.builtin + "' (expected paper-suite)");
  }
  if (o.seed) {
    c.seed = *o.seed;
    c.source["seed"] = *o.seed;
    const bool explicit_seed = c.source.contains("perturbation") && c.source["perturbation"].contains("seed");
    if (!explicit_seed) c.perturbation.seed = *o.seed;
  }
  if (!o.backend.empty()) {
    c.backend = parse_backend(o.backend);
    c.source["backend"] = o.backend;
  }
  if (!o.out.empty()) c.output_dir = o.out;
  if (!o.pinned.empty()) c.csign.pinned = o.pinned;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulates measurement-based gate sequences and checks corrected correlations against "
               "their pre-measurement stabilizer forms."};
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--config", o.config_path, "Experiment config (JSON)")->check(CLI::ExistingFile);
  app.add_option("--builtin", o.builtin, "Built-in config used when --config is absent")->default_str("paper-suite");
  app.add_option("--out", o.out, "Output directory (overrides outputs.directory)");
  app.add_option("--backend", o.backend, "dense | tableau | both")->check(CLI::IsMember({"dense", "tableau", "both"}));
  app.add_option("--seed", o.seed, "Override the config seed");
  app.add_option("--jobs", o.jobs, "Worker threads (default: hardware concurrency)");

  auto* verify = app.add_subcommand("verify", "Run the post- vs pre-measurement equivalence suite");
  auto* sweep = app.add_subcommand("sweep", "Sweep theta or a perturbation strength");
  auto* search = app.add_subcommand("csign-search", "Search for or re-validate a CSIGN lattice geometry");
  search->add_option("--pinned", o.pinned, "Geometry JSON to re-validate instead of searching");
  auto* tomo = app.add_subcommand("tomography", "Reconstruct corrected resource states");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kConfigError;
  }

  try {
    const ExperimentConfig config = resolve(o);
    const std::size_t jobs = o.jobs ? o.jobs : std::max(1u, std::thread::hardware_concurrency());
    const std::filesystem::path out = config.output_dir;
    RunResult r;
    if (verify->parsed()) r = run_verify(config, out, jobs);
    else if (sweep->parsed()) r = run_sweep(config, out, jobs);
    else if (search->parsed()) r = run_csign_search(config, out);
    else if (tomo->parsed()) r = run_tomography(config, out, jobs);
    std::cout << r.summary << '\n';
    return r.exit_code;
  } catch (const mbqc::ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const mbqc::ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kResourceLimit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCheckFailure;
  }
}
