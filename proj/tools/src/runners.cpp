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

#include "mbqc_tools/runners.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "mbqc/correlator.hpp"
#include "mbqc/csign.hpp"
#include "mbqc/density.hpp"
#include "mbqc/error.hpp"
#include "mbqc/lattice.hpp"

namespace mbqc::tools {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kBackendTolerance = 1e-12;

// Runs work(i) for i in [0, count) on up to `jobs` threads.  Callers store
// results by index, so output order never depends on completion order.
template <class F>
void run_pool(std::size_t count, std::size_t jobs, F&& work) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        work(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

bool wants(const ExperimentConfig& c, std::string_view format) {
  return std::find(c.formats.begin(), c.formats.end(), format) != c.formats.end();
}

bool uses_dense(const ExperimentConfig& c) { return c.backend != BackendChoice::Tableau; }
bool uses_tableau(const ExperimentConfig& c) { return c.backend != BackendChoice::Dense; }

std::string letters(const PauliString& p) {
  std::string s = p.str();
  return s.substr(s.find_first_not_of("+-i"));
}

std::string plan_name(const PlanSpec& spec, const GatePlan& plan) {
  const json& p = spec.params;
  char buf[64];
  if (spec.gate == "identity") {
    std::snprintf(buf, sizeof buf, "identity[k=%zu l=%zu]", p.value("k", std::size_t{1}), p.value("l", std::size_t{1}));
    return buf;
  }
  if (spec.gate == "zrot") {
    std::snprintf(buf, sizeof buf, "zrot[theta=%.6g]", p.value("theta", 0.0));
    return buf;
  }
  if (spec.gate == "diag2d") {
    std::snprintf(buf, sizeof buf, "diag2d[n=%zu]", p.value("n", std::size_t{3}));
    return buf;
  }
  return plan.label;
}

std::string file_stem(std::size_t index, const GatePlan& plan) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02zu_", index);
  std::string s = buf + plan.label;
  for (char& ch : s) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '.' && ch != '_' && ch != '-') ch = '_';
  }
  return s;
}

void write_file(const fs::path& path, const std::string& text) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text) || !out.flush()) throw ParseError("outputs.directory: cannot write " + path.string());
}

json sidecar_base(const ExperimentConfig& c, std::string_view command) {
  json j;
  j["tool"] = "mbqc-correlator";
  j["schema"] = kSchemaVersion;
  j["command"] = command;
  j["seed"] = c.seed;
  j["backend"] = name_of(c.backend);
  j["config"] = c.source;
  return j;
}

std::string csv_header() { return "# mbqc-correlator v" + std::to_string(kSchemaVersion) + "\n"; }

// Deterministic per-(plan, input) stream derived from the config seed.
std::mt19937_64 derived_rng(std::uint64_t seed, std::size_t plan, std::size_t input) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(plan), static_cast<std::uint32_t>(input)};
  return std::mt19937_64(seq);
}

struct Observable {
  std::string a;
  std::string b;
  OperatorExpression resource;
  OperatorExpression pre;
  bool pauli = true;
};

std::vector<Observable> observables_for(const GatePlan& plan, bool all_pairs) {
  std::vector<Observable> out;
  if (all_pairs) {
    for (const auto& p : resource_pauli_basis(plan.resource_register().size())) {
      const auto [a, b] = split_resource_pauli(plan, p);
      out.push_back({letters(a), letters(b), OperatorExpression::from_pauli(p), derive_pre_measurement_expression(plan, a, b), true});
    }
  } else {
    for (const auto& t : plan.targets) {
      out.push_back({t.label, "", t.observable, derive_pre_measurement_expression(plan, t.observable), t.observable.is_single_pauli()});
    }
  }
  return out;
}

std::vector<OperatorExpression> resources_of(const std::vector<Observable>& obs) {
  std::vector<OperatorExpression> out;
  for (const auto& o : obs) out.push_back(o.resource);
  return out;
}

struct CheckRow {
  std::string check;
  std::string plan;
  std::string input;
  std::string backend;
  std::string a;
  std::string b;
  double v1 = 0;
  double v2 = 0;
  double tol = 0;

  double diff() const { return std::abs(v1 - v2); }
  bool pass() const { return diff() <= tol; }
};

struct PreparedPlan {
  std::string name;
  GatePlan plan;
  std::vector<Observable> observables;
  std::vector<OperatorExpression> resources;
  std::vector<OperatorExpression> targets;
};

std::vector<PreparedPlan> prepare(const ExperimentConfig& config, std::size_t jobs, bool with_observables) {
  auto plans = build_plans(config);
  std::vector<PreparedPlan> out(plans.size());
  run_pool(plans.size(), jobs, [&](std::size_t i) {
    out[i].name = plan_name(config.plans[i], plans[i]);
    out[i].plan = plans[i];
    if (with_observables) {
      out[i].observables = observables_for(plans[i], config.verify.all_pairs);
      out[i].resources = resources_of(out[i].observables);
    }
    for (const auto& t : plans[i].targets) out[i].targets.push_back(t.observable);
  });
  return out;
}

std::vector<CheckRow> verify_cluster(const ExperimentConfig& config, const PreparedPlan& pp) {
  std::vector<CheckRow> rows;
  const GatePlan& plan = pp.plan;
  const bool tableau = uses_tableau(config) && !plan.adaptive();
  const double itol = config.verify.ideal_tolerance;
  const double etol = config.verify.tolerance;
  std::vector<double> dense_targets;
  std::vector<double> dense_post;
  if (uses_dense(config)) {
    const StateVector cluster = build_cluster_dense(plan.graph, config.dense_qubit_cap);
    dense_targets = post_measurement_expectations(cluster, plan, pp.targets);
    dense_post = post_measurement_expectations(cluster, plan, pp.resources);
    for (std::size_t t = 0; t < plan.targets.size(); ++t) {
      rows.push_back({"ideal", pp.name, "cluster", "dense", plan.targets[t].label, "", dense_targets[t], plan.targets[t].ideal_value, itol});
    }
    for (std::size_t k = 0; k < pp.observables.size(); ++k) {
      const auto& o = pp.observables[k];
      rows.push_back({"equivalence", pp.name, "cluster", "dense", o.a, o.b, dense_post[k], pre_measurement_expectation(cluster, o.pre), etol});
    }
  }
  if (tableau) {
    const Tableau cluster = build_cluster_tableau(plan.graph);
    const auto targets = post_measurement_expectations(cluster, plan, pp.targets);
    const auto post = post_measurement_expectations(cluster, plan, pp.resources);
    for (std::size_t t = 0; t < plan.targets.size(); ++t) {
      rows.push_back({"ideal", pp.name, "cluster", "tableau", plan.targets[t].label, "", targets[t], plan.targets[t].ideal_value, itol});
    }
    for (std::size_t k = 0; k < pp.observables.size(); ++k) {
      const auto& o = pp.observables[k];
      rows.push_back({"equivalence", pp.name, "cluster", "tableau", o.a, o.b, post[k], pre_measurement_expectation(cluster, o.pre), etol});
    }
    if (uses_dense(config)) {
      for (std::size_t k = 0; k < pp.observables.size(); ++k) {
        const auto& o = pp.observables[k];
        rows.push_back({"backend", pp.name, "cluster", "dense-vs-tableau", o.a, o.b, dense_post[k], post[k], kBackendTolerance});
      }
    }
  }
  return rows;
}

std::vector<CheckRow> verify_ensemble(const ExperimentConfig& config, const PreparedPlan& pp, const BranchEnsemble& input,
                                      const std::string& input_name) {
  std::vector<CheckRow> rows;
  const auto post = post_measurement_expectations(input, pp.plan, pp.resources);
  for (std::size_t k = 0; k < pp.observables.size(); ++k) {
    const auto& o = pp.observables[k];
    rows.push_back({"equivalence", pp.name, input_name, "dense", o.a, o.b, post[k], pre_measurement_expectation(input, o.pre),
                    config.verify.tolerance});
  }
  return rows;
}

std::string perturbation_label(const Perturbation& p) {
  static constexpr const char* kNames[] = {"none", "local_z_rotation", "local_x_rotation", "random_local_rotation", "depolarizing"};
  return std::string(kNames[static_cast<int>(p.model)]) + "(" + format_double(p.strength) + ")";
}

std::string dense_matrix_json_key(bool imag) { return imag ? "imag" : "real"; }

json matrix_to_json(const DensityMatrix& m) {
  json j;
  for (bool imag : {false, true}) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(imag ? m(r, c).imag() : m(r, c).real());
      rows.push_back(row);
    }
    j[dense_matrix_json_key(imag)] = rows;
  }
  return j;
}

double real_trace(const DensityMatrix& rho, const OperatorExpression& o) { return (rho * to_matrix(o)).trace().real(); }

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // fold -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RunResult run_verify(const ExperimentConfig& config, const fs::path& out, std::size_t jobs) {
  if (config.plans.empty()) throw ParseError("plans: verify needs at least one plan");
  const auto prepared = prepare(config, jobs, true);

  // One unit per (plan, input): the cluster unit covers every backend, the
  // rest are dense-only perturbed inputs.
  const bool configured = config.perturbation.model != Perturbation::Model::None;
  const std::size_t per_plan = 1 + (uses_dense(config) ? config.verify.random_inputs + (configured ? 1 : 0) : 0);
  std::vector<std::vector<CheckRow>> results(prepared.size() * per_plan);
  run_pool(results.size(), jobs, [&](std::size_t unit) {
    const std::size_t pi = unit / per_plan;
    const std::size_t input = unit % per_plan;
    const PreparedPlan& pp = prepared[pi];
    if (input == 0) {
      results[unit] = verify_cluster(config, pp);
      return;
    }
    const StateVector cluster = build_cluster_dense(pp.plan.graph, config.dense_qubit_cap);
    Perturbation model = config.perturbation;
    std::string name;
    if (input <= config.verify.random_inputs) {
      auto rng = derived_rng(config.seed, pi, input);
      model = Perturbation{Perturbation::Model::RandomLocalRotation,
                           std::uniform_real_distribution<double>(0.0, config.verify.max_strength)(rng), rng(), {}};
      name = "random#" + std::to_string(input) + ":" + perturbation_label(model);
    } else {
      name = "configured:" + perturbation_label(model);
    }
    results[unit] = verify_ensemble(config, pp, perturb(cluster, model), name);
  });

  std::ostringstream csv;
  csv << csv_header() << "check,plan,input,backend,A,B,value_1,value_2,abs_diff,pass\n";
  std::size_t checks = 0;
  std::size_t failures = 0;
  double worst = 0.0;
  json per_plan_json = json::array();
  for (std::size_t pi = 0; pi < prepared.size(); ++pi) {
    std::size_t plan_checks = 0;
    std::size_t plan_failures = 0;
    double plan_worst = 0.0;
    for (std::size_t u = pi * per_plan; u < (pi + 1) * per_plan; ++u) {
      for (const auto& r : results[u]) {
        csv << r.check << ',' << r.plan << ',' << r.input << ',' << r.backend << ',' << r.a << ',' << r.b << ','
            << format_double(r.v1) << ',' << format_double(r.v2) << ',' << format_double(r.diff()) << ','
            << (r.pass() ? "pass" : "FAIL") << '\n';
        ++plan_checks;
        plan_failures += r.pass() ? 0 : 1;
        plan_worst = std::max(plan_worst, r.diff() * (r.check == "ideal" ? 0.0 : 1.0));
      }
    }
    checks += plan_checks;
    failures += plan_failures;
    worst = std::max(worst, plan_worst);
    json pj = plan_to_json(prepared[pi].plan);
    pj["name"] = prepared[pi].name;
    pj["checks"] = plan_checks;
    pj["failures"] = plan_failures;
    pj["max_equivalence_diff"] = plan_worst;
    per_plan_json.push_back(pj);
  }

  json side = sidecar_base(config, "verify");
  side["plans"] = per_plan_json;
  side["checks"] = checks;
  side["failures"] = failures;
  side["max_equivalence_diff"] = worst;
  side["pass"] = failures == 0;
  if (wants(config, "csv")) write_file(out / "verify.csv", csv.str());
  if (wants(config, "json")) write_file(out / "verify.json", side.dump(2) + "\n");

  RunResult r;
  r.exit_code = failures == 0 ? kSuccess : kCheckFailure;
  r.summary = "verify: " + std::to_string(checks) + " checks over " + std::to_string(prepared.size()) + " plans, " +
              std::to_string(failures) + " failed, max |post - pre| = " + format_double(worst);
  return r;
}

RunResult run_sweep(const ExperimentConfig& config, const fs::path& out, std::size_t jobs) {
  if (!config.sweep) throw ParseError("sweep: section missing from config");
  if (config.plans.empty()) throw ParseError("plans: sweep needs at least one plan");
  const SweepSettings& sw = *config.sweep;
  const auto points = sw.points();
  const bool theta = sw.parameter == "theta";
  const auto base = prepare(config, jobs, false);

  std::vector<std::vector<double>> rows(base.size() * points.size());
  run_pool(rows.size(), jobs, [&](std::size_t unit) {
    const std::size_t pi = unit / points.size();
    const double x = points[unit % points.size()];
    const GatePlan plan = theta ? build_plan(config.plans[pi], x) : base[pi].plan;
    const StateVector cluster = build_cluster_dense(plan.graph, config.dense_qubit_cap);
    Perturbation model = config.perturbation;
    if (!theta) {
      if (model.model == Perturbation::Model::None) model = {Perturbation::Model::RandomLocalRotation, 0.0, config.seed, {}};
      model.strength = x;
    }
    const DensityMatrix rho = corrected_resource_density(perturb(cluster, model), plan);
    std::vector<double> row;
    for (const auto& t : plan.targets) row.push_back(real_trace(rho, t.observable));
    row.push_back(gate_fidelity(rho, plan));
    rows[unit] = std::move(row);
  });

  json side = sidecar_base(config, "sweep");
  side["parameter"] = sw.parameter;
  side["points"] = points;
  json files = json::array();
  for (std::size_t pi = 0; pi < base.size(); ++pi) {
    const GatePlan& plan = base[pi].plan;
    std::ostringstream csv;
    csv << csv_header() << (theta ? "theta" : "strength");
    for (const auto& t : plan.targets) csv << ',' << t.label;
    csv << ",fidelity\n";
    for (std::size_t k = 0; k < points.size(); ++k) {
      csv << format_double(points[k]);
      for (double v : rows[pi * points.size() + k]) csv << ',' << format_double(v);
      csv << '\n';
    }
    const std::string name = "sweep_" + file_stem(pi, plan) + ".csv";
    if (wants(config, "csv")) write_file(out / name, csv.str());
    files.push_back({{"plan", base[pi].name}, {"file", name}});
  }
  side["files"] = files;
  if (wants(config, "json")) write_file(out / "sweep.json", side.dump(2) + "\n");
  return {kSuccess, "sweep: " + std::to_string(points.size()) + " points x " + std::to_string(base.size()) + " plans over " +
                        sw.parameter};
}

namespace {

json geometry_to_json(const CsignGeometry& geo, const CsignValidation& v) {
  const auto& l = geo.labeling;
  json j;
  j["graph"] = graph_to_json(geo.graph);
  j["labeling"] = {{"a_in", l.a_in}, {"b_in", l.b_in}, {"a_out", l.a_out}, {"b_out", l.b_out},
                   {"measured", l.measured}, {"boundary", l.boundary}};
  if (v.variant) j["variant"] = name_of(*v.variant);
  return j;
}

CsignGeometry geometry_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("graph") || !j.contains("labeling")) throw ParseError(where + ": expected {graph, labeling}");
  CsignGeometry geo{graph_from_json(j.at("graph"), where + ".graph"), {}};
  const json& l = j.at("labeling");
  try {
    geo.labeling.a_in = l.at("a_in").get<std::size_t>();
    geo.labeling.b_in = l.at("b_in").get<std::size_t>();
    geo.labeling.a_out = l.at("a_out").get<std::size_t>();
    geo.labeling.b_out = l.at("b_out").get<std::size_t>();
    geo.labeling.measured = l.at("measured").get<std::array<std::size_t, 4>>();
    geo.labeling.boundary = l.at("boundary").get<std::vector<std::size_t>>();
  } catch (const json::exception& e) {
    throw ParseError(where + ".labeling: " + e.what());
  }
  return geo;
}

std::string transcript_text(const CsignValidation& v) {
  std::string s = "# CSIGN stabilizer identities (" + std::string(v.pass ? "pass" : "fail");
  if (v.variant) s += ", " + std::string(name_of(*v.variant)) + " variant";
  s += ")\n";
  for (const auto& line : v.transcript) s += line + "\n";
  if (!v.pass) s += "# " + v.reason + "\n";
  return s;
}

}  // namespace

RunResult run_csign_search(const ExperimentConfig& config, const fs::path& out) {
  const auto& cs = config.csign;
  if (cs.pinned) {
    std::ifstream in(*cs.pinned);
    if (!in) throw ParseError("csign_search.pinned: cannot read " + *cs.pinned);
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ParseError("csign_search.pinned: invalid JSON: " + std::string(e.what()));
    }
    const CsignGeometry geo = geometry_from_json(doc, "pinned");
    const CsignValidation v = validate_csign_geometry(geo.graph, geo.labeling);
    write_file(out / "csign_transcript.txt", transcript_text(v));
    if (!v.pass) return {kCheckFailure, "csign-search: pinned geometry fails: " + v.reason};
    return {kSuccess, "csign-search: pinned geometry validates (" + std::string(name_of(*v.variant)) + " variant)"};
  }

  const CsignSearchResult res = search_csign_geometry({cs.max_vertices, cs.window});
  json report;
  report["max_vertices"] = cs.max_vertices;
  report["window"] = cs.window;
  report["candidates_checked"] = res.candidates_checked;
  report["exhausted"] = res.exhausted;
  if (!res.geometry) {
    report["deepest_placement"] = res.deepest_placement;
    report["closest_miss"] = res.validation.reason;
    write_file(out / "csign_search.json", report.dump(2) + "\n");
    return {kCheckFailure, "csign-search: exhausted " + std::to_string(res.candidates_checked) + " candidates: " +
                               (res.validation.reason.empty() ? "no passing geometry" : res.validation.reason)};
  }
  report["geometry"] = geometry_to_json(*res.geometry, res.validation);
  write_file(out / "csign_search.json", report.dump(2) + "\n");
  write_file(out / "csign_geometry.json", geometry_to_json(*res.geometry, res.validation).dump(2) + "\n");
  write_file(out / "csign_transcript.txt", transcript_text(res.validation));
  return {kSuccess, "csign-search: geometry with " + std::to_string(res.geometry->graph.num_vertices()) + " vertices after " +
                        std::to_string(res.candidates_checked) + " candidates (" + std::string(name_of(*res.validation.variant)) +
                        " variant)"};
}

RunResult run_tomography(const ExperimentConfig& config, const fs::path& out, std::size_t jobs) {
  if (config.plans.empty()) throw ParseError("plans: tomography needs at least one plan");
  const auto prepared = prepare(config, jobs, false);
  const bool configured = config.perturbation.model != Perturbation::Model::None;

  struct Tomo {
    std::optional<DensityMatrix> dense;
    std::optional<DensityMatrix> tableau;
  };
  std::vector<Tomo> results(prepared.size());
  run_pool(prepared.size(), jobs, [&](std::size_t i) {
    const GatePlan& plan = prepared[i].plan;
    if (uses_dense(config)) {
      const StateVector cluster = build_cluster_dense(plan.graph, config.dense_qubit_cap);
      results[i].dense = configured ? resource_tomography(perturb(cluster, config.perturbation), plan)
                                    : resource_tomography(cluster, plan);
    }
    if (uses_tableau(config) && !plan.adaptive() && !configured) {
      results[i].tableau = resource_tomography(build_cluster_tableau(plan.graph), plan);
    }
  });

  json side = sidecar_base(config, "tomography");
  json plans = json::array();
  std::size_t failures = 0;
  for (std::size_t i = 0; i < prepared.size(); ++i) {
    const GatePlan& plan = prepared[i].plan;
    const auto basis = resource_pauli_basis(plan.resource_register().size());
    const Tomo& t = results[i];
    std::ostringstream csv;
    csv << csv_header() << "pauli";
    if (t.dense) csv << ",dense";
    if (t.tableau) csv << ",tableau";
    csv << '\n';
    for (const auto& p : basis) {
      const auto e = OperatorExpression::from_pauli(p);
      csv << letters(p);
      if (t.dense) csv << ',' << format_double(real_trace(*t.dense, e));
      if (t.tableau) csv << ',' << format_double(real_trace(*t.tableau, e));
      csv << '\n';
    }
    const std::string name = "tomography_" + file_stem(i, plan) + ".csv";
    if (wants(config, "csv")) write_file(out / name, csv.str());
    json pj{{"plan", prepared[i].name}, {"file", name}};
    const DensityMatrix& rho = t.dense ? *t.dense : *t.tableau;
    pj["fidelity"] = gate_fidelity(rho, plan);
    pj["density"] = matrix_to_json(rho);
    if (t.dense && t.tableau) {
      const double d = (*t.dense - *t.tableau).cwiseAbs().maxCoeff();
      pj["backend_max_diff"] = d;
      if (d > config.verify.tolerance) ++failures;
    }
    plans.push_back(pj);
  }
  side["plans"] = plans;
  side["input"] = configured ? perturbation_label(config.perturbation) : "cluster";
  if (wants(config, "json")) write_file(out / "tomography.json", side.dump(2) + "\n");
  return {failures == 0 ? kSuccess : kCheckFailure,
          "tomography: " + std::to_string(prepared.size()) + " plans, " + std::to_string(failures) + " backend disagreements"};
}

}  // namespace mbqc::tools
