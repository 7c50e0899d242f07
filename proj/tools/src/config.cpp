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

#include "mbqc_tools/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "mbqc/csign.hpp"
#include "mbqc/error.hpp"
#include "mbqc/plan_compiler.hpp"

namespace mbqc::tools {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) { throw ParseError(where + ": " + what); }

std::string at_key(const std::string& where, std::string_view key) {
  return where.empty() ? std::string(key) : where + "." + std::string(key);
}

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) bad(where.empty() ? "config" : where, "must be a JSON object");
}

void reject_unknown(const json& j, const std::string& where, std::initializer_list<std::string_view> known) {
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || k == key;
    if (!ok) bad(at_key(where, key), "unknown field");
  }
}

std::uint64_t get_uint(const json& j, std::string_view key, const std::string& where, std::uint64_t fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(std::string(key));
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    bad(at_key(where, key), "must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::size_t get_positive(const json& j, std::string_view key, const std::string& where, std::size_t fallback) {
  const auto v = get_uint(j, key, where, fallback);
  if (v == 0) bad(at_key(where, key), "must be a positive integer");
  return static_cast<std::size_t>(v);
}

double get_number(const json& j, std::string_view key, const std::string& where, double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(std::string(key));
  if (!v.is_number()) bad(at_key(where, key), "must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) bad(at_key(where, key), "must be finite");
  return d;
}

std::string get_string(const json& j, std::string_view key, const std::string& where, std::string fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(std::string(key));
  if (!v.is_string()) bad(at_key(where, key), "must be a string");
  return v.get<std::string>();
}

bool get_bool(const json& j, std::string_view key, const std::string& where, bool fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(std::string(key));
  if (!v.is_boolean()) bad(at_key(where, key), "must be true or false");
  return v.get<bool>();
}

std::vector<std::size_t> get_index_list(const json& j, std::string_view key, const std::string& where) {
  std::vector<std::size_t> out;
  if (!j.contains(key)) return out;
  const json& v = j.at(std::string(key));
  if (!v.is_array()) bad(at_key(where, key), "must be an array of qubit indices");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_unsigned()) bad(at_key(where, key) + "[" + std::to_string(i) + "]", "must be a non-negative integer");
    out.push_back(v[i].get<std::size_t>());
  }
  return out;
}

const std::set<std::string> kGates{"identity", "hadamard", "pi2", "zrot", "diag2d", "csign", "concat", "custom"};

PlanSpec parse_plan(const json& j, const std::string& where) {
  require_object(j, where);
  reject_unknown(j, where, {"gate", "params", "graph", "parts", "label", "inputs", "outputs", "steps", "corrections", "ideal"});
  PlanSpec spec;
  spec.where = where;
  spec.gate = get_string(j, "gate", where, "");
  if (!kGates.count(spec.gate)) bad(at_key(where, "gate"), "expected one of identity|hadamard|pi2|zrot|diag2d|csign|concat|custom");
  if (j.contains("params")) {
    spec.params = j.at("params");
    require_object(spec.params, at_key(where, "params"));
  }
  const std::string pw = at_key(where, "params");
  if (spec.gate == "identity") {
    reject_unknown(spec.params, pw, {"k", "l"});
    get_positive(spec.params, "k", pw, 1);
    get_positive(spec.params, "l", pw, 1);
  } else if (spec.gate == "zrot") {
    reject_unknown(spec.params, pw, {"theta"});
    get_number(spec.params, "theta", pw, 0.0);
  } else if (spec.gate == "diag2d") {
    reject_unknown(spec.params, pw, {"n", "sides"});
    if (get_positive(spec.params, "n", pw, 3) < 2) bad(at_key(pw, "n"), "must be at least 2");
    get_bool(spec.params, "sides", pw, false);
  } else {
    reject_unknown(spec.params, pw, {});
  }
  if (j.contains("graph")) {
    spec.graph = j.at("graph");
    graph_from_json(*spec.graph, at_key(where, "graph"));  // validate early
  }
  if (spec.gate == "concat") {
    const json& parts = j.contains("parts") ? j.at("parts") : json();
    if (!parts.is_array() || parts.size() < 2) bad(at_key(where, "parts"), "concat needs an array of at least two plans");
    for (std::size_t i = 0; i < parts.size(); ++i) {
      spec.parts.push_back(parse_plan(parts[i], at_key(where, "parts") + "[" + std::to_string(i) + "]"));
    }
  } else if (j.contains("parts")) {
    bad(at_key(where, "parts"), "only concat plans have parts");
  }
  if (spec.gate == "custom") {
    if (!spec.graph) bad(at_key(where, "graph"), "custom plans need a graph");
    spec.custom = j;
  } else {
    for (auto key : {"inputs", "outputs", "steps", "corrections", "ideal"}) {
      if (j.contains(key)) bad(at_key(where, key), "only custom plans list " + std::string(key));
    }
  }
  return spec;
}

Perturbation parse_perturbation(const json& j, const std::string& where, std::uint64_t seed) {
  require_object(j, where);
  reject_unknown(j, where, {"model", "strength", "seed", "qubits"});
  Perturbation p;
  const std::string model = get_string(j, "model", where, "none");
  if (model == "none") p.model = Perturbation::Model::None;
  else if (model == "local_z_rotation") p.model = Perturbation::Model::LocalZRotation;
  else if (model == "local_x_rotation") p.model = Perturbation::Model::LocalXRotation;
  else if (model == "random_local_rotation") p.model = Perturbation::Model::RandomLocalRotation;
  else if (model == "depolarizing") p.model = Perturbation::Model::Depolarizing;
  else bad(at_key(where, "model"), "expected none|local_z_rotation|local_x_rotation|random_local_rotation|depolarizing");
  p.strength = get_number(j, "strength", where, 0.0);
  if (p.model == Perturbation::Model::Depolarizing && (p.strength < 0.0 || p.strength > 1.0)) {
    bad(at_key(where, "strength"), "depolarizing probability must lie in [0, 1]");
  }
  p.seed = get_uint(j, "seed", where, seed);
  p.qubits = get_index_list(j, "qubits", where);
  return p;
}

OperatorExpression parse_image(const json& j, std::size_t n, const std::string& where) {
  OperatorExpression e(n);
  if (j.is_string()) {
    const auto p = PauliString::from_str(j.get<std::string>());
    if (p.size() != n) bad(where, "image must act on the " + std::to_string(n) + " output qubit(s)");
    return OperatorExpression::from_pauli(p);
  }
  if (!j.is_array()) bad(where, "image must be a Pauli string or a list of {coefficient, pauli} terms");
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string tw = where + "[" + std::to_string(i) + "]";
    require_object(j[i], tw);
    const auto p = PauliString::from_str(get_string(j[i], "pauli", tw, ""));
    if (p.size() != n) bad(tw, "term must act on the " + std::to_string(n) + " output qubit(s)");
    e.add(p, get_number(j[i], "coefficient", tw, 1.0));
  }
  return e;
}

ParityFormula parse_parity(const json& j, const std::string& where) {
  if (j.is_null()) return {};
  require_object(j, where);
  const double sign = get_number(j, "sign", where, 1.0);
  if (sign != 1.0 && sign != -1.0) bad(at_key(where, "sign"), "must be 1 or -1");
  return ParityFormula::of(get_index_list(j, "factors", where), static_cast<int>(sign));
}

GatePlan build_custom(const PlanSpec& spec) {
  const json& j = spec.custom;
  const std::string& w = spec.where;
  GatePlan p;
  p.label = get_string(j, "label", w, "custom");
  p.graph = graph_from_json(*spec.graph, at_key(w, "graph"));
  p.inputs = get_index_list(j, "inputs", w);
  p.outputs = get_index_list(j, "outputs", w);
  if (p.inputs.empty() || p.inputs.size() != p.outputs.size()) bad(w, "custom plans need matching non-empty inputs and outputs");
  const json steps = j.value("steps", json::array());
  if (!steps.is_array()) bad(at_key(w, "steps"), "must be an array");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string sw = at_key(w, "steps") + "[" + std::to_string(i) + "]";
    require_object(steps[i], sw);
    reject_unknown(steps[i], sw, {"qubit", "basis", "angle", "depends_on"});
    MeasurementStep s;
    if (!steps[i].contains("qubit")) bad(sw, "missing qubit");
    s.qubit = static_cast<std::size_t>(get_uint(steps[i], "qubit", sw, 0));
    try {
      s.basis = parse_basis(get_string(steps[i], "basis", sw, ""));
    } catch (const ParseError& e) {
      bad(at_key(sw, "basis"), e.what());
    }
    s.angle = get_number(steps[i], "angle", sw, 0.0);
    s.angle_dependencies = get_index_list(steps[i], "depends_on", sw);
    p.steps.push_back(std::move(s));
  }
  if (j.contains("corrections")) {
    const json& cs = j.at("corrections");
    if (!cs.is_array()) bad(at_key(w, "corrections"), "must be an array");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string cw = at_key(w, "corrections") + "[" + std::to_string(i) + "]";
      require_object(cs[i], cw);
      Correction c;
      c.qubit = static_cast<std::size_t>(get_uint(cs[i], "qubit", cw, 0));
      c.x_parity = parse_parity(cs[i].value("x", json()), at_key(cw, "x"));
      c.z_parity = parse_parity(cs[i].value("z", json()), at_key(cw, "z"));
      p.corrections.push_back(std::move(c));
    }
  } else {
    p.corrections = derive_corrections(p.graph, p.inputs, p.outputs, p.steps);
  }
  const std::size_t k = p.outputs.size();
  if (j.contains("ideal")) {
    const json& id = j.at("ideal");
    require_object(id, at_key(w, "ideal"));
    for (const char* key : {"x_images", "z_images"}) {
      const json arr = id.value(key, json::array());
      if (!arr.is_array() || arr.size() != k) bad(at_key(at_key(w, "ideal"), key), "needs one image per input");
      auto& dst = std::string_view(key) == "x_images" ? p.ideal.x_images : p.ideal.z_images;
      for (std::size_t i = 0; i < arr.size(); ++i) {
        dst.push_back(parse_image(arr[i], k, at_key(at_key(w, "ideal"), key) + "[" + std::to_string(i) + "]"));
      }
    }
  } else {
    for (std::size_t i = 0; i < k; ++i) {
      p.ideal.x_images.push_back(OperatorExpression::from_pauli(PauliString::single(k, i, 'X')));
      p.ideal.z_images.push_back(OperatorExpression::from_pauli(PauliString::single(k, i, 'Z')));
    }
  }
  const auto stabs = p.ideal_stabilizers();
  for (std::size_t i = 0; i < stabs.size(); ++i) {
    p.targets.push_back({(i % 2 == 0 ? "X->" : "Z->") + std::to_string(i / 2), stabs[i], 1.0});
  }
  p.validate();
  return p;
}

}  // namespace

std::vector<double> SweepSettings::points() const {
  std::vector<double> out;
  const double span = stop - start;
  const auto count = static_cast<std::size_t>(std::floor(span / step + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

std::string_view name_of(BackendChoice b) {
  switch (b) {
    case BackendChoice::Dense: return "dense";
    case BackendChoice::Tableau: return "tableau";
    case BackendChoice::Both: return "both";
  }
  return "?";
}

BackendChoice parse_backend(std::string_view name) {
  if (name == "dense") return BackendChoice::Dense;
  if (name == "tableau") return BackendChoice::Tableau;
  if (name == "both") return BackendChoice::Both;
  throw ParseError("backend: expected dense|tableau|both, got '" + std::string(name) + "'");
}

Graph graph_from_json(const json& j, const std::string& where) {
  require_object(j, where);
  try {
    if (j.contains("builtin")) {
      const std::string kind = get_string(j, "builtin", where, "");
      if (kind == "chain") {
        reject_unknown(j, where, {"builtin", "n"});
        return chain(get_positive(j, "n", where, 0));
      }
      if (kind == "square") {
        reject_unknown(j, where, {"builtin", "width", "height"});
        return square(get_positive(j, "width", where, 0), get_positive(j, "height", where, 0));
      }
      if (kind == "diagonal_region") {
        reject_unknown(j, where, {"builtin", "n", "sides"});
        const auto sites = diagonal_region_sites(get_positive(j, "n", where, 0), get_bool(j, "sides", where, false));
        return lattice_region(sites);
      }
      bad(at_key(where, "builtin"), "expected chain|square|diagonal_region");
    }
    reject_unknown(j, where, {"n", "edges", "coords"});
    const std::size_t n = get_positive(j, "n", where, 0);
    std::vector<Graph::Edge> edges;
    const json es = j.value("edges", json::array());
    if (!es.is_array()) bad(at_key(where, "edges"), "must be an array of [u, v] pairs");
    for (std::size_t i = 0; i < es.size(); ++i) {
      const auto& e = es[i];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
        bad(at_key(where, "edges") + "[" + std::to_string(i) + "]", "must be a pair of vertex indices");
      }
      edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
    std::optional<std::vector<Coord>> coords;
    if (j.contains("coords")) {
      const json& cs = j.at("coords");
      if (!cs.is_array()) bad(at_key(where, "coords"), "must be an array of [row, col] pairs");
      coords.emplace();
      for (std::size_t i = 0; i < cs.size(); ++i) {
        const auto& c = cs[i];
        if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() || !c[1].is_number_integer()) {
          bad(at_key(where, "coords") + "[" + std::to_string(i) + "]", "must be a pair of integers");
        }
        coords->push_back({c[0].get<int>(), c[1].get<int>()});
      }
    }
    return Graph(n, std::move(edges), std::move(coords));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    bad(where, e.what());
  }
}

json graph_to_json(const Graph& g) {
  json j;
  j["n"] = g.num_vertices();
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({e.first, e.second});
  j["edges"] = edges;
  if (g.has_coords()) {
    json cs = json::array();
    for (const auto& c : g.coords()) cs.push_back({c.row, c.col});
    j["coords"] = cs;
  }
  return j;
}

json plan_to_json(const GatePlan& plan) {
  json j;
  j["label"] = plan.label;
  j["num_qubits"] = plan.num_qubits();
  j["inputs"] = plan.inputs;
  j["outputs"] = plan.outputs;
  json steps = json::array();
  for (const auto& s : plan.steps) {
    json sj{{"qubit", s.qubit}, {"basis", std::string(name_of(s.basis))}};
    if (s.basis == MeasurementBasis::XEta) {
      sj["angle"] = s.angle;
      sj["depends_on"] = s.angle_dependencies;
    }
    steps.push_back(sj);
  }
  j["steps"] = steps;
  json corr = json::array();
  for (const auto& c : plan.corrections) {
    corr.push_back({{"qubit", c.qubit}, {"p_x", c.x_parity.str()}, {"p_z", c.z_parity.str()}});
  }
  j["corrections"] = corr;
  json targets = json::array();
  for (const auto& t : plan.targets) targets.push_back({{"label", t.label}, {"observable", t.observable.str()}, {"ideal", t.ideal_value}});
  j["targets"] = targets;
  return j;
}

ExperimentConfig parse_config(const json& doc) {
  require_object(doc, "");
  reject_unknown(doc, "", {"schema", "seed", "backend", "dense_qubit_cap", "plans", "perturbation", "verify", "sweep",
                           "csign_search", "outputs"});
  ExperimentConfig c;
  c.source = doc;
  if (get_uint(doc, "schema", "", kSchemaVersion) != kSchemaVersion) {
    bad("schema", "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
  }
  c.seed = get_uint(doc, "seed", "", 0);
  try {
    c.backend = parse_backend(get_string(doc, "backend", "", "dense"));
  } catch (const ParseError& e) {
    throw ParseError(e.what());
  }
  c.dense_qubit_cap = get_positive(doc, "dense_qubit_cap", "", std::size_t{22});

  if (doc.contains("plans")) {
    const json& plans = doc.at("plans");
    if (!plans.is_array()) bad("plans", "must be an array");
    for (std::size_t i = 0; i < plans.size(); ++i) c.plans.push_back(parse_plan(plans[i], "plans[" + std::to_string(i) + "]"));
  }
  if (doc.contains("perturbation")) c.perturbation = parse_perturbation(doc.at("perturbation"), "perturbation", c.seed);
  c.perturbation.seed = c.perturbation.model == Perturbation::Model::None ? c.seed : c.perturbation.seed;

  if (doc.contains("verify")) {
    const json& v = doc.at("verify");
    require_object(v, "verify");
    reject_unknown(v, "verify", {"random_inputs", "max_strength", "pairs", "tolerance", "ideal_tolerance"});
    c.verify.random_inputs = static_cast<std::size_t>(get_uint(v, "random_inputs", "verify", c.verify.random_inputs));
    c.verify.max_strength = get_number(v, "max_strength", "verify", c.verify.max_strength);
    if (c.verify.max_strength < 0.0) bad("verify.max_strength", "must be non-negative");
    const std::string pairs = get_string(v, "pairs", "verify", "all");
    if (pairs != "all" && pairs != "targets") bad("verify.pairs", "expected all|targets");
    c.verify.all_pairs = pairs == "all";
    c.verify.tolerance = get_number(v, "tolerance", "verify", c.verify.tolerance);
    c.verify.ideal_tolerance = get_number(v, "ideal_tolerance", "verify", c.verify.ideal_tolerance);
    if (c.verify.tolerance <= 0.0 || c.verify.ideal_tolerance <= 0.0) bad("verify", "tolerances must be positive");
  }
  if (doc.contains("sweep")) {
    const json& s = doc.at("sweep");
    require_object(s, "sweep");
    reject_unknown(s, "sweep", {"parameter", "start", "stop", "step"});
    SweepSettings sw;
    sw.parameter = get_string(s, "parameter", "sweep", "");
    if (sw.parameter != "strength" && sw.parameter != "theta") bad("sweep.parameter", "expected strength|theta");
    sw.start = get_number(s, "start", "sweep", 0.0);
    sw.stop = get_number(s, "stop", "sweep", sw.start);
    sw.step = get_number(s, "step", "sweep", 0.1);
    if (sw.step <= 0.0) bad("sweep.step", "must be positive");
    if (sw.stop < sw.start) bad("sweep.stop", "range is empty (stop < start)");
    if (sw.points().size() > 100000) bad("sweep", "more than 100000 points");
    if (sw.parameter == "theta") {
      for (const auto& p : c.plans) {
        if (p.gate != "zrot") bad(p.where, "theta sweeps need zrot plans");
      }
    }
    c.sweep = sw;
  }
  if (doc.contains("csign_search")) {
    const json& s = doc.at("csign_search");
    require_object(s, "csign_search");
    reject_unknown(s, "csign_search", {"max_vertices", "window", "pinned"});
    c.csign.max_vertices = static_cast<std::size_t>(get_uint(s, "max_vertices", "csign_search", c.csign.max_vertices));
    c.csign.window = static_cast<int>(get_positive(s, "window", "csign_search", static_cast<std::size_t>(c.csign.window)));
    if (s.contains("pinned")) c.csign.pinned = get_string(s, "pinned", "csign_search", "");
  }
  if (doc.contains("outputs")) {
    const json& o = doc.at("outputs");
    require_object(o, "outputs");
    reject_unknown(o, "outputs", {"directory", "formats"});
    c.output_dir = get_string(o, "directory", "outputs", c.output_dir);
    if (o.contains("formats")) {
      const json& f = o.at("formats");
      if (!f.is_array()) bad("outputs.formats", "must be an array");
      c.formats.clear();
      for (const auto& x : f) {
        if (!x.is_string() || (x != "csv" && x != "json")) bad("outputs.formats", "entries must be \"csv\" or \"json\"");
        c.formats.push_back(x.get<std::string>());
      }
    }
  }
  return c;
}

ExperimentConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": invalid JSON");
  }
  return parse_config(doc);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

ExperimentConfig paper_suite_config() {
  json plans = json::array();
  plans.push_back({{"gate", "identity"}, {"params", {{"k", 1}, {"l", 1}}}});
  plans.push_back({{"gate", "identity"}, {"params", {{"k", 1}, {"l", 2}}}});
  plans.push_back({{"gate", "hadamard"}});
  plans.push_back({{"gate", "pi2"}});
  for (double theta : {0.3, 0.7, 1.1, std::numbers::pi / 2}) plans.push_back({{"gate", "zrot"}, {"params", {{"theta", theta}}}});
  plans.push_back({{"gate", "diag2d"}, {"params", {{"n", 3}}}});
  plans.push_back({{"gate", "csign"}});
  plans.push_back({{"gate", "concat"}, {"parts", {{{"gate", "hadamard"}}, {{"gate", "hadamard"}}}}});
  plans.push_back({{"gate", "concat"}, {"parts", {{{"gate", "pi2"}}, {{"gate", "pi2"}}}}});
  json doc{{"schema", kSchemaVersion},
           {"seed", 20260101},
           {"backend", "both"},
           {"plans", plans},
           {"verify", {{"random_inputs", 3}, {"max_strength", 0.6}, {"pairs", "all"}}},
           {"outputs", {{"directory", "mbqc-out"}}}};
  return parse_config(doc);
}

GatePlan build_plan(const PlanSpec& spec, std::optional<double> theta) {
  const json& p = spec.params;
  auto graph_or = [&](Graph fallback) {
    return spec.graph ? graph_from_json(*spec.graph, at_key(spec.where, "graph")) : std::move(fallback);
  };
  if (spec.gate == "identity") {
    const std::size_t k = p.value("k", std::size_t{1});
    const std::size_t l = p.value("l", std::size_t{1});
    return identity_plan(graph_or(chain(k + 2 * l + 2)), k, l);
  }
  if (spec.gate == "hadamard") return hadamard_plan(graph_or(chain(7)));
  if (spec.gate == "pi2") return pi2_plan(graph_or(chain(7)));
  if (spec.gate == "zrot") return zrot_plan(graph_or(chain(7)), theta.value_or(p.value("theta", 0.0)));
  if (spec.gate == "diag2d") {
    const std::size_t n = p.value("n", std::size_t{3});
    return diag_identity_plan_2d(graph_or(lattice_region(diagonal_region_sites(n, p.value("sides", false)))), n);
  }
  if (spec.gate == "csign") return csign_plan();
  if (spec.gate == "concat") {
    GatePlan out = build_plan(spec.parts.front(), theta);
    for (std::size_t i = 1; i < spec.parts.size(); ++i) out = concatenate(out, build_plan(spec.parts[i], theta));
    return out;
  }
  return build_custom(spec);
}

std::vector<GatePlan> build_plans(const ExperimentConfig& config, std::optional<double> theta) {
  std::vector<GatePlan> out;
  for (const auto& spec : config.plans) {
    try {
      out.push_back(build_plan(spec, theta));
    } catch (const ParseError&) {
      throw;
    } catch (const ResourceLimitError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(spec.where + ": " + e.what());
    }
  }
  return out;
}

}  // namespace mbqc::tools
