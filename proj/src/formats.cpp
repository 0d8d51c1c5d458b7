// Copyright 2026 The oamgate Authors
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

#include "oamgate/formats.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <string>

namespace oamgate {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

const Json& field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw FormatError(path + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(path + "." + key + ": missing field");
  return *it;
}

std::int64_t as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw FormatError(path + ": expected an integer");
  return j.get<std::int64_t>();
}

double as_double(const Json& j, const std::string& path) {
  if (!j.is_number()) throw FormatError(path + ": expected a number");
  return j.get<double>();
}

bool as_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) throw FormatError(path + ": expected true or false");
  return j.get<bool>();
}

std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw FormatError(path + ": expected a string");
  return j.get<std::string>();
}

int as_mode(const Json& j, const std::string& path) {
  const std::int64_t v = as_int(j, path);
  if (v < 0 || v > 1'000'000) throw FormatError(path + ": mode index out of range");
  return static_cast<int>(v);
}

OrderedJson label_json(const BasisLabel& l) { return OrderedJson::array({l.ell, l.mode}); }

template <class T, class F>
std::vector<T> parse_list(const Json& doc, const char* key, F&& item) {
  const std::string path = std::string("grid.") + key;
  const Json& arr = field(doc, key, "grid");
  if (!arr.is_array() || arr.empty()) throw FormatError(path + ": expected a non-empty array");
  std::vector<T> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(item(arr[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace

Variant parse_variant(const std::string& s) {
  const std::string v = lower(s);
  if (v == "a") return Variant::A;
  if (v == "b") return Variant::B;
  throw FormatError("variant must be 'a' or 'b', got '" + s + "'");
}

Config parse_config(const std::string& s) {
  const std::string v = lower(s);
  if (v == "mz") return Config::MachZehnder;
  if (v == "michelson") return Config::Michelson;
  throw FormatError("config must be 'mz' or 'michelson', got '" + s + "'");
}

MeshScheme parse_scheme(const std::string& s) {
  const std::string v = lower(s);
  if (v == "rectangular") return MeshScheme::Rectangular;
  if (v == "butterfly") return MeshScheme::Butterfly;
  throw FormatError("scheme must be 'rectangular' or 'butterfly', got '" + s + "'");
}

OrderedJson element_to_json(const Element& e) {
  OrderedJson j;
  j["type"] = element_name(e);
  OrderedJson params = OrderedJson::object();
  OrderedJson modes = OrderedJson::array();
  if (const auto* x = std::get_if<Spp>(&e)) {
    params["order"] = x->order;
    if (x->control_mode) {
      params["control_mode"] = *x->control_mode;
      modes.push_back(*x->control_mode);
    }
  } else if (const auto* x = std::get_if<DovePhase>(&e)) {
    params["d"] = x->d;
    params["power_num"] = x->power.num;
    params["power_den"] = x->power.den;
  } else if (const auto* x = std::get_if<ModeFourier>(&e)) {
    params["d"] = x->d;
    params["inverse"] = x->inverse;
  } else if (const auto* x = std::get_if<SorterPhases>(&e)) {
    params["d"] = x->d;
    params["p"] = x->p;
    params["residue"] = x->residue;
    params["inverse"] = x->inverse;
  } else if (const auto* x = std::get_if<BeamSplitter>(&e)) {
    params["theta"] = x->theta;
    params["phi"] = x->phi;
    modes = {x->mode_a, x->mode_b};
  } else if (const auto* x = std::get_if<ModePhase>(&e)) {
    params["phi"] = x->phi;
    modes.push_back(x->mode);
  } else if (const auto* x = std::get_if<ModePermutation>(&e)) {
    params["targets"] = x->targets;
  } else if (const auto* x = std::get_if<RetroReflector>(&e)) {
    modes.push_back(x->mode);
  }
  j["params"] = std::move(params);
  j["modes"] = std::move(modes);
  return j;
}

Element element_from_json(const Json& j) {
  const std::string type = as_string(field(j, "type", "element"), "element.type");
  const std::string pp = "element(" + type + ").params";
  const Json empty = Json::object();
  const Json& params = j.contains("params") ? j.at("params") : empty;
  const Json& modes = j.contains("modes") ? j.at("modes") : Json::array();
  auto mode_at = [&](std::size_t i) {
    if (!modes.is_array() || modes.size() <= i) {
      throw FormatError("element(" + type + ").modes: expected at least " + std::to_string(i + 1) + " entries");
    }
    return as_mode(modes[i], "element(" + type + ").modes[" + std::to_string(i) + "]");
  };

  if (type == "Spp") {
    Spp e{as_int(field(params, "order", pp), pp + ".order"), std::nullopt};
    if (params.contains("control_mode")) e.control_mode = as_mode(params.at("control_mode"), pp + ".control_mode");
    return e;
  }
  if (type == "DovePhase") {
    return DovePhase{static_cast<int>(as_int(field(params, "d", pp), pp + ".d")),
                     Rational{as_int(field(params, "power_num", pp), pp + ".power_num"),
                              as_int(field(params, "power_den", pp), pp + ".power_den")}};
  }
  if (type == "ModeFourier") {
    return ModeFourier{static_cast<int>(as_int(field(params, "d", pp), pp + ".d")),
                       as_bool(field(params, "inverse", pp), pp + ".inverse")};
  }
  if (type == "SorterPhases") {
    return SorterPhases{static_cast<int>(as_int(field(params, "d", pp), pp + ".d")),
                        static_cast<int>(as_int(field(params, "p", pp), pp + ".p")),
                        as_int(field(params, "residue", pp), pp + ".residue"),
                        as_bool(field(params, "inverse", pp), pp + ".inverse")};
  }
  if (type == "BeamSplitter") {
    try {
      return make_beam_splitter(mode_at(0), mode_at(1),
                                as_double(field(params, "theta", pp), pp + ".theta"),
                                as_double(field(params, "phi", pp), pp + ".phi"));
    } catch (const std::invalid_argument& ex) {
      throw FormatError(pp + ": " + ex.what());
    }
  }
  if (type == "ModePhase") {
    return ModePhase{mode_at(0), as_double(field(params, "phi", pp), pp + ".phi")};
  }
  if (type == "ModePermutation") {
    const Json& targets = field(params, "targets", pp);
    if (!targets.is_array()) throw FormatError(pp + ".targets: expected an array");
    ModePermutation e;
    for (std::size_t i = 0; i < targets.size(); ++i) {
      e.targets.push_back(as_mode(targets[i], pp + ".targets[" + std::to_string(i) + "]"));
    }
    return e;
  }
  if (type == "RetroReflector") return RetroReflector{mode_at(0)};
  if (type == "Circulator") return Circulator{};
  throw FormatError("element.type: unknown element type '" + type + "'");
}

OrderedJson tally_to_json(const ResourceTally& t) {
  OrderedJson j;
  j["sorter_count"] = t.sorter_count;
  j["spp_count"] = t.spp_count();
  j["spp_list"] = t.spp_list;
  j["fourier_count"] = t.fourier_count;
  j["dove_phase_count"] = t.dove_phase_count;
  j["beamsplitter_count"] = t.beamsplitter_count;
  j["mode_phase_count"] = t.mode_phase_count;
  j["circulator_count"] = t.circulator_count;
  j["retroreflector_count"] = t.retroreflector_count;
  return j;
}

OrderedJson network_component_list(const Network& net) {
  OrderedJson doc;
  doc["format_version"] = kFormatVersion;
  doc["kind"] = "network";
  doc["d"] = net.d;
  OrderedJson meta;
  meta["gate"] = std::string(to_string(net.meta.kind));
  meta["config"] = std::string(to_string(net.meta.config));
  meta["variant"] = std::string(to_string(net.meta.variant));
  if (net.meta.subspace) {
    const CodingSubspace& s = *net.meta.subspace;
    OrderedJson sub;
    sub["d"] = s.d();
    sub["p"] = s.p();
    sub["ell0"] = s.ell0();
    sub["k"] = s.k();
    sub["residue"] = s.residue();
    sub["correction_mode"] = s.correction_mode();
    sub["pre_shift"] = s.pre_shift();
    meta["subspace"] = std::move(sub);
  } else {
    meta["subspace"] = nullptr;
  }
  doc["meta"] = std::move(meta);

  std::vector<std::optional<std::size_t>> partner(net.sequence.size());
  for (const auto& [fwd, ret] : net.folded_reuse) {
    partner[fwd] = ret;
    partner[ret] = fwd;
  }
  OrderedJson elements = OrderedJson::array();
  for (std::size_t i = 0; i < net.sequence.size(); ++i) {
    OrderedJson e = element_to_json(net.sequence[i]);
    if (partner[i]) e["folded_with"] = *partner[i];
    elements.push_back(std::move(e));
  }
  doc["elements"] = std::move(elements);
  OrderedJson sorters = OrderedJson::array();
  for (const SorterSpan& s : net.sorters) sorters.push_back({s.first, s.last});
  doc["sorters"] = std::move(sorters);
  doc["tally"] = tally_to_json(tally_resources(net));
  return doc;
}

OrderedJson mesh_component_list(const Mesh& mesh, double residual) {
  OrderedJson doc;
  doc["format_version"] = kFormatVersion;
  doc["kind"] = "mesh";
  doc["d"] = mesh.d;
  doc["scheme"] = std::string(to_string(mesh.scheme));
  doc["residual"] = residual;
  doc["input_permutation"] = mesh.input_permutation;
  doc["output_phases"] = mesh.output_phases;
  OrderedJson elements = OrderedJson::array();
  for (const Element& e : mesh.layers) elements.push_back(element_to_json(e));
  doc["elements"] = std::move(elements);
  OrderedJson tally;
  tally["beamsplitter_count"] = mesh.beamsplitter_count();
  tally["mode_phase_count"] = mesh.phase_shifter_count();
  doc["tally"] = std::move(tally);
  return doc;
}

Mesh mesh_from_component_list(const Json& doc) {
  if (as_int(field(doc, "format_version", "mesh"), "mesh.format_version") != kFormatVersion) {
    throw FormatError("mesh.format_version: unsupported version");
  }
  if (as_string(field(doc, "kind", "mesh"), "mesh.kind") != "mesh") {
    throw FormatError("mesh.kind: expected \"mesh\"");
  }
  Mesh mesh;
  mesh.d = static_cast<int>(as_int(field(doc, "d", "mesh"), "mesh.d"));
  if (mesh.d < 1) throw FormatError("mesh.d: must be positive");
  mesh.scheme = parse_scheme(as_string(field(doc, "scheme", "mesh"), "mesh.scheme"));

  const Json& perm = field(doc, "input_permutation", "mesh");
  const Json& phases = field(doc, "output_phases", "mesh");
  if (!perm.is_array() || !phases.is_array()) {
    throw FormatError("mesh.input_permutation / mesh.output_phases: expected arrays");
  }
  for (std::size_t i = 0; i < perm.size(); ++i) {
    mesh.input_permutation.push_back(as_mode(perm[i], "mesh.input_permutation[" + std::to_string(i) + "]"));
  }
  for (std::size_t i = 0; i < phases.size(); ++i) {
    mesh.output_phases.push_back(as_double(phases[i], "mesh.output_phases[" + std::to_string(i) + "]"));
  }
  if (static_cast<int>(mesh.input_permutation.size()) != mesh.d ||
      static_cast<int>(mesh.output_phases.size()) != mesh.d) {
    throw FormatError("mesh: input_permutation and output_phases must have d entries");
  }
  try {
    validate_element(ModePermutation{mesh.input_permutation}, mesh.d);
  } catch (const std::invalid_argument& ex) {
    throw FormatError(std::string("mesh.input_permutation: ") + ex.what());
  }

  const Json& elements = field(doc, "elements", "mesh");
  if (!elements.is_array()) throw FormatError("mesh.elements: expected an array");
  for (std::size_t i = 0; i < elements.size(); ++i) {
    Element e = element_from_json(elements[i]);
    if (!std::holds_alternative<BeamSplitter>(e) && !std::holds_alternative<ModePhase>(e)) {
      throw FormatError("mesh.elements[" + std::to_string(i) + "]: only BeamSplitter and ModePhase allowed");
    }
    try {
      validate_element(e, mesh.d);
    } catch (const std::invalid_argument& ex) {
      throw FormatError("mesh.elements[" + std::to_string(i) + "]: " + ex.what());
    }
    mesh.layers.push_back(std::move(e));
  }
  return mesh;
}

ParsedState parse_state(const Json& doc, int d) {
  if (!doc.is_array() || doc.empty()) {
    throw FormatError("state: expected a non-empty JSON array of [ell, mode, re, im]");
  }
  PhotonState::Amplitudes amps;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string path = "state[" + std::to_string(i) + "]";
    const Json& entry = doc[i];
    if (!entry.is_array() || entry.size() != 4) throw FormatError(path + ": expected [ell, mode, re, im]");
    const std::int64_t ell = as_int(entry[0], path + " field 'ell'");
    const std::int64_t mode = as_int(entry[1], path + " field 'mode'");
    if (mode < 0 || mode >= d) {
      throw FormatError(path + " field 'mode': " + std::to_string(mode) + " outside [0, " +
                        std::to_string(d) + ")");
    }
    const Complex amp{as_double(entry[2], path + " field 're'"), as_double(entry[3], path + " field 'im'")};
    if (!amps.emplace(BasisLabel{ell, static_cast<int>(mode)}, amp).second) {
      throw FormatError(path + ": duplicate ket (" + std::to_string(ell) + ", " + std::to_string(mode) + ")");
    }
  }
  PhotonState s(d, std::move(amps));
  const double norm = std::sqrt(s.norm_squared());
  if (norm == 0.0 || !std::isfinite(norm)) throw FormatError("state: amplitudes have zero or non-finite norm");
  ParsedState parsed{s, norm, false};
  if (std::abs(norm - 1.0) > 1e-6) {
    parsed.state = s.normalized();
    parsed.renormalized = true;
  }
  return parsed;
}

OrderedJson amplitudes_to_json(const PhotonState& s) {
  OrderedJson arr = OrderedJson::array();
  for (const auto& [label, amp] : s.amplitudes()) {
    arr.push_back({label.ell, label.mode, amp.real(), amp.imag()});
  }
  return arr;
}

OrderedJson report_to_json(const VerificationReport& r) {
  OrderedJson j;
  j["d"] = r.params.d;
  j["p"] = r.params.p;
  j["ell0"] = r.params.ell0;
  j["variant"] = std::string(to_string(r.params.variant));
  j["config"] = std::string(to_string(r.params.config));
  j["seed"] = r.seed;
  j["trials"] = r.n_trials;
  j["tolerance"] = r.tolerance;
  j["passed"] = r.passed;
  OrderedJson basis = OrderedJson::array();
  for (const BasisCheck& c : r.per_basis) {
    OrderedJson b;
    b["input"] = label_json(c.input);
    b["expected"] = label_json(c.expected);
    b["observed"] = label_json(c.observed);
    b["fidelity"] = c.fidelity;
    basis.push_back(std::move(b));
  }
  j["per_basis"] = std::move(basis);
  j["decoupling_min"] = r.decoupling_min;
  j["superposition_fidelity"] = r.superposition_fidelity;
  j["coherence_residual"] = r.coherence_residual;
  j["unitarity_residual"] = r.unitarity_residual;
  OrderedJson ood = OrderedJson::array();
  for (const OutOfDomainProbe& probe : r.out_of_domain) {
    OrderedJson o;
    o["input"] = label_json(probe.input);
    OrderedJson out = OrderedJson::array();
    for (const auto& [label, amp] : probe.output) out.push_back({label.ell, label.mode, amp.real(), amp.imag()});
    o["output"] = std::move(out);
    ood.push_back(std::move(o));
  }
  j["out_of_domain"] = std::move(ood);
  j["diagnostic"] = r.diagnostic;
  return j;
}

GridSpec default_grid() {
  GridSpec g;
  g.d = {2, 3, 4, 5, 6};
  g.p = {1, 2};
  for (std::int64_t e = -3; e <= 3; ++e) g.ell0.push_back(e);
  g.variant = {Variant::A, Variant::B};
  g.config = {Config::MachZehnder, Config::Michelson};
  return g;
}

GridSpec parse_grid(const Json& doc) {
  if (!doc.is_object()) throw FormatError("grid: expected a JSON object");
  if (as_int(field(doc, "format_version", "grid"), "grid.format_version") != kFormatVersion) {
    throw FormatError("grid.format_version: unsupported version");
  }
  GridSpec g;
  g.d = parse_list<int>(doc, "d", [](const Json& j, const std::string& path) {
    const std::int64_t v = as_int(j, path);
    if (v < 2 || v > 64) throw FormatError(path + ": d must be in [2, 64]");
    return static_cast<int>(v);
  });
  g.p = parse_list<int>(doc, "p", [](const Json& j, const std::string& path) {
    const std::int64_t v = as_int(j, path);
    if (v < 1 || v > 1'000) throw FormatError(path + ": p must be in [1, 1000]");
    return static_cast<int>(v);
  });
  g.ell0 = parse_list<std::int64_t>(doc, "ell0", [](const Json& j, const std::string& path) {
    const std::int64_t v = as_int(j, path);
    if (std::abs(v) > 1'000'000'000) throw FormatError(path + ": |ell0| too large");
    return v;
  });
  g.variant = parse_list<Variant>(doc, "variant", [](const Json& j, const std::string& path) {
    try {
      return parse_variant(as_string(j, path));
    } catch (const FormatError& ex) {
      throw FormatError(path + ": " + ex.what());
    }
  });
  g.config = parse_list<Config>(doc, "config", [](const Json& j, const std::string& path) {
    try {
      return parse_config(as_string(j, path));
    } catch (const FormatError& ex) {
      throw FormatError(path + ": " + ex.what());
    }
  });
  if (doc.contains("mesh_fourier")) g.mesh_fourier = as_bool(doc.at("mesh_fourier"), "grid.mesh_fourier");
  return g;
}

}  // namespace oamgate
