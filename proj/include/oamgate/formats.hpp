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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "oamgate/elements.hpp"
#include "oamgate/mesh.hpp"
#include "oamgate/networks.hpp"
#include "oamgate/verify.hpp"

namespace oamgate {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

/// Every document written by this library carries this in "format_version".
inline constexpr int kFormatVersion = 1;

/// Malformed input document. The message names the offending field.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

OrderedJson element_to_json(const Element& e);
Element element_from_json(const Json& j);

OrderedJson tally_to_json(const ResourceTally& tally);

/// {format_version, kind: "network", d, meta, elements[{type, params, modes,
/// folded_with?}], sorters, tally}
OrderedJson network_component_list(const Network& net);

/// {format_version, kind: "mesh", d, scheme, residual, input_permutation,
/// output_phases, elements, tally}
OrderedJson mesh_component_list(const Mesh& mesh, double residual);
Mesh mesh_from_component_list(const Json& doc);

struct ParsedState {
  PhotonState state;
  double input_norm = 1.0;
  bool renormalized = false;
};

/// JSON array of [ell, mode, re, im]. Renormalizes (and says so) when the
/// norm is off by more than 1e-6.
ParsedState parse_state(const Json& doc, int d);

/// Nonzero amplitudes sorted by (ell, mode) as [ell, mode, re, im].
OrderedJson amplitudes_to_json(const PhotonState& s);

OrderedJson report_to_json(const VerificationReport& report);

struct GridSpec {
  std::vector<int> d;
  std::vector<int> p;
  std::vector<std::int64_t> ell0;
  std::vector<Variant> variant;
  std::vector<Config> config;
  bool mesh_fourier = false;
};

/// d 2..6, p 1..2, ell0 -3..3, both variants, both configs.
GridSpec default_grid();

/// {format_version, d: [...], p: [...], ell0: [...], variant: ["a", "b"],
///  config: ["mz", "michelson"], mesh_fourier?: bool}
GridSpec parse_grid(const Json& doc);

Variant parse_variant(const std::string& s);
Config parse_config(const std::string& s);
MeshScheme parse_scheme(const std::string& s);

}  // namespace oamgate
