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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oamgate/formats.hpp"

using namespace oamgate;

namespace {

void check_format_error(const Json& doc, const std::string& fragment) {
  try {
    parse_state(doc, 3);
    FAIL("expected FormatError for " << doc.dump());
  } catch (const FormatError& ex) {
    CHECK_THAT(ex.what(), Catch::Matchers::ContainsSubstring(fragment));
  }
}

}  // namespace

TEST_CASE("elements survive a JSON round trip") {
  const std::vector<Element> all{Spp{-6, 2},
                                 Spp{4, std::nullopt},
                                 DovePhase{5, {2, 3}},
                                 ModeFourier{4, true},
                                 SorterPhases{4, 3, 2, true},
                                 make_beam_splitter(1, 3, 0.123456789012345678, 5.4321),
                                 ModePhase{2, 0.1 + 0.2},
                                 ModePermutation{{0, 2, 1, 3}},
                                 RetroReflector{3},
                                 Circulator{}};
  for (const Element& e : all) {
    const Json j = Json::parse(element_to_json(e).dump());
    CHECK(element_from_json(j) == e);
  }
  CHECK_THROWS_AS(element_from_json(Json::parse(R"({"type":"Laser","params":{},"modes":[]})")), FormatError);
  CHECK_THROWS_AS(element_from_json(Json::parse(R"({"type":"Spp","params":{"order":"x"},"modes":[]})")), FormatError);
}

TEST_CASE("network component list carries folding and tally") {
  const Network net = build_michelson(3, 1, 1, Variant::B);
  const OrderedJson doc = network_component_list(net);
  CHECK(doc["format_version"] == kFormatVersion);
  CHECK(doc["elements"].size() == net.sequence.size());
  for (const auto& [fwd, ret] : net.folded_reuse) {
    CHECK(doc["elements"][fwd]["folded_with"] == ret);
    CHECK(doc["elements"][ret]["folded_with"] == fwd);
  }
  CHECK_FALSE(doc["elements"][0].contains("folded_with"));
  CHECK(doc["tally"]["sorter_count"] == 1);
  CHECK(doc["tally"]["spp_count"] == 3);
  CHECK(doc["meta"]["subspace"]["ell0"] == 1);
}

TEST_CASE("mesh component list round trips") {
  for (MeshScheme scheme : {MeshScheme::Rectangular, MeshScheme::Butterfly}) {
    for (int d : {2, 4, 8}) {
      const Mesh mesh = fourier_mesh(d, scheme);
      const double residual = max_abs_diff(mesh_matrix(mesh), fourier_matrix(d));
      const std::string text = mesh_component_list(mesh, residual).dump();
      const Mesh back = mesh_from_component_list(Json::parse(text));
      CHECK(back.d == d);
      CHECK(back.scheme == scheme);
      CHECK(back.input_permutation == mesh.input_permutation);
      CHECK(max_abs_diff(mesh_matrix(back), mesh_matrix(mesh)) <= 1e-12);
      CHECK(Json::parse(text)["residual"].get<double>() == residual);
    }
  }
  CHECK_THROWS_AS(mesh_from_component_list(Json::parse(R"({"format_version":2})")), FormatError);
}

TEST_CASE("parse_state accepts and renormalizes") {
  const ParsedState ok = parse_state(Json::parse("[[1, 0, 1.0, 0.0]]"), 3);
  CHECK_FALSE(ok.renormalized);
  CHECK(ok.state.amplitude({1, 0}) == Complex(1.0, 0.0));

  const ParsedState scaled = parse_state(Json::parse("[[0, 0, 1.0, 0.0], [2, 1, 0.0, 1.0]]"), 3);
  CHECK(scaled.renormalized);
  CHECK(scaled.input_norm == Catch::Approx(std::sqrt(2.0)));
  CHECK(scaled.state.norm_squared() == Catch::Approx(1.0).margin(1e-15));

  const ParsedState close = parse_state(Json::parse("[[0, 0, 1.0000000001, 0.0]]"), 3);
  CHECK_FALSE(close.renormalized);
}

TEST_CASE("parse_state diagnostics name the entry and field") {
  check_format_error(Json::parse("[]"), "non-empty");
  check_format_error(Json::parse("{}"), "array");
  check_format_error(Json::parse("[[0, 0, 1.0]]"), "state[0]");
  check_format_error(Json::parse("[[0, 0, 1, 0], [1, 3, 1, 0]]"), "state[1] field 'mode'");
  check_format_error(Json::parse(R"([[0, 0, 1, 0], [1, 0, "x", 0]])"), "state[1]");
  check_format_error(Json::parse("[[0, 0, 1, 0], [0, 0, 1, 0]]"), "duplicate");
  check_format_error(Json::parse("[[0, 0, 0, 0]]"), "norm");
}

TEST_CASE("grid parsing") {
  const GridSpec g = parse_grid(Json::parse(
      R"({"format_version":1,"d":[2,3],"p":[1],"ell0":[-1,0],"variant":["a","b"],"config":["michelson"],"mesh_fourier":true})"));
  CHECK(g.d == std::vector<int>{2, 3});
  CHECK(g.ell0 == std::vector<std::int64_t>{-1, 0});
  CHECK(g.variant == std::vector<Variant>{Variant::A, Variant::B});
  CHECK(g.config == std::vector<Config>{Config::Michelson});
  CHECK(g.mesh_fourier);

  CHECK_THROWS_AS(parse_grid(Json::parse(R"({"d":[2]})")), FormatError);
  CHECK_THROWS_AS(parse_grid(Json::parse(
                      R"({"format_version":1,"d":[1],"p":[1],"ell0":[0],"variant":["a"],"config":["mz"]})")),
                  FormatError);
  CHECK_THROWS_AS(parse_grid(Json::parse(
                      R"({"format_version":1,"d":[2],"p":[1],"ell0":[0],"variant":["c"],"config":["mz"]})")),
                  FormatError);

  const GridSpec def = default_grid();
  CHECK(def.d == std::vector<int>{2, 3, 4, 5, 6});
  CHECK(def.p == std::vector<int>{1, 2});
  CHECK(def.ell0.size() == 7);
  CHECK(def.variant.size() == 2);
  CHECK(def.config.size() == 2);
}

TEST_CASE("enum parsing") {
  CHECK(parse_variant("a") == Variant::A);
  CHECK(parse_variant("B") == Variant::B);
  CHECK(parse_config("michelson") == Config::Michelson);
  CHECK(parse_scheme("butterfly") == MeshScheme::Butterfly);
  CHECK_THROWS_AS(parse_config("sagnac"), FormatError);
  CHECK_THROWS_AS(parse_scheme("triangular"), FormatError);
}

TEST_CASE("report JSON keeps full precision") {
  VerificationReport r = verify_gate(build_xd(3), CodingSubspace(3, 1, 0), 5, 1e-10, 9);
  const Json j = Json::parse(report_to_json(r).dump());
  CHECK(j["passed"] == true);
  CHECK(j["per_basis"].size() == 3);
  CHECK(j["unitarity_residual"].get<double>() == r.unitarity_residual);
  CHECK(j["superposition_fidelity"].get<double>() == r.superposition_fidelity);
  CHECK(j["seed"] == 9);
}
