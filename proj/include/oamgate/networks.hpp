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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "oamgate/elements.hpp"
#include "oamgate/state.hpp"

namespace oamgate {

enum class GateKind { Sorter, Xd, XdP, Custom };
enum class Config { MachZehnder, Michelson };
enum class Variant { A, B, NotApplicable };

std::string_view to_string(GateKind kind);
std::string_view to_string(Config config);
std::string_view to_string(Variant variant);

struct NetworkMeta {
  GateKind kind = GateKind::Custom;
  Config config = Config::MachZehnder;
  Variant variant = Variant::NotApplicable;
  std::optional<CodingSubspace> subspace;
};

/// Elements [first, last) of a sequence that form one pass through a sorter.
struct SorterSpan {
  std::size_t first = 0;
  std::size_t last = 0;

  friend bool operator==(const SorterSpan&, const SorterSpan&) = default;
};

struct Network {
  int d = 2;
  std::vector<Element> sequence;
  NetworkMeta meta;
  /// (forward, return) element pairs that are the same physical device
  /// traversed twice in a folded (Michelson) layout.
  std::vector<std::pair<std::size_t, std::size_t>> folded_reuse;
  std::vector<SorterSpan> sorters;

  /// Throws std::invalid_argument if an element does not fit d or a
  /// folded pair is not (element, later adjoint).
  void validate() const;
};

struct ResourceTally {
  int sorter_count = 0;
  std::vector<std::int64_t> spp_list;  // sorted
  int fourier_count = 0;
  int dove_phase_count = 0;
  int beamsplitter_count = 0;
  int mode_phase_count = 0;
  int circulator_count = 0;
  int retroreflector_count = 0;

  int spp_count() const { return static_cast<int>(spp_list.size()); }

  friend bool operator==(const ResourceTally&, const ResourceTally&) = default;
};

/// F, then path phases, then F^dagger: |ell>|j> -> |ell>|j + (ell - residue)/p mod d>
/// on the lattice ell = residue (mod p). The inverse pass reverses and
/// conjugates the sequence.
Network build_sorter(int d, int p, bool inverse, std::int64_t residue = 0);

/// Cyclic X_d on {0..d-1}: SPP(+1), sorter, SPP(-d) on mode 0, inverse sorter.
Network build_xd(int d);

/// Mach-Zehnder X_d(p) on {ell0 + j p}. Variant A moves SPP(-pd) to the
/// wrap port; variant B brackets the gate with SPP(-s) / SPP(+s).
Network build_xdp(int d, int p, std::int64_t ell0, Variant variant);

/// Folded single-sorter version of build_xdp with the same unitary.
Network build_michelson(int d, int p, std::int64_t ell0, Variant variant);

Network build_gate(int d, int p, std::int64_t ell0, Variant variant, Config config);

/// Left-to-right application of the sequence. Element errors are rethrown
/// with the offending element's index and name.
PhotonState apply_network(const Network& net, const PhotonState& s);

/// Smallest OAM interval that contains every value the kets in `input`
/// (any mode) can occupy at any point of the sequence.
OamWindow reach_window(const Network& net, OamWindow input);

/// OAM range visited by the coding kets |ell0 + jp, 0> at every stage.
/// Throws std::invalid_argument if the network carries no subspace.
OamWindow minimal_window(const Network& net);

/// <W|U|W> for W = window x [0, d), as the product of element matrices in
/// application order. Intermediate steps are evaluated on reach_window so
/// nothing is truncated; the result is unitary exactly when U maps span(W)
/// into itself.
Matrix network_matrix(const Network& net, OamWindow window);

/// Restricts a window matrix to the given kets (rows and columns in order).
Matrix restrict_to(const Matrix& m, OamWindow window, int d,
                   const std::vector<BasisLabel>& kets);

/// Coding kets |ell0 + j p, 0>, j = 0..d-1.
std::vector<BasisLabel> coding_kets(const CodingSubspace& sub);

ResourceTally tally_resources(const Network& net);

}  // namespace oamgate
