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
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "oamgate/linalg.hpp"
#include "oamgate/state.hpp"

namespace oamgate {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Spiral phase plate: ell -> ell + order, on every mode or only on
/// control_mode.
struct Spp {
  std::int64_t order = 0;
  std::optional<int> control_mode;

  friend bool operator==(const Spp&, const Spp&) = default;
};

/// Dove-prism phase omega^{ell * power} on OAM value ell, omega = exp(2 pi i/d).
struct DovePhase {
  int d = 2;
  Rational power{1, 1};

  friend bool operator==(const DovePhase&, const DovePhase&) = default;
};

/// d-mode DFT on the spatial-mode register: F|j> = d^{-1/2} sum_k omega^{jk}|k>.
struct ModeFourier {
  int d = 2;
  bool inverse = false;

  friend bool operator==(const ModeFourier&, const ModeFourier&) = default;
};

/// Path-dependent phases inside a sorter: on mode k, OAM value ell picks up
/// exp(2 pi i (ell - residue) k / (p d)), conjugated when inverse.
struct SorterPhases {
  int d = 2;
  int p = 1;
  std::int64_t residue = 0;
  bool inverse = false;

  friend bool operator==(const SorterPhases&, const SorterPhases&) = default;
};

/// Acts on (mode_a, mode_b) as [[cos t, -e^{-i phi} sin t], [e^{i phi} sin t, cos t]].
struct BeamSplitter {
  int mode_a = 0;
  int mode_b = 1;
  double theta = 0.0;
  double phi = 0.0;

  friend bool operator==(const BeamSplitter&, const BeamSplitter&) = default;
};

struct ModePhase {
  int mode = 0;
  double phi = 0.0;

  friend bool operator==(const ModePhase&, const ModePhase&) = default;
};

/// Port relabeling |ell, m> -> |ell, targets[m]>. Carries the fixed index
/// permutation of a butterfly mesh; no optical device is implied.
struct ModePermutation {
  std::vector<int> targets;

  friend bool operator==(const ModePermutation&, const ModePermutation&) = default;
};

/// Net effect of a double reflection: identity.
struct RetroReflector {
  int mode = 0;

  friend bool operator==(const RetroReflector&, const RetroReflector&) = default;
};

/// Routing only; identity on the simulated state.
struct Circulator {
  friend bool operator==(const Circulator&, const Circulator&) = default;
};

using Element = std::variant<Spp, DovePhase, ModeFourier, SorterPhases, BeamSplitter,
                             ModePhase, ModePermutation, RetroReflector, Circulator>;

/// Builds a beamsplitter with theta folded into [0, pi/2] and phi into
/// [0, 2 pi). Throws std::invalid_argument for |theta| > pi/2 or a == b.
BeamSplitter make_beam_splitter(int mode_a, int mode_b, double theta, double phi);

std::string element_name(const Element& e);

/// Throws std::invalid_argument if `e` cannot act on a d-mode state.
void validate_element(const Element& e, int d);

/// U_e |s>. Interferometric elements prune residue below kPruneThreshold.
PhotonState apply(const Element& e, const PhotonState& s);

Element adjoint(const Element& e);

/// Closed OAM interval [lo, hi]. Basis order is lexicographic: ell ascending,
/// then mode, so label (ell, m) sits at (ell - lo) * d + m.
struct OamWindow {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  std::int64_t count() const { return hi - lo + 1; }
  bool contains(std::int64_t ell) const { return ell >= lo && ell <= hi; }
  Eigen::Index index(const BasisLabel& label, int d) const {
    return static_cast<Eigen::Index>((label.ell - lo) * d + label.mode);
  }
  BasisLabel label(Eigen::Index index, int d) const {
    return {lo + static_cast<std::int64_t>(index / d), static_cast<int>(index % d)};
  }

  friend bool operator==(const OamWindow&, const OamWindow&) = default;
};

class WindowEscape : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix of `e` on window x [0, d). Throws WindowEscape if an SPP moves a
/// window ket outside the window.
Matrix element_matrix(const Element& e, OamWindow window, int d);

/// Sparse form used for network products. With truncate = true, images
/// that leave the window are dropped instead of raising WindowEscape.
SparseMatrix element_sparse(const Element& e, OamWindow window, int d, bool truncate);

}  // namespace oamgate
