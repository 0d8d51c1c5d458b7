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
#include <string_view>
#include <vector>

#include "oamgate/elements.hpp"
#include "oamgate/networks.hpp"

namespace oamgate {

enum class MeshScheme { Rectangular, Butterfly };

std::string_view to_string(MeshScheme scheme);

/// Beamsplitter / phase-shifter realization of a d-mode unitary:
///   mesh_matrix = diag(e^{i output_phases}) * L_n ... L_1 * P_in
/// where P_in routes input mode m to input_permutation[m].
struct Mesh {
  int d = 1;
  MeshScheme scheme = MeshScheme::Rectangular;
  std::vector<Element> layers;  // BeamSplitter and ModePhase only
  std::vector<double> output_phases;
  std::vector<int> input_permutation;  // identity for rectangular meshes

  std::size_t beamsplitter_count() const;
  std::size_t phase_shifter_count() const;
};

/// Rectangular nulling decomposition (alternating column / row eliminations)
/// into exactly d(d-1)/2 beamsplitters plus d output phases. Zero targets
/// still emit a theta = 0 beamsplitter. Throws std::invalid_argument if
/// ||U^dagger U - I||_max > 1e-8.
Mesh decompose_rectangular(const Matrix& u);

/// Radix-2 decimation-in-time Fourier mesh: bit-reversed input permutation,
/// then log2(d) stages of d/2 butterflies, each a twiddle ModePhase on the
/// lower arm followed by BeamSplitter(pi/4, 0). Reproduces
/// fourier_matrix(d). Throws std::invalid_argument unless d = 2^q, q >= 1.
Mesh butterfly_fourier(int d);

Mesh fourier_mesh(int d, MeshScheme scheme);

Matrix mesh_matrix(const Mesh& mesh);

/// The mesh as a network element sequence (permutation, layers, nonzero
/// output phases).
std::vector<Element> mesh_elements(const Mesh& mesh);

/// Replaces every ModeFourier in `net` by its mesh (inverse passes use the
/// reversed adjoint). Folded pairs and sorter spans are carried over.
Network with_mesh_fourier(const Network& net, MeshScheme scheme);

bool is_power_of_two(int d);

}  // namespace oamgate
