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
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "oamgate/networks.hpp"

namespace oamgate {

struct GateParams {
  int d = 2;
  int p = 1;
  std::int64_t ell0 = 0;
  Variant variant = Variant::A;
  Config config = Config::MachZehnder;
};

struct BasisCheck {
  BasisLabel input;
  BasisLabel expected;
  BasisLabel observed;  // largest-magnitude output ket
  double fidelity = 0.0;
};

struct OutOfDomainProbe {
  BasisLabel input;
  std::vector<std::pair<BasisLabel, Complex>> output;
};

struct VerificationReport {
  GateParams params;
  std::uint64_t seed = 0;
  int n_trials = 0;
  double tolerance = 0.0;
  std::vector<BasisCheck> per_basis;
  double decoupling_min = 0.0;
  double superposition_fidelity = 0.0;
  double coherence_residual = 0.0;
  double unitarity_residual = 0.0;
  std::vector<OutOfDomainProbe> out_of_domain;
  std::string diagnostic;
  bool passed = false;
};

/// ell0 + j p -> ell0 + ((j + 1) mod d) p, straight from the definition.
std::map<std::int64_t, std::int64_t> cyclic_oracle(const CodingSubspace& sub);

/// Certifies `net` as X_d(p) on `sub`: basis kets, `n_trials` random
/// superpositions (complex Gaussian coefficients, normalized; global phase
/// aligned on the largest output component), ancilla decoupling and
/// unitarity of the coding block of network_matrix. Lower-level errors do not
/// escape; they fail the report with a diagnostic.
VerificationReport verify_gate(const Network& net, const CodingSubspace& sub, int n_trials,
                               double tol, std::uint64_t seed = 0);

/// max |network_matrix - matrix assembled column by column from apply_network|.
double matrix_consistency_check(const Network& net, OamWindow window);

}  // namespace oamgate
