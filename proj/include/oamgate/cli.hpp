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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "oamgate/mesh.hpp"
#include "oamgate/networks.hpp"

namespace oamgate {

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitUsage = 2 };

struct GateSpec {
  int d = 3;
  int p = 1;
  std::int64_t ell0 = 0;
  Variant variant = Variant::A;
  Config config = Config::MachZehnder;
  bool use_mesh_fourier = false;
  /// Defaults to butterfly when d is a power of two, rectangular otherwise.
  std::optional<MeshScheme> scheme;

  /// Throws std::invalid_argument on d < 2, p < 1, or a butterfly request
  /// for a d that is not a power of two.
  void validate() const;
  MeshScheme effective_scheme() const;
};

Network build_network(const GateSpec& spec);

/// Entry point of the `oamgate` tool. `args` excludes the program name.
/// Subcommands: simulate, verify, resources, synth.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oamgate
