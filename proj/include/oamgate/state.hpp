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

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "oamgate/linalg.hpp"

namespace oamgate {

/// Amplitudes below this magnitude are dropped after interferometric steps.
inline constexpr double kPruneThreshold = 1e-14;

/// One basis ket |ell>_OAM |mode>_m. Ordered lexicographically: OAM first.
struct BasisLabel {
  std::int64_t ell = 0;
  int mode = 0;

  friend auto operator<=>(const BasisLabel&, const BasisLabel&) = default;
};

/// Finite sparse superposition over OAM x spatial modes. Immutable value.
class PhotonState {
 public:
  using Amplitudes = std::map<BasisLabel, Complex>;

  /// Throws std::invalid_argument if mode_count < 1 or any label has a mode
  /// outside [0, mode_count). Exact zeros are not stored.
  PhotonState(int mode_count, Amplitudes amplitudes);

  int mode_count() const { return mode_count_; }
  const Amplitudes& amplitudes() const { return amplitudes_; }
  std::size_t size() const { return amplitudes_.size(); }
  Complex amplitude(const BasisLabel& label) const;

  double norm_squared() const;
  PhotonState normalized() const;
  PhotonState pruned(double threshold = kPruneThreshold) const;
  PhotonState scaled(Complex factor) const;

 private:
  int mode_count_;
  Amplitudes amplitudes_;
};

PhotonState basis_state(std::int64_t ell, int mode, int d);

/// <a|b>. Throws std::invalid_argument on mode-count mismatch.
Complex inner_product(const PhotonState& a, const PhotonState& b);

/// |<a|b>|^2 clamped to [0, 1].
double fidelity(const PhotonState& a, const PhotonState& b);

/// Probability of finding the photon in each spatial mode.
std::vector<double> mode_marginal(const PhotonState& s);

/// The d equally spaced OAM values {ell0 + j p : j = 0..d-1} a cyclic gate
/// acts on, together with the indices the gate builders derive from them.
class CodingSubspace {
 public:
  /// Throws std::invalid_argument unless d >= 2 and p >= 1.
  CodingSubspace(int d, int p, std::int64_t ell0);

  int d() const { return d_; }
  int p() const { return p_; }
  std::int64_t ell0() const { return ell0_; }

  /// ell0 mod d, in [0, d).
  int k() const { return static_cast<int>(floor_mod(ell0_, d_)); }

  /// ell0 mod p: which lattice r + pZ the coding values live on.
  std::int64_t residue() const { return floor_mod(ell0_, p_); }

  /// Sorter output port of ell0 + dp (the value that must be wrapped back):
  /// floor(ell0 / p) mod d. Equal to k() when p == 1.
  int correction_mode() const {
    return static_cast<int>(floor_mod(floor_div(ell0_, p_), d_));
  }

  /// OAM pre-shift that moves the wrap port to mode 0: p * correction_mode().
  std::int64_t pre_shift() const {
    return static_cast<std::int64_t>(p_) * correction_mode();
  }

  std::int64_t value(int j) const { return ell0_ + static_cast<std::int64_t>(j) * p_; }
  std::vector<std::int64_t> values() const;

  /// Index j with value(j) == ell, if ell is a coding value.
  std::optional<int> index_of(std::int64_t ell) const;

  friend bool operator==(const CodingSubspace&, const CodingSubspace&) = default;

 private:
  int d_;
  int p_;
  std::int64_t ell0_;
};

}  // namespace oamgate
