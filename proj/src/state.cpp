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

#include "oamgate/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace oamgate {

PhotonState::PhotonState(int mode_count, Amplitudes amplitudes)
    : mode_count_(mode_count), amplitudes_(std::move(amplitudes)) {
  if (mode_count_ < 1) {
    throw std::invalid_argument("PhotonState: mode_count must be positive, got " +
                                std::to_string(mode_count_));
  }
  for (auto it = amplitudes_.begin(); it != amplitudes_.end();) {
    const BasisLabel& label = it->first;
    if (label.mode < 0 || label.mode >= mode_count_) {
      throw std::invalid_argument("PhotonState: mode " + std::to_string(label.mode) +
                                  " outside [0, " + std::to_string(mode_count_) + ")");
    }
    it = (it->second == Complex{}) ? amplitudes_.erase(it) : std::next(it);
  }
}

Complex PhotonState::amplitude(const BasisLabel& label) const {
  const auto it = amplitudes_.find(label);
  return it == amplitudes_.end() ? Complex{} : it->second;
}

double PhotonState::norm_squared() const {
  double total = 0.0;
  for (const auto& [label, amp] : amplitudes_) total += std::norm(amp);
  return total;
}

PhotonState PhotonState::normalized() const {
  const double n = std::sqrt(norm_squared());
  if (n == 0.0) throw std::invalid_argument("PhotonState: cannot normalize the zero vector");
  return scaled(Complex{1.0 / n, 0.0});
}

PhotonState PhotonState::pruned(double threshold) const {
  Amplitudes kept;
  for (const auto& [label, amp] : amplitudes_) {
    if (std::abs(amp) >= threshold) kept.emplace_hint(kept.end(), label, amp);
  }
  return PhotonState(mode_count_, std::move(kept));
}

PhotonState PhotonState::scaled(Complex factor) const {
  Amplitudes out;
  for (const auto& [label, amp] : amplitudes_) out.emplace_hint(out.end(), label, amp * factor);
  return PhotonState(mode_count_, std::move(out));
}

PhotonState basis_state(std::int64_t ell, int mode, int d) {
  if (d < 1) throw std::invalid_argument("basis_state: d must be positive");
  if (mode < 0 || mode >= d) {
    throw std::invalid_argument("basis_state: mode " + std::to_string(mode) + " outside [0, " +
                                std::to_string(d) + ")");
  }
  return PhotonState(d, {{BasisLabel{ell, mode}, Complex{1.0, 0.0}}});
}

Complex inner_product(const PhotonState& a, const PhotonState& b) {
  if (a.mode_count() != b.mode_count()) {
    throw std::invalid_argument("inner_product: mode counts differ (" +
                                std::to_string(a.mode_count()) + " vs " +
                                std::to_string(b.mode_count()) + ")");
  }
  // Merge walk over the two ordered supports.
  Complex total{};
  auto ia = a.amplitudes().begin();
  auto ib = b.amplitudes().begin();
  while (ia != a.amplitudes().end() && ib != b.amplitudes().end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      total += std::conj(ia->second) * ib->second;
      ++ia;
      ++ib;
    }
  }
  return total;
}

double fidelity(const PhotonState& a, const PhotonState& b) {
  return std::clamp(std::norm(inner_product(a, b)), 0.0, 1.0);
}

std::vector<double> mode_marginal(const PhotonState& s) {
  std::vector<double> marginal(static_cast<std::size_t>(s.mode_count()), 0.0);
  for (const auto& [label, amp] : s.amplitudes()) {
    marginal[static_cast<std::size_t>(label.mode)] += std::norm(amp);
  }
  return marginal;
}

CodingSubspace::CodingSubspace(int d, int p, std::int64_t ell0) : d_(d), p_(p), ell0_(ell0) {
  if (d < 2) throw std::invalid_argument("CodingSubspace: d must be >= 2, got " + std::to_string(d));
  if (p < 1) throw std::invalid_argument("CodingSubspace: p must be >= 1, got " + std::to_string(p));
}

std::vector<std::int64_t> CodingSubspace::values() const {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(d_));
  for (int j = 0; j < d_; ++j) out.push_back(value(j));
  return out;
}

std::optional<int> CodingSubspace::index_of(std::int64_t ell) const {
  const std::int64_t offset = ell - ell0_;
  if (offset < 0 || offset % p_ != 0) return std::nullopt;
  const std::int64_t j = offset / p_;
  if (j >= d_) return std::nullopt;
  return static_cast<int>(j);
}

}  // namespace oamgate
