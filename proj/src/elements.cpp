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

#include "oamgate/elements.hpp"

#include <cmath>
#include <string>
#include <type_traits>
#include <vector>

namespace oamgate {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_mode(int mode, int d, const char* what) {
  if (mode < 0 || mode >= d) {
    throw std::invalid_argument(std::string(what) + ": mode " + std::to_string(mode) +
                                " outside [0, " + std::to_string(d) + ")");
  }
}

void require_dimension(int element_d, int d, const char* what) {
  if (element_d != d) {
    throw std::invalid_argument(std::string(what) + ": element dimension " +
                                std::to_string(element_d) + " does not match mode count " +
                                std::to_string(d));
  }
}

Complex dove_factor(const DovePhase& e, std::int64_t ell) {
  return unit_root(ell * e.power.num, e.power.den * e.d);
}

Complex sorter_factor(const SorterPhases& e, std::int64_t ell, int mode) {
  const std::int64_t num = (ell - e.residue) * mode;
  return unit_root(e.inverse ? -num : num, static_cast<std::int64_t>(e.p) * e.d);
}

Complex fourier_entry(int d, bool inverse, int out, int in) {
  const std::int64_t jk = static_cast<std::int64_t>(out) * in;
  return unit_root(inverse ? -jk : jk, d) / std::sqrt(static_cast<double>(d));
}

// Runs f(ell, first, last) over each same-OAM block of an ordered amplitude map.
template <class F>
void for_each_oam_block(const PhotonState::Amplitudes& amps, F&& f) {
  auto it = amps.begin();
  while (it != amps.end()) {
    auto end = it;
    while (end != amps.end() && end->first.ell == it->first.ell) ++end;
    f(it->first.ell, it, end);
    it = end;
  }
}

template <class F>
PhotonState map_amplitudes(const PhotonState& s, F&& f) {
  PhotonState::Amplitudes out;
  for (const auto& [label, amp] : s.amplitudes()) {
    out.emplace_hint(out.end(), label, amp * f(label));
  }
  return PhotonState(s.mode_count(), std::move(out));
}

}  // namespace

BeamSplitter make_beam_splitter(int mode_a, int mode_b, double theta, double phi) {
  if (mode_a == mode_b) throw std::invalid_argument("BeamSplitter: modes must differ");
  if (!(std::abs(theta) <= kPi / 2 + 1e-15)) {
    throw std::invalid_argument("BeamSplitter: |theta| must be <= pi/2, got " +
                                std::to_string(theta));
  }
  if (theta < 0.0) {
    // T(-theta, phi) == T(theta, phi + pi)
    theta = -theta;
    phi += kPi;
  }
  return BeamSplitter{mode_a, mode_b, std::min(theta, kPi / 2), wrap_angle(phi)};
}

std::string element_name(const Element& e) {
  return std::visit(Overloaded{
                        [](const Spp&) { return std::string("Spp"); },
                        [](const DovePhase&) { return std::string("DovePhase"); },
                        [](const ModeFourier&) { return std::string("ModeFourier"); },
                        [](const SorterPhases&) { return std::string("SorterPhases"); },
                        [](const BeamSplitter&) { return std::string("BeamSplitter"); },
                        [](const ModePhase&) { return std::string("ModePhase"); },
                        [](const ModePermutation&) { return std::string("ModePermutation"); },
                        [](const RetroReflector&) { return std::string("RetroReflector"); },
                        [](const Circulator&) { return std::string("Circulator"); },
                    },
                    e);
}

void validate_element(const Element& e, int d) {
  std::visit(Overloaded{
                 [d](const Spp& x) {
                   if (x.control_mode) require_mode(*x.control_mode, d, "Spp");
                 },
                 [](const DovePhase& x) {
                   if (x.d < 1 || x.power.den < 1) {
                     throw std::invalid_argument("DovePhase: needs d >= 1 and a positive denominator");
                   }
                 },
                 [d](const ModeFourier& x) { require_dimension(x.d, d, "ModeFourier"); },
                 [d](const SorterPhases& x) {
                   require_dimension(x.d, d, "SorterPhases");
                   if (x.p < 1) throw std::invalid_argument("SorterPhases: p must be >= 1");
                 },
                 [d](const BeamSplitter& x) {
                   require_mode(x.mode_a, d, "BeamSplitter");
                   require_mode(x.mode_b, d, "BeamSplitter");
                   if (x.mode_a == x.mode_b) {
                     throw std::invalid_argument("BeamSplitter: modes must differ");
                   }
                 },
                 [d](const ModePhase& x) { require_mode(x.mode, d, "ModePhase"); },
                 [d](const ModePermutation& x) {
                   if (static_cast<int>(x.targets.size()) != d) {
                     throw std::invalid_argument("ModePermutation: expected " + std::to_string(d) +
                                                 " targets, got " +
                                                 std::to_string(x.targets.size()));
                   }
                   std::vector<bool> seen(static_cast<std::size_t>(d), false);
                   for (int t : x.targets) {
                     require_mode(t, d, "ModePermutation");
                     if (seen[static_cast<std::size_t>(t)]) {
                       throw std::invalid_argument("ModePermutation: targets are not a permutation");
                     }
                     seen[static_cast<std::size_t>(t)] = true;
                   }
                 },
                 [d](const RetroReflector& x) { require_mode(x.mode, d, "RetroReflector"); },
                 [](const Circulator&) {},
             },
             e);
}

PhotonState apply(const Element& e, const PhotonState& s) {
  const int d = s.mode_count();
  validate_element(e, d);
  return std::visit(
      Overloaded{
          [&](const Spp& x) {
            PhotonState::Amplitudes out;
            for (const auto& [label, amp] : s.amplitudes()) {
              const bool hit = !x.control_mode || *x.control_mode == label.mode;
              out.emplace(BasisLabel{hit ? label.ell + x.order : label.ell, label.mode}, amp);
            }
            return PhotonState(d, std::move(out));
          },
          [&](const DovePhase& x) {
            return map_amplitudes(s, [&](const BasisLabel& l) { return dove_factor(x, l.ell); });
          },
          [&](const ModeFourier& x) {
            PhotonState::Amplitudes out;
            std::vector<Complex> in(static_cast<std::size_t>(d));
            for_each_oam_block(s.amplitudes(), [&](std::int64_t ell, auto first, auto last) {
              std::fill(in.begin(), in.end(), Complex{});
              for (auto it = first; it != last; ++it) in[static_cast<std::size_t>(it->first.mode)] = it->second;
              for (int k = 0; k < d; ++k) {
                Complex acc{};
                for (int j = 0; j < d; ++j) {
                  if (in[static_cast<std::size_t>(j)] != Complex{}) {
                    acc += fourier_entry(d, x.inverse, k, j) * in[static_cast<std::size_t>(j)];
                  }
                }
                out.emplace_hint(out.end(), BasisLabel{ell, k}, acc);
              }
            });
            return PhotonState(d, std::move(out)).pruned();
          },
          [&](const SorterPhases& x) {
            return map_amplitudes(
                s, [&](const BasisLabel& l) { return sorter_factor(x, l.ell, l.mode); });
          },
          [&](const BeamSplitter& x) {
            const double c = std::cos(x.theta);
            const double sn = std::sin(x.theta);
            const Complex up = -std::polar(sn, -x.phi);  // (a, b) entry
            const Complex low = std::polar(sn, x.phi);   // (b, a) entry
            PhotonState::Amplitudes out;
            for_each_oam_block(s.amplitudes(), [&](std::int64_t ell, auto first, auto last) {
              Complex va{};
              Complex vb{};
              for (auto it = first; it != last; ++it) {
                if (it->first.mode == x.mode_a) {
                  va = it->second;
                } else if (it->first.mode == x.mode_b) {
                  vb = it->second;
                } else {
                  out.emplace(it->first, it->second);
                }
              }
              out.emplace(BasisLabel{ell, x.mode_a}, c * va + up * vb);
              out.emplace(BasisLabel{ell, x.mode_b}, low * va + c * vb);
            });
            return PhotonState(d, std::move(out)).pruned();
          },
          [&](const ModePhase& x) {
            const Complex factor = std::polar(1.0, x.phi);
            return map_amplitudes(s, [&](const BasisLabel& l) {
              return l.mode == x.mode ? factor : Complex{1.0, 0.0};
            });
          },
          [&](const ModePermutation& x) {
            PhotonState::Amplitudes out;
            for (const auto& [label, amp] : s.amplitudes()) {
              out.emplace(BasisLabel{label.ell, x.targets[static_cast<std::size_t>(label.mode)]}, amp);
            }
            return PhotonState(d, std::move(out));
          },
          [&](const RetroReflector&) { return s; },
          [&](const Circulator&) { return s; },
      },
      e);
}

Element adjoint(const Element& e) {
  return std::visit(
      Overloaded{
          [](const Spp& x) -> Element { return Spp{-x.order, x.control_mode}; },
          [](const DovePhase& x) -> Element {
            return DovePhase{x.d, Rational{-x.power.num, x.power.den}};
          },
          [](const ModeFourier& x) -> Element { return ModeFourier{x.d, !x.inverse}; },
          [](const SorterPhases& x) -> Element {
            return SorterPhases{x.d, x.p, x.residue, !x.inverse};
          },
          [](const BeamSplitter& x) -> Element {
            // T(theta, phi)^dagger == T(theta, phi + pi)
            return BeamSplitter{x.mode_a, x.mode_b, x.theta, wrap_angle(x.phi + kPi)};
          },
          [](const ModePhase& x) -> Element { return ModePhase{x.mode, wrap_angle(-x.phi)}; },
          [](const ModePermutation& x) -> Element {
            std::vector<int> inv(x.targets.size());
            for (std::size_t m = 0; m < x.targets.size(); ++m) {
              inv[static_cast<std::size_t>(x.targets[m])] = static_cast<int>(m);
            }
            return ModePermutation{std::move(inv)};
          },
          [](const RetroReflector& x) -> Element { return x; },
          [](const Circulator& x) -> Element { return x; },
      },
      e);
}

SparseMatrix element_sparse(const Element& e, OamWindow window, int d, bool truncate) {
  if (d < 1) throw std::invalid_argument("element_matrix: d must be positive");
  if (window.hi < window.lo) throw std::invalid_argument("element_matrix: empty OAM window");
  validate_element(e, d);

  const Eigen::Index n = static_cast<Eigen::Index>(window.count() * d);
  std::vector<Eigen::Triplet<Complex>> t;
  t.reserve(static_cast<std::size_t>(n));
  auto at = [&](std::int64_t ell, int mode) { return window.index(BasisLabel{ell, mode}, d); };

  std::visit(
      Overloaded{
          [&](const Spp& x) {
            for (std::int64_t ell = window.lo; ell <= window.hi; ++ell) {
              for (int m = 0; m < d; ++m) {
                const bool hit = !x.control_mode || *x.control_mode == m;
                const std::int64_t target = hit ? ell + x.order : ell;
                if (!window.contains(target)) {
                  if (truncate) continue;
                  throw WindowEscape("Spp(" + std::to_string(x.order) + ") maps |" +
                                     std::to_string(ell) + ", " + std::to_string(m) +
                                     "> outside OAM window [" + std::to_string(window.lo) + ", " +
                                     std::to_string(window.hi) + "]");
                }
                t.emplace_back(at(target, m), at(ell, m), Complex{1.0, 0.0});
              }
            }
          },
          [&](const DovePhase& x) {
            for (std::int64_t ell = window.lo; ell <= window.hi; ++ell) {
              for (int m = 0; m < d; ++m) t.emplace_back(at(ell, m), at(ell, m), dove_factor(x, ell));
            }
          },
          [&](const ModeFourier& x) {
            for (std::int64_t ell = window.lo; ell <= window.hi; ++ell) {
              for (int k = 0; k < d; ++k) {
                for (int j = 0; j < d; ++j) {
                  t.emplace_back(at(ell, k), at(ell, j), fourier_entry(d, x.inverse, k, j));
                }
              }
            }
          },
          [&](const SorterPhases& x) {
            for (std::int64_t ell = window.lo; ell <= window.hi; ++ell) {
              for (int m = 0; m < d; ++m) {
                t.emplace_back(at(ell, m), at(ell, m), sorter_factor(x, ell, m));
              }
            }
          },
          [&](const BeamSplitter& x) {
            const double c = std::cos(x.theta);
            const double sn = std::sin(x.theta);
            for (std::int64_t ell = window.lo; ell <= window.hi; ++ell) {
              for (int m = 0; m < d; ++m) {
                if (m != x.mode_a && m != x.mode_b) t.emplace_back(at(ell, m), at(ell, m), 1.0);
              }
              const auto a = at(ell, x.mode_a);
              const auto b = at(ell, x.mode_b);
              t.emplace_back(a, a, c);
              t.emplace_back(a, b, -std::polar(sn, -x.phi));
              t.emplace_back(b, a, std::polar(sn, x.phi));
              t.emplace_back(b, b, c);
            }
          },
          [&](const ModePhase& x) {
            for (std::int64_t ell = window.lo; ell <= window.hi; ++ell) {
              for (int m = 0; m < d; ++m) {
                t.emplace_back(at(ell, m), at(ell, m),
                               m == x.mode ? std::polar(1.0, x.phi) : Complex{1.0, 0.0});
              }
            }
          },
          [&](const ModePermutation& x) {
            for (std::int64_t ell = window.lo; ell <= window.hi; ++ell) {
              for (int m = 0; m < d; ++m) {
                t.emplace_back(at(ell, x.targets[static_cast<std::size_t>(m)]), at(ell, m), 1.0);
              }
            }
          },
          [&](const auto&) {
            for (Eigen::Index i = 0; i < n; ++i) t.emplace_back(i, i, 1.0);
          },
      },
      e);

  SparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

Matrix element_matrix(const Element& e, OamWindow window, int d) {
  return Matrix(element_sparse(e, window, d, /*truncate=*/false));
}

}  // namespace oamgate
