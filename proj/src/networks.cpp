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

#include "oamgate/networks.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace oamgate {
namespace {

void require_gate_params(int d, int p) {
  if (d < 2) throw std::invalid_argument("d must be >= 2, got " + std::to_string(d));
  if (p < 1) throw std::invalid_argument("p must be >= 1, got " + std::to_string(p));
}

bool angle_close(double a, double b) {
  const double diff = std::abs(wrap_angle(a - b));
  return std::min(diff, kTwoPi - diff) < 1e-12;
}

// Equality that tolerates round-off in the phases of rebuilt adjoints.
bool same_element(const Element& a, const Element& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<BeamSplitter>(&a)) {
    const auto& y = std::get<BeamSplitter>(b);
    return x->mode_a == y.mode_a && x->mode_b == y.mode_b && std::abs(x->theta - y.theta) < 1e-12 &&
           (x->theta == 0.0 || angle_close(x->phi, y.phi));
  }
  if (const auto* x = std::get_if<ModePhase>(&a)) {
    const auto& y = std::get<ModePhase>(b);
    return x->mode == y.mode && angle_close(x->phi, y.phi);
  }
  return a == b;
}

void append_sorter(Network& net, int p, bool inverse, std::int64_t residue) {
  const std::size_t first = net.sequence.size();
  net.sequence.emplace_back(ModeFourier{net.d, false});
  net.sequence.emplace_back(SorterPhases{net.d, p, floor_mod(residue, p), inverse});
  net.sequence.emplace_back(ModeFourier{net.d, true});
  net.sorters.push_back(SorterSpan{first, net.sequence.size()});
}

}  // namespace

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::Sorter: return "sorter";
    case GateKind::Xd: return "xd";
    case GateKind::XdP: return "xdp";
    case GateKind::Custom: return "custom";
  }
  return "custom";
}

std::string_view to_string(Config config) {
  return config == Config::Michelson ? "michelson" : "mz";
}

std::string_view to_string(Variant variant) {
  switch (variant) {
    case Variant::A: return "a";
    case Variant::B: return "b";
    case Variant::NotApplicable: return "n/a";
  }
  return "n/a";
}

void Network::validate() const {
  if (d < 1) throw std::invalid_argument("Network: d must be positive");
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    try {
      validate_element(sequence[i], d);
    } catch (const std::invalid_argument& ex) {
      throw std::invalid_argument("element #" + std::to_string(i) + " (" +
                                  element_name(sequence[i]) + "): " + ex.what());
    }
  }
  for (const auto& [fwd, ret] : folded_reuse) {
    if (!(fwd < ret && ret < sequence.size())) {
      throw std::invalid_argument("Network: folded pair (" + std::to_string(fwd) + ", " +
                                  std::to_string(ret) + ") out of order or out of range");
    }
    if (!same_element(sequence[ret], adjoint(sequence[fwd]))) {
      throw std::invalid_argument("Network: folded element #" + std::to_string(ret) +
                                  " is not the adjoint of #" + std::to_string(fwd));
    }
  }
  for (const auto& span : sorters) {
    if (!(span.first < span.last && span.last <= sequence.size())) {
      throw std::invalid_argument("Network: sorter span out of range");
    }
  }
}

Network build_sorter(int d, int p, bool inverse, std::int64_t residue) {
  require_gate_params(d, p);
  Network net;
  net.d = d;
  net.meta.kind = GateKind::Sorter;
  append_sorter(net, p, inverse, residue);
  return net;
}

Network build_xdp(int d, int p, std::int64_t ell0, Variant variant) {
  require_gate_params(d, p);
  if (variant == Variant::NotApplicable) {
    throw std::invalid_argument("build_xdp: variant must be A or B");
  }
  const CodingSubspace sub(d, p, ell0);
  const std::int64_t wrap = static_cast<std::int64_t>(p) * d;

  Network net;
  net.d = d;
  net.meta = NetworkMeta{GateKind::XdP, Config::MachZehnder, variant, sub};
  if (variant == Variant::A) {
    net.sequence.emplace_back(Spp{p, std::nullopt});
    append_sorter(net, p, false, sub.residue());
    net.sequence.emplace_back(Spp{-wrap, sub.correction_mode()});
    append_sorter(net, p, true, sub.residue());
  } else {
    const std::int64_t shift = sub.pre_shift();
    if (shift != 0) net.sequence.emplace_back(Spp{-shift, std::nullopt});
    net.sequence.emplace_back(Spp{p, std::nullopt});
    append_sorter(net, p, false, sub.residue());
    net.sequence.emplace_back(Spp{-wrap, 0});
    append_sorter(net, p, true, sub.residue());
    if (shift != 0) net.sequence.emplace_back(Spp{shift, std::nullopt});
  }
  return net;
}

Network build_xd(int d) {
  Network net = build_xdp(d, 1, 0, Variant::A);
  net.meta.kind = GateKind::Xd;
  return net;
}

Network build_michelson(int d, int p, std::int64_t ell0, Variant variant) {
  require_gate_params(d, p);
  if (variant == Variant::NotApplicable) {
    throw std::invalid_argument("build_michelson: variant must be A or B");
  }
  const CodingSubspace sub(d, p, ell0);
  const std::int64_t wrap = static_cast<std::int64_t>(p) * d;
  const std::int64_t shift = variant == Variant::B ? sub.pre_shift() : 0;
  const int corrected = variant == Variant::A ? sub.correction_mode() : 0;

  Network net;
  net.d = d;
  net.meta = NetworkMeta{GateKind::XdP, Config::Michelson, variant, sub};

  // Input arm, traversed once, then the circulator.
  net.sequence.emplace_back(Spp{p, std::nullopt});
  net.sequence.emplace_back(Circulator{});

  std::optional<std::size_t> shift_plate;
  if (shift != 0) {
    shift_plate = net.sequence.size();
    net.sequence.emplace_back(Spp{-shift, std::nullopt});
  }
  append_sorter(net, p, false, sub.residue());
  const SorterSpan forward = net.sorters.back();

  // Reflecting end: SPP(-pd) with a mirror on the wrap port, retro-reflectors
  // everywhere else.
  net.sequence.emplace_back(Spp{-wrap, corrected});
  for (int m = 0; m < d; ++m) {
    if (m != corrected) net.sequence.emplace_back(RetroReflector{m});
  }

  // Return pass: the same sorter hardware in reverse.
  const std::size_t back_first = net.sequence.size();
  for (std::size_t i = forward.last; i-- > forward.first;) {
    net.folded_reuse.emplace_back(i, net.sequence.size());
    net.sequence.push_back(adjoint(net.sequence[i]));
  }
  net.sorters.push_back(SorterSpan{back_first, net.sequence.size()});

  if (shift_plate) {
    net.folded_reuse.emplace_back(*shift_plate, net.sequence.size());
    net.sequence.push_back(adjoint(net.sequence[*shift_plate]));
  }
  return net;
}

Network build_gate(int d, int p, std::int64_t ell0, Variant variant, Config config) {
  return config == Config::Michelson ? build_michelson(d, p, ell0, variant)
                                     : build_xdp(d, p, ell0, variant);
}

PhotonState apply_network(const Network& net, const PhotonState& s) {
  if (s.mode_count() != net.d) {
    throw std::invalid_argument("apply_network: state has " + std::to_string(s.mode_count()) +
                                " modes, network expects " + std::to_string(net.d));
  }
  PhotonState current = s;
  for (std::size_t i = 0; i < net.sequence.size(); ++i) {
    try {
      current = oamgate::apply(net.sequence[i], current);
    } catch (const std::invalid_argument& ex) {
      throw std::invalid_argument("element #" + std::to_string(i) + " (" +
                                  element_name(net.sequence[i]) + "): " + ex.what());
    }
  }
  return current;
}

OamWindow reach_window(const Network& net, OamWindow input) {
  OamWindow stage = input;
  OamWindow reach = input;
  for (const Element& e : net.sequence) {
    if (const auto* spp = std::get_if<Spp>(&e)) {
      if (spp->control_mode) {
        stage = {std::min(stage.lo, stage.lo + spp->order), std::max(stage.hi, stage.hi + spp->order)};
      } else {
        stage = {stage.lo + spp->order, stage.hi + spp->order};
      }
      reach = {std::min(reach.lo, stage.lo), std::max(reach.hi, stage.hi)};
    }
  }
  return reach;
}

std::vector<BasisLabel> coding_kets(const CodingSubspace& sub) {
  std::vector<BasisLabel> kets;
  for (std::int64_t ell : sub.values()) kets.push_back(BasisLabel{ell, 0});
  return kets;
}

OamWindow minimal_window(const Network& net) {
  if (!net.meta.subspace) {
    throw std::invalid_argument("minimal_window: network has no coding subspace");
  }
  std::int64_t lo = net.meta.subspace->ell0();
  std::int64_t hi = lo;
  for (const BasisLabel& ket : coding_kets(*net.meta.subspace)) {
    PhotonState s = basis_state(ket.ell, ket.mode, net.d);
    for (const Element& e : net.sequence) {
      s = oamgate::apply(e, s);
      for (const auto& [label, amp] : s.amplitudes()) {
        lo = std::min(lo, label.ell);
        hi = std::max(hi, label.ell);
      }
    }
  }
  return OamWindow{lo, hi};
}

Matrix network_matrix(const Network& net, OamWindow window) {
  if (window.hi < window.lo) throw std::invalid_argument("network_matrix: empty OAM window");
  const int d = net.d;
  const OamWindow work = reach_window(net, window);
  const Eigen::Index n_in = static_cast<Eigen::Index>(window.count() * d);
  const Eigen::Index n_work = static_cast<Eigen::Index>(work.count() * d);

  SparseMatrix m(n_work, n_in);
  {
    std::vector<Eigen::Triplet<Complex>> embed;
    for (Eigen::Index c = 0; c < n_in; ++c) {
      embed.emplace_back(work.index(window.label(c, d), d), c, 1.0);
    }
    m.setFromTriplets(embed.begin(), embed.end());
  }
  for (const Element& e : net.sequence) {
    m = (element_sparse(e, work, d, /*truncate=*/true) * m).pruned();
  }

  Matrix out = Matrix::Zero(n_in, n_in);
  for (Eigen::Index c = 0; c < m.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(m, c); it; ++it) {
      const BasisLabel label = work.label(it.row(), d);
      if (window.contains(label.ell)) out(window.index(label, d), c) = it.value();
    }
  }
  return out;
}

Matrix restrict_to(const Matrix& m, OamWindow window, int d, const std::vector<BasisLabel>& kets) {
  std::vector<Eigen::Index> idx;
  for (const BasisLabel& k : kets) {
    if (!window.contains(k.ell) || k.mode < 0 || k.mode >= d) {
      throw std::invalid_argument("restrict_to: ket outside window");
    }
    idx.push_back(window.index(k, d));
  }
  const Eigen::Index n = static_cast<Eigen::Index>(idx.size());
  Matrix out(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) out(r, c) = m(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
  }
  return out;
}

ResourceTally tally_resources(const Network& net) {
  std::set<std::size_t> reused;
  for (const auto& pair : net.folded_reuse) reused.insert(pair.second);

  ResourceTally tally;
  for (std::size_t i = 0; i < net.sequence.size(); ++i) {
    if (reused.contains(i)) continue;
    const Element& e = net.sequence[i];
    if (const auto* spp = std::get_if<Spp>(&e)) {
      tally.spp_list.push_back(spp->order);
    } else if (std::holds_alternative<ModeFourier>(e)) {
      ++tally.fourier_count;
    } else if (std::holds_alternative<DovePhase>(e)) {
      ++tally.dove_phase_count;
    } else if (const auto* phases = std::get_if<SorterPhases>(&e)) {
      // Mode 0 carries no phase.
      tally.dove_phase_count += phases->d - 1;
    } else if (std::holds_alternative<BeamSplitter>(e)) {
      ++tally.beamsplitter_count;
    } else if (std::holds_alternative<ModePhase>(e)) {
      ++tally.mode_phase_count;
    } else if (std::holds_alternative<Circulator>(e)) {
      ++tally.circulator_count;
    } else if (std::holds_alternative<RetroReflector>(e)) {
      ++tally.retroreflector_count;
    }
  }
  for (const SorterSpan& span : net.sorters) {
    if (!reused.contains(span.first)) ++tally.sorter_count;
  }
  std::sort(tally.spp_list.begin(), tally.spp_list.end());
  return tally;
}

}  // namespace oamgate
