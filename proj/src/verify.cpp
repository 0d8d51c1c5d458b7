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

#include "oamgate/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace oamgate {
namespace {

BasisLabel dominant_label(const PhotonState& s) {
  BasisLabel best{};
  double best_mag = -1.0;
  for (const auto& [label, amp] : s.amplitudes()) {
    if (std::abs(amp) > best_mag) {
      best_mag = std::abs(amp);
      best = label;
    }
  }
  return best;
}

// Componentwise distance after rotating `out` so its largest component has
// the oracle's phase.
double aligned_residual(const PhotonState& out, const PhotonState& expected) {
  Complex align{1.0, 0.0};
  if (out.size() > 0) {
    const BasisLabel anchor = dominant_label(out);
    const Complex want = expected.amplitude(anchor);
    const Complex have = out.amplitude(anchor);
    if (std::abs(want) > 0.0 && std::abs(have) > 0.0) {
      align = std::polar(1.0, std::arg(want) - std::arg(have));
    }
  }
  double worst = 0.0;
  for (const auto& [label, amp] : out.amplitudes()) {
    worst = std::max(worst, std::abs(amp * align - expected.amplitude(label)));
  }
  for (const auto& [label, amp] : expected.amplitudes()) {
    worst = std::max(worst, std::abs(out.amplitude(label) * align - amp));
  }
  return worst;
}

}  // namespace

std::map<std::int64_t, std::int64_t> cyclic_oracle(const CodingSubspace& sub) {
  std::map<std::int64_t, std::int64_t> table;
  for (int j = 0; j < sub.d(); ++j) {
    table.emplace(sub.ell0() + static_cast<std::int64_t>(j) * sub.p(),
                  sub.ell0() + static_cast<std::int64_t>((j + 1) % sub.d()) * sub.p());
  }
  return table;
}

VerificationReport verify_gate(const Network& net, const CodingSubspace& sub, int n_trials,
                               double tol, std::uint64_t seed) {
  VerificationReport report;
  report.params = GateParams{sub.d(), sub.p(), sub.ell0(), net.meta.variant, net.meta.config};
  report.seed = seed;
  report.n_trials = n_trials;
  report.tolerance = tol;
  report.decoupling_min = 1.0;
  report.superposition_fidelity = 1.0;

  try {
    if (net.d != sub.d()) {
      throw std::invalid_argument("verify_gate: network has " + std::to_string(net.d) +
                                  " modes, subspace dimension is " + std::to_string(sub.d()));
    }
    if (n_trials < 0) throw std::invalid_argument("verify_gate: n_trials must be >= 0");
    const int d = sub.d();
    const auto oracle = cyclic_oracle(sub);

    for (const auto& [in_ell, out_ell] : oracle) {
      const PhotonState out = apply_network(net, basis_state(in_ell, 0, d));
      BasisCheck check;
      check.input = {in_ell, 0};
      check.expected = {out_ell, 0};
      check.observed = dominant_label(out);
      check.fidelity = fidelity(basis_state(out_ell, 0, d), out);
      report.per_basis.push_back(check);
      report.decoupling_min = std::min(report.decoupling_min, mode_marginal(out)[0]);
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < n_trials; ++trial) {
      PhotonState::Amplitudes in_amps;
      PhotonState::Amplitudes want_amps;
      for (const auto& [in_ell, out_ell] : oracle) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        in_amps[{in_ell, 0}] = Complex{re, im};
        want_amps[{out_ell, 0}] = Complex{re, im};
      }
      const PhotonState input = PhotonState(d, std::move(in_amps)).normalized();
      const PhotonState expected = PhotonState(d, std::move(want_amps)).normalized();
      const PhotonState out = apply_network(net, input);
      report.superposition_fidelity = std::min(report.superposition_fidelity, fidelity(expected, out));
      report.coherence_residual = std::max(report.coherence_residual, aligned_residual(out, expected));
      report.decoupling_min = std::min(report.decoupling_min, mode_marginal(out)[0]);
    }

    const OamWindow window = minimal_window(net);
    const Matrix block = restrict_to(network_matrix(net, window), window, d, coding_kets(sub));
    report.unitarity_residual = unitarity_residual(block);

    std::vector<std::int64_t> probes{sub.ell0() - sub.p(),
                                     sub.ell0() + static_cast<std::int64_t>(d) * sub.p()};
    if (sub.p() > 1) probes.push_back(sub.ell0() + 1);
    for (std::int64_t ell : probes) {
      OutOfDomainProbe probe;
      probe.input = {ell, 0};
      const PhotonState out = apply_network(net, basis_state(ell, 0, d));
      probe.output.assign(out.amplitudes().begin(), out.amplitudes().end());
      report.out_of_domain.push_back(std::move(probe));
    }
  } catch (const std::exception& ex) {
    report.diagnostic = ex.what();
    report.passed = false;
    return report;
  }

  bool ok = report.per_basis.size() == static_cast<std::size_t>(sub.d());
  for (const BasisCheck& check : report.per_basis) ok &= 1.0 - check.fidelity <= tol;
  ok &= 1.0 - report.superposition_fidelity <= tol;
  ok &= 1.0 - report.decoupling_min <= tol;
  ok &= report.coherence_residual <= tol;
  ok &= report.unitarity_residual <= tol;
  report.passed = ok;
  return report;
}

double matrix_consistency_check(const Network& net, OamWindow window) {
  const int d = net.d;
  const Matrix product = network_matrix(net, window);
  const Eigen::Index n = product.cols();
  Matrix columns = Matrix::Zero(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const BasisLabel in = window.label(c, d);
    const PhotonState out = apply_network(net, basis_state(in.ell, in.mode, d));
    for (const auto& [label, amp] : out.amplitudes()) {
      if (window.contains(label.ell)) columns(window.index(label, d), c) = amp;
    }
  }
  return max_abs_diff(product, columns);
}

}  // namespace oamgate
