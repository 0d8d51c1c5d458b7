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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oamgate/networks.hpp"

using namespace oamgate;
using Catch::Approx;

namespace {

// Coding amplitude vector -> state on mode 0.
PhotonState coding_state(const CodingSubspace& sub, const std::vector<Complex>& c) {
  PhotonState::Amplitudes amps;
  for (int j = 0; j < sub.d(); ++j) amps[{sub.value(j), 0}] = c[static_cast<std::size_t>(j)];
  return PhotonState(sub.d(), std::move(amps));
}

std::vector<Complex> random_coeffs(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  std::vector<Complex> c(static_cast<std::size_t>(d));
  double norm = 0.0;
  for (auto& x : c) {
    x = Complex(g(rng), g(rng));
    norm += std::norm(x);
  }
  for (auto& x : c) x /= std::sqrt(norm);
  return c;
}

// Hand-built d x d Fourier kernel, independent of the library helper.
Matrix dft(int d, int sign) {
  Matrix f(d, d);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      f(k, j) = std::polar(1.0 / std::sqrt(double(d)), sign * 2.0 * std::acos(-1.0) * j * k / d);
    }
  }
  return f;
}

const std::vector<Variant> kVariants{Variant::A, Variant::B};
const std::vector<Config> kConfigs{Config::MachZehnder, Config::Michelson};

}  // namespace

TEST_CASE("sorter examples") {
  const Network s = build_sorter(3, 1, false);
  const PhotonState a = apply_network(s, basis_state(4, 0, 3));
  CHECK(fidelity(a, basis_state(4, 1, 3)) >= 1.0 - 1e-12);
  const PhotonState b = apply_network(s, basis_state(2, 2, 3));
  CHECK(fidelity(b, basis_state(2, 1, 3)) >= 1.0 - 1e-12);
}

TEST_CASE("sorter with ell off the p lattice spreads over modes") {
  // F^-1 diag(1, exp(i*pi/2)) F on the single OAM value 1.
  Matrix phases = Matrix::Zero(2, 2);
  phases(0, 0) = 1.0;
  phases(1, 1) = std::polar(1.0, 2.0 * std::acos(-1.0) * 1 * 1 / 4.0);
  const Matrix oracle = dft(2, -1) * phases * dft(2, +1);

  const PhotonState out = apply_network(build_sorter(2, 2, false), basis_state(1, 0, 2));
  CHECK(std::abs(out.amplitude({1, 0}) - oracle(0, 0)) < 1e-12);
  CHECK(std::abs(out.amplitude({1, 1}) - oracle(1, 0)) < 1e-12);
  CHECK(std::abs(out.amplitude({1, 0}) - Complex(0.5, 0.5)) < 1e-12);
  CHECK(std::abs(out.amplitude({1, 1}) - Complex(0.5, -0.5)) < 1e-12);

  const Matrix m = network_matrix(build_sorter(2, 2, false), OamWindow{1, 1});
  CHECK(max_abs_diff(m, oracle) < 1e-12);
}

TEST_CASE("sorter law") {
  for (int d = 2; d <= 8; ++d) {
    const Network s = build_sorter(d, 1, false);
    const Network inv = build_sorter(d, 1, true);
    for (int i = -2 * d; i <= 2 * d; ++i) {
      for (int j = 0; j < d; ++j) {
        const int out_mode = static_cast<int>(floor_mod(j + i, d));
        CHECK(fidelity(apply_network(s, basis_state(i, j, d)), basis_state(i, out_mode, d)) >=
              1.0 - 1e-12);
        CHECK(fidelity(apply_network(inv, basis_state(i, out_mode, d)), basis_state(i, j, d)) >=
              1.0 - 1e-12);
      }
    }
  }
}

TEST_CASE("sorter with p > 1 routes lattice values by quotient") {
  for (int d = 2; d <= 5; ++d) {
    for (int p = 2; p <= 3; ++p) {
      for (int r = 0; r < p; ++r) {
        const Network s = build_sorter(d, p, false, r);
        for (int q = -d; q <= d; ++q) {
          const std::int64_t ell = static_cast<std::int64_t>(q) * p + r;
          const PhotonState out = apply_network(s, basis_state(ell, 0, d));
          CHECK(fidelity(out, basis_state(ell, static_cast<int>(floor_mod(q, d)), d)) >= 1.0 - 1e-12);
        }
      }
    }
  }
}

TEST_CASE("build_sorter rejects invalid parameters") {
  CHECK_THROWS_AS(build_sorter(1, 1, false), std::invalid_argument);
  CHECK_THROWS_AS(build_sorter(3, 0, false), std::invalid_argument);
  CHECK_THROWS_AS(build_xd(1), std::invalid_argument);
  CHECK_THROWS_AS(build_xdp(3, 0, 0, Variant::A), std::invalid_argument);
  CHECK_THROWS_AS(build_michelson(0, 1, 0, Variant::A), std::invalid_argument);
}

TEST_CASE("build_xd layout and examples") {
  const Network x = build_xd(3);
  REQUIRE(x.sequence.size() == 8);
  CHECK(std::get<Spp>(x.sequence[0]) == Spp{1, std::nullopt});
  CHECK(std::get<Spp>(x.sequence[4]) == Spp{-3, 0});
  CHECK(x.sorters.size() == 2);

  CHECK(fidelity(apply_network(x, basis_state(2, 0, 3)), basis_state(0, 0, 3)) >= 1.0 - 1e-12);

  const std::vector<Complex> c{{0.5, 0.1}, {-0.3, 0.6}, {0.2, -0.4}};
  const CodingSubspace sub(3, 1, 0);
  const PhotonState in = coding_state(sub, c).normalized();
  const PhotonState expected = coding_state(sub, {c[2], c[0], c[1]}).normalized();
  const PhotonState out = apply_network(x, in);
  for (int j = 0; j < 3; ++j) {
    CHECK(std::abs(out.amplitude({j, 0}) - expected.amplitude({j, 0})) < 1e-12);
  }

  const PhotonState ood = apply_network(x, basis_state(3, 0, 3));
  CHECK(fidelity(ood, basis_state(4, 0, 3)) >= 1.0 - 1e-12);
  const Matrix m = network_matrix(x, OamWindow{3, 4});
  CHECK(std::abs(std::abs(m(OamWindow{3, 4}.index({4, 0}, 3), OamWindow{3, 4}.index({3, 0}, 3))) - 1.0) < 1e-12);
}

TEST_CASE("build_xdp examples") {
  CHECK(fidelity(apply_network(build_xdp(3, 2, 0, Variant::A), basis_state(4, 0, 3)),
                 basis_state(0, 0, 3)) >= 1.0 - 1e-12);
  CHECK(fidelity(apply_network(build_xdp(3, 1, 4, Variant::A), basis_state(6, 0, 3)),
                 basis_state(4, 0, 3)) >= 1.0 - 1e-12);

  const Network a = build_xdp(3, 1, 4, Variant::A);
  const Network b = build_xdp(3, 1, 4, Variant::B);
  CHECK(std::get<Spp>(a.sequence[4]).control_mode == 1);
  for (std::int64_t ell : {4, 5, 6}) {
    const PhotonState oa = apply_network(a, basis_state(ell, 0, 3));
    const PhotonState ob = apply_network(b, basis_state(ell, 0, 3));
    CHECK(fidelity(oa, ob) >= 1.0 - 1e-12);
  }
  const CodingSubspace sub(3, 1, 4);
  const OamWindow w{std::min(minimal_window(a).lo, minimal_window(b).lo),
                    std::max(minimal_window(a).hi, minimal_window(b).hi)};
  const Matrix ma = restrict_to(network_matrix(a, w), w, 3, coding_kets(sub));
  const Matrix mb = restrict_to(network_matrix(b, w), w, 3, coding_kets(sub));
  CHECK(max_abs_diff_up_to_phase(ma, mb) < 1e-10);
}

TEST_CASE("build_michelson examples") {
  const Network m4 = build_michelson(4, 1, 0, Variant::A);
  REQUIRE_NOTHROW(m4.validate());
  const OamWindow w{0, 4};
  CHECK(max_abs_diff_up_to_phase(network_matrix(m4, w), network_matrix(build_xd(4), w)) < 1e-10);

  CHECK(tally_resources(build_michelson(3, 2, 1, Variant::A)).sorter_count == 1);
  const ResourceTally t = tally_resources(build_michelson(3, 1, 0, Variant::A));
  CHECK(t.retroreflector_count == 2);
  CHECK(t.circulator_count == 1);

  const Network mb = build_michelson(3, 1, 4, Variant::B);
  REQUIRE_NOTHROW(mb.validate());
  const ResourceTally tb = tally_resources(mb);
  CHECK(tb.spp_list == std::vector<std::int64_t>{-3, -1, 1});
  CHECK(tb.sorter_count == 1);
}

TEST_CASE("folded pairs are checked") {
  Network m = build_michelson(3, 1, 0, Variant::A);
  REQUIRE_FALSE(m.folded_reuse.empty());
  m.folded_reuse.front().second = m.folded_reuse.front().first + 1;
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
}

TEST_CASE("apply_network examples") {
  Network empty;
  empty.d = 3;
  const PhotonState s(3, {{{0, 0}, 0.6}, {{2, 1}, Complex(0.0, 0.8)}});
  const PhotonState out = apply_network(empty, s);
  CHECK(out.amplitudes() == s.amplitudes());

  const Network x2 = build_xd(2);
  const PhotonState once = apply_network(x2, basis_state(0, 0, 2));
  CHECK(fidelity(once, basis_state(1, 0, 2)) >= 1.0 - 1e-12);
  CHECK(fidelity(apply_network(x2, once), basis_state(0, 0, 2)) >= 1.0 - 1e-12);
}

TEST_CASE("apply_network names the offending element") {
  Network net;
  net.d = 3;
  net.sequence = {Spp{1, std::nullopt}, ModePhase{7, 0.1}};
  try {
    apply_network(net, basis_state(0, 0, 3));
    FAIL("expected an exception");
  } catch (const std::invalid_argument& ex) {
    CHECK_THAT(ex.what(), Catch::Matchers::ContainsSubstring("element #1"));
    CHECK_THAT(ex.what(), Catch::Matchers::ContainsSubstring("ModePhase"));
  }
  CHECK_THROWS_AS(apply_network(net, basis_state(0, 0, 4)), std::invalid_argument);
}

TEST_CASE("network_matrix examples") {
  const Network x2 = build_xd(2);
  const OamWindow w = minimal_window(x2);
  const Matrix r = restrict_to(network_matrix(x2, w), w, 2, {{0, 0}, {1, 0}});
  Matrix perm(2, 2);
  perm << 0.0, 1.0, 1.0, 0.0;
  CHECK(max_abs_diff_up_to_phase(r, perm) < 1e-12);
  CHECK(max_abs_diff(r, perm) < 1e-12);

  Network empty;
  empty.d = 3;
  const Matrix id = network_matrix(empty, OamWindow{-1, 2});
  CHECK(max_abs_diff(id, Matrix::Identity(12, 12)) == 0.0);

  const Network x32 = build_xdp(3, 2, 0, Variant::A);
  const OamWindow w32 = minimal_window(x32);
  const Matrix c = restrict_to(network_matrix(x32, w32), w32, 3, coding_kets(CodingSubspace(3, 2, 0)));
  Matrix cyc = Matrix::Zero(3, 3);
  for (int j = 0; j < 3; ++j) cyc((j + 1) % 3, j) = 1.0;
  CHECK(max_abs_diff_up_to_phase(c, cyc) < 1e-12);
}

TEST_CASE("minimal and reach windows") {
  CHECK(minimal_window(build_xd(4)) == OamWindow{0, 4});
  const Network x = build_xd(3);
  const OamWindow reach = reach_window(x, OamWindow{0, 2});
  CHECK(reach.lo <= -2);
  CHECK(reach.hi >= 3);
  Network bare;
  bare.d = 2;
  CHECK_THROWS_AS(minimal_window(bare), std::invalid_argument);
}

TEST_CASE("network_matrix columns agree with apply_network") {
  for (int d = 2; d <= 5; ++d) {
    for (Config config : kConfigs) {
      const Network net = build_gate(d, 2, -1, Variant::B, config);
      const OamWindow w = minimal_window(net);
      const Matrix m = network_matrix(net, w);
      for (const BasisLabel& in : coding_kets(*net.meta.subspace)) {
        const PhotonState out = apply_network(net, basis_state(in.ell, in.mode, d));
        for (Eigen::Index row = 0; row < m.rows(); ++row) {
          CHECK(std::abs(m(row, w.index(in, d)) - out.amplitude(w.label(row, d))) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("tally examples") {
  for (int d = 2; d <= 10; ++d) {
    const ResourceTally t = tally_resources(build_xd(d));
    CHECK(t.spp_list == std::vector<std::int64_t>{-d, 1});
    CHECK(t.fourier_count == 4);
    CHECK(t.dove_phase_count == 2 * (d - 1));
    CHECK(t.sorter_count == 2);

    const ResourceTally m = tally_resources(build_michelson(d, 1, 0, Variant::A));
    CHECK(m.fourier_count == 2);
    CHECK(m.sorter_count == 1);
    CHECK(m.spp_count() == 2);
    CHECK(m.retroreflector_count == d - 1);
  }
  for (int d = 2; d <= 6; ++d) {
    for (std::int64_t ell0 = 1; ell0 < d; ++ell0) {
      const ResourceTally b = tally_resources(build_xdp(d, 1, ell0, Variant::B));
      std::vector<std::int64_t> expected{-ell0, 1, -d, ell0};
      std::sort(expected.begin(), expected.end());
      CHECK(b.spp_list == expected);
    }
  }
  // The k = 0 plates are the identity and are not built.
  CHECK(tally_resources(build_xdp(4, 1, 0, Variant::B)).spp_list == std::vector<std::int64_t>{-4, 1});
}

TEST_CASE("gate correctness, decoupling and coherence over the sweep") {
  std::mt19937_64 rng(99);
  for (int d = 2; d <= 10; ++d) {
    for (int p = 1; p <= 3; ++p) {
      for (std::int64_t ell0 = -5; ell0 <= 5; ++ell0) {
        const CodingSubspace sub(d, p, ell0);
        for (Variant v : kVariants) {
          for (Config cfg : kConfigs) {
            const Network net = build_gate(d, p, ell0, v, cfg);
            INFO("d=" << d << " p=" << p << " ell0=" << ell0 << " variant=" << to_string(v)
                      << " config=" << to_string(cfg));
            bool basis_ok = true;
            for (int j = 0; j < d; ++j) {
              const PhotonState out = apply_network(net, basis_state(sub.value(j), 0, d));
              basis_ok = basis_ok &&
                         fidelity(out, basis_state(sub.value((j + 1) % d), 0, d)) >= 1.0 - 1e-10;
            }
            CHECK(basis_ok);

            const auto c = random_coeffs(rng, d);
            std::vector<Complex> shifted(c.size());
            for (int j = 0; j < d; ++j) shifted[static_cast<std::size_t>((j + 1) % d)] = c[static_cast<std::size_t>(j)];
            const PhotonState out = apply_network(net, coding_state(sub, c));
            CHECK(mode_marginal(out)[0] >= 1.0 - 1e-10);
            const Complex g = inner_product(coding_state(sub, shifted), out);
            CHECK(std::abs(g) >= 1.0 - 1e-10);
            double worst = 0.0;
            for (int j = 0; j < d; ++j) {
              worst = std::max(worst, std::abs(out.amplitude({sub.value(j), 0}) -
                                               g * shifted[static_cast<std::size_t>(j)]));
            }
            CHECK(worst <= 1e-10);
          }
        }
      }
    }
  }
}

TEST_CASE("applying the gate d times is the identity on coding kets") {
  for (int d = 2; d <= 7; ++d) {
    for (int p = 1; p <= 3; ++p) {
      for (std::int64_t ell0 : {-4, 0, 3}) {
        const Network net = build_xdp(d, p, ell0, Variant::A);
        const CodingSubspace sub(d, p, ell0);
        for (int j = 0; j < d; ++j) {
          PhotonState s = basis_state(sub.value(j), 0, d);
          for (int t = 0; t < d; ++t) s = apply_network(net, s);
          CHECK(fidelity(s, basis_state(sub.value(j), 0, d)) >= 1.0 - 1e-9);
        }
      }
    }
  }
}

TEST_CASE("variant and folding equivalence") {
  for (int d = 2; d <= 6; ++d) {
    for (int p = 1; p <= 3; ++p) {
      for (std::int64_t ell0 = -5; ell0 <= 5; ++ell0) {
        INFO("d=" << d << " p=" << p << " ell0=" << ell0);
        const CodingSubspace sub(d, p, ell0);
        const Network a = build_xdp(d, p, ell0, Variant::A);
        const Network b = build_xdp(d, p, ell0, Variant::B);
        const OamWindow wa = minimal_window(a);
        const OamWindow wb = minimal_window(b);
        const OamWindow w{std::min(wa.lo, wb.lo), std::max(wa.hi, wb.hi)};
        CHECK(max_abs_diff_up_to_phase(restrict_to(network_matrix(a, w), w, d, coding_kets(sub)),
                                       restrict_to(network_matrix(b, w), w, d, coding_kets(sub))) <=
              1e-10);
        for (Variant v : kVariants) {
          const Network mz = build_xdp(d, p, ell0, v);
          const Network mi = build_michelson(d, p, ell0, v);
          const OamWindow wm = minimal_window(mz);
          CHECK(max_abs_diff_up_to_phase(network_matrix(mz, wm), network_matrix(mi, wm)) <= 1e-10);
        }
      }
    }
  }
}
