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

#include "oamgate/mesh.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

namespace oamgate {
namespace {

// Right-multiplies columns (c, c + 1) of u by T(theta, phi)^dagger.
void apply_right_inverse(Matrix& u, Eigen::Index c, double theta, double phi) {
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    const Complex a = u(r, c);
    const Complex b = u(r, c + 1);
    u(r, c) = a * ct - b * std::polar(st, phi);
    u(r, c + 1) = a * std::polar(st, -phi) + b * ct;
  }
}

// Left-multiplies rows (r, r + 1) of u by T(theta, phi).
void apply_left(Matrix& u, Eigen::Index r, double theta, double phi) {
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  for (Eigen::Index c = 0; c < u.cols(); ++c) {
    const Complex a = u(r, c);
    const Complex b = u(r + 1, c);
    u(r, c) = ct * a - std::polar(st, -phi) * b;
    u(r + 1, c) = std::polar(st, phi) * a + ct * b;
  }
}

int bit_reverse(int value, int bits) {
  int out = 0;
  for (int b = 0; b < bits; ++b) {
    out = (out << 1) | ((value >> b) & 1);
  }
  return out;
}

void apply_element_columns(Matrix& m, const Element& e) {
  // m <- U_e * m, for the 2-mode and 1-mode elements a mesh may hold.
  if (const auto* bs = std::get_if<BeamSplitter>(&e)) {
    const double ct = std::cos(bs->theta);
    const double st = std::sin(bs->theta);
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const Complex a = m(bs->mode_a, c);
      const Complex b = m(bs->mode_b, c);
      m(bs->mode_a, c) = ct * a - std::polar(st, -bs->phi) * b;
      m(bs->mode_b, c) = std::polar(st, bs->phi) * a + ct * b;
    }
  } else if (const auto* ph = std::get_if<ModePhase>(&e)) {
    m.row(ph->mode) *= std::polar(1.0, ph->phi);
  } else {
    throw std::invalid_argument("mesh layers may only hold BeamSplitter and ModePhase, got " +
                                element_name(e));
  }
}

}  // namespace

std::string_view to_string(MeshScheme scheme) {
  return scheme == MeshScheme::Butterfly ? "butterfly" : "rectangular";
}

bool is_power_of_two(int d) { return d >= 1 && (d & (d - 1)) == 0; }

std::size_t Mesh::beamsplitter_count() const {
  std::size_t n = 0;
  for (const Element& e : layers) n += std::holds_alternative<BeamSplitter>(e) ? 1 : 0;
  return n;
}

std::size_t Mesh::phase_shifter_count() const {
  std::size_t n = 0;
  for (const Element& e : layers) n += std::holds_alternative<ModePhase>(e) ? 1 : 0;
  for (double phi : output_phases) n += phi != 0.0 ? 1 : 0;
  return n;
}

Mesh decompose_rectangular(const Matrix& u) {
  if (u.rows() != u.cols() || u.rows() < 1) {
    throw std::invalid_argument("decompose_rectangular: expected a non-empty square matrix");
  }
  const double residual = unitarity_residual(u);
  if (residual > 1e-8) {
    std::ostringstream msg;
    msg << "decompose_rectangular: matrix is not unitary (residual ||U^dagger U - I||_max = " << residual
        << ")";
    throw std::invalid_argument(msg.str());
  }

  const int n = static_cast<int>(u.rows());
  Matrix w = u;
  std::vector<BeamSplitter> right;  // applied first, in order
  std::vector<BeamSplitter> left;   // nulled from the left, in order

  for (int i = 0; i + 1 < n; ++i) {
    if (i % 2 == 0) {
      for (int j = 0; j <= i; ++j) {
        // Null w(n-1-j, i-j) against column i-j+1.
        const int r = n - 1 - j;
        const int c = i - j;
        const Complex target = w(r, c);
        const Complex pivot = w(r, c + 1);
        const double theta = std::atan2(std::abs(target), std::abs(pivot));
        const double phi = theta == 0.0 ? 0.0 : wrap_angle(std::arg(target) - std::arg(pivot));
        apply_right_inverse(w, c, theta, phi);
        w(r, c) = 0.0;
        right.push_back(BeamSplitter{c, c + 1, theta, phi});
      }
    } else {
      for (int j = 0; j <= i; ++j) {
        // Null w(n-1-i+j, j) against row n-2-i+j.
        const int r = n - 1 - i + j;
        const int c = j;
        const Complex target = w(r, c);
        const Complex pivot = w(r - 1, c);
        const double theta = std::atan2(std::abs(target), std::abs(pivot));
        const double phi =
            theta == 0.0 ? 0.0 : wrap_angle(kPi + std::arg(target) - std::arg(pivot));
        apply_left(w, r - 1, theta, phi);
        w(r, c) = 0.0;
        left.push_back(BeamSplitter{r - 1, r, theta, phi});
      }
    }
  }

  // Now L_k ... L_1 U R_1^dagger ... R_n^dagger = D. Push each L^dagger
  // through D: L^dagger D = D T(theta, phi') with
  // phi' = phi + pi + arg(d_a) - arg(d_b).
  std::vector<double> out_phase(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) out_phase[static_cast<std::size_t>(m)] = std::arg(w(m, m));

  Mesh mesh;
  mesh.d = n;
  mesh.scheme = MeshScheme::Rectangular;
  mesh.input_permutation.resize(static_cast<std::size_t>(n));
  std::iota(mesh.input_permutation.begin(), mesh.input_permutation.end(), 0);
  for (const BeamSplitter& bs : right) mesh.layers.emplace_back(bs);
  for (auto it = left.rbegin(); it != left.rend(); ++it) {
    BeamSplitter moved = *it;
    if (moved.theta != 0.0) {
      moved.phi = wrap_angle(moved.phi + kPi + out_phase[static_cast<std::size_t>(moved.mode_a)] -
                             out_phase[static_cast<std::size_t>(moved.mode_b)]);
    }
    mesh.layers.emplace_back(moved);
  }
  for (double phi : out_phase) mesh.output_phases.push_back(wrap_angle(phi));
  return mesh;
}

Mesh butterfly_fourier(int d) {
  if (d < 2 || !is_power_of_two(d)) {
    throw std::invalid_argument("butterfly_fourier: d must be a power of two (d >= 2), got " +
                                std::to_string(d));
  }
  int bits = 0;
  while ((1 << bits) < d) ++bits;

  Mesh mesh;
  mesh.d = d;
  mesh.scheme = MeshScheme::Butterfly;
  mesh.output_phases.assign(static_cast<std::size_t>(d), 0.0);
  for (int m = 0; m < d; ++m) mesh.input_permutation.push_back(bit_reverse(m, bits));

  for (int span = 2; span <= d; span *= 2) {
    const int half = span / 2;
    for (int start = 0; start < d; start += span) {
      for (int j = 0; j < half; ++j) {
        const int a = start + j;
        const int b = a + half;
        // BS(pi/4, 0) * diag(1, -w) = [[1, w], [1, -w]] / sqrt(2), w = e^{2 pi i j/span}.
        const double twiddle = kTwoPi * static_cast<double>(j) / static_cast<double>(span);
        mesh.layers.emplace_back(ModePhase{b, wrap_angle(twiddle + kPi)});
        mesh.layers.emplace_back(BeamSplitter{a, b, kPi / 4, 0.0});
      }
    }
  }
  return mesh;
}

Mesh fourier_mesh(int d, MeshScheme scheme) {
  return scheme == MeshScheme::Butterfly ? butterfly_fourier(d)
                                         : decompose_rectangular(fourier_matrix(d));
}

Matrix mesh_matrix(const Mesh& mesh) {
  const int d = mesh.d;
  if (static_cast<int>(mesh.output_phases.size()) != d ||
      static_cast<int>(mesh.input_permutation.size()) != d) {
    throw std::invalid_argument("mesh_matrix: output_phases / input_permutation size != d");
  }
  Matrix m = Matrix::Zero(d, d);
  for (int c = 0; c < d; ++c) m(mesh.input_permutation[static_cast<std::size_t>(c)], c) = 1.0;
  for (const Element& e : mesh.layers) {
    validate_element(e, d);
    apply_element_columns(m, e);
  }
  for (int r = 0; r < d; ++r) m.row(r) *= std::polar(1.0, mesh.output_phases[static_cast<std::size_t>(r)]);
  return m;
}

std::vector<Element> mesh_elements(const Mesh& mesh) {
  std::vector<Element> out;
  bool identity = true;
  for (int m = 0; m < mesh.d; ++m) identity &= mesh.input_permutation[static_cast<std::size_t>(m)] == m;
  if (!identity) out.emplace_back(ModePermutation{mesh.input_permutation});
  out.insert(out.end(), mesh.layers.begin(), mesh.layers.end());
  for (int m = 0; m < mesh.d; ++m) {
    const double phi = mesh.output_phases[static_cast<std::size_t>(m)];
    if (phi != 0.0) out.emplace_back(ModePhase{m, phi});
  }
  return out;
}

Network with_mesh_fourier(const Network& net, MeshScheme scheme) {
  const std::vector<Element> forward = mesh_elements(fourier_mesh(net.d, scheme));
  std::vector<Element> inverse;
  for (auto it = forward.rbegin(); it != forward.rend(); ++it) inverse.push_back(adjoint(*it));

  Network out;
  out.d = net.d;
  out.meta = net.meta;
  std::vector<std::size_t> begin(net.sequence.size());
  std::vector<std::size_t> end(net.sequence.size());
  for (std::size_t i = 0; i < net.sequence.size(); ++i) {
    begin[i] = out.sequence.size();
    if (const auto* f = std::get_if<ModeFourier>(&net.sequence[i])) {
      const auto& expansion = f->inverse ? inverse : forward;
      out.sequence.insert(out.sequence.end(), expansion.begin(), expansion.end());
    } else {
      out.sequence.push_back(net.sequence[i]);
    }
    end[i] = out.sequence.size();
  }
  // A folded return element expands to the reversed adjoint of its partner.
  for (const auto& [fwd, ret] : net.folded_reuse) {
    const std::size_t len = end[fwd] - begin[fwd];
    for (std::size_t t = 0; t < len; ++t) out.folded_reuse.emplace_back(begin[fwd] + t, end[ret] - 1 - t);
  }
  std::sort(out.folded_reuse.begin(), out.folded_reuse.end());
  for (const SorterSpan& span : net.sorters) {
    out.sorters.push_back(SorterSpan{begin[span.first], end[span.last - 1]});
  }
  return out;
}

}  // namespace oamgate
