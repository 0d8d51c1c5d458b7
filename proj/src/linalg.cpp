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

#include "oamgate/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace oamgate {

Complex unit_root(std::int64_t num, std::int64_t den) {
  if (den <= 0) {
    throw std::invalid_argument("unit_root: denominator must be positive");
  }
  const std::int64_t n = floor_mod(num, den);
  if (n == 0) return {1.0, 0.0};
  if ((4 * n) % den == 0) {
    switch ((4 * n) / den) {
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle = kTwoPi * static_cast<double>(n) / static_cast<double>(den);
  return std::polar(1.0, angle);
}

double wrap_angle(double phi) {
  double r = std::fmod(phi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

Matrix fourier_matrix(int d, bool inverse) {
  if (d < 1) throw std::invalid_argument("fourier_matrix: d must be >= 1");
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  Matrix f(d, d);
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j < d; ++j) {
      const std::int64_t jk = static_cast<std::int64_t>(j) * k;
      f(k, j) = scale * unit_root(inverse ? -jk : jk, d);
    }
  }
  return f;
}

double unitarity_residual(const Matrix& u) {
  const Matrix g = u.adjoint() * u - Matrix::Identity(u.cols(), u.cols());
  return g.size() == 0 ? 0.0 : g.cwiseAbs().maxCoeff();
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

double max_abs_diff_up_to_phase(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff_up_to_phase: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  a.cwiseAbs().maxCoeff(&r, &c);
  Complex align{1.0, 0.0};
  if (std::abs(a(r, c)) > 0.0 && std::abs(b(r, c)) > 0.0) {
    align = std::polar(1.0, std::arg(a(r, c)) - std::arg(b(r, c)));
  }
  return (a - align * b).cwiseAbs().maxCoeff();
}

}  // namespace oamgate
