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

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <cstdint>
#include <numbers>

namespace oamgate {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Nonnegative remainder, for negative OAM values and indices.
constexpr std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

constexpr std::int64_t floor_div(std::int64_t a, std::int64_t m) {
  return (a - floor_mod(a, m)) / m;
}

/// exp(2*pi*i*num/den). Quarter turns are returned exactly so that
/// Fourier sums over d in {2, 4} cancel to exact zeros.
Complex unit_root(std::int64_t num, std::int64_t den);

/// Maps an angle into [0, 2*pi).
double wrap_angle(double phi);

/// d x d discrete Fourier matrix with kernel omega^{+jk}/sqrt(d)
/// (omega^{-jk} when inverse), omega = exp(2*pi*i/d).
Matrix fourier_matrix(int d, bool inverse = false);

/// max |(U^dagger U - I)_{ij}|
double unitarity_residual(const Matrix& u);

/// max |a_ij - b_ij|
double max_abs_diff(const Matrix& a, const Matrix& b);

/// max |a_ij - e^{i chi} b_ij| with chi chosen so that the largest-magnitude
/// entry of `a` is phase-aligned with `b`.
double max_abs_diff_up_to_phase(const Matrix& a, const Matrix& b);

}  // namespace oamgate
