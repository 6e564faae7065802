// Copyright 2026 The jaif Authors. All Rights Reserved.
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

#ifndef JAIF_TRANSFORM_HPP_
#define JAIF_TRANSFORM_HPP_

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "jaif/image.hpp"

namespace jaif {

// Orthonormal DCT-II basis: row u holds basis function u. Forward block
// transform is D * B * D^T, inverse D^T * C * D.
inline Eigen::MatrixXd dct_matrix(int n) {
  Eigen::MatrixXd d(n, n);
  for (int u = 0; u < n; ++u) {
    const double a = u == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    for (int x = 0; x < n; ++x) {
      d(u, x) = a * std::cos((2 * x + 1) * u * std::numbers::pi / (2.0 * n));
    }
  }
  return d;
}

// Extends a plane to (rows, cols) by replicating the last row/column.
inline PlaneD pad_replicate(const PlaneD& p, Eigen::Index rows, Eigen::Index cols) {
  PlaneD out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Eigen::Index si = std::min(i, p.rows() - 1);
    for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = p(si, std::min(j, p.cols() - 1));
  }
  return out;
}

inline Eigen::Index round_up(Eigen::Index v, Eigen::Index m) { return (v + m - 1) / m * m; }

// Order-0 Shannon information content, in bits, of a symbol stream.
template <typename Symbols>
double shannon_bits(const Symbols& symbols) {
  std::map<std::int64_t, std::size_t> hist;
  std::size_t n = 0;
  for (const auto s : symbols) {
    ++hist[static_cast<std::int64_t>(s)];
    ++n;
  }
  if (n == 0) return 0.0;
  double bits = 0.0;
  for (const auto& [sym, count] : hist) {
    const double p = static_cast<double>(count) / static_cast<double>(n);
    bits -= static_cast<double>(count) * std::log2(p);
  }
  return bits;
}

}  // namespace jaif

#endif  // JAIF_TRANSFORM_HPP_
