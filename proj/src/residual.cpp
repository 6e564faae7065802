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

#include "jaif/residual.hpp"

#include <string>

namespace jaif {

std::string_view filter_name(FilterId id) {
  switch (id) {
    case FilterId::kLaplacian3: return "laplacian3";
    case FilterId::kKv5: return "kv5";
  }
  return "unknown";
}

FilterId parse_filter(std::string_view name) {
  if (name == "laplacian3") return FilterId::kLaplacian3;
  if (name == "kv5") return FilterId::kKv5;
  throw ContractError("unknown highpass filter '" + std::string(name) + "'");
}

Eigen::ArrayXXd filter_kernel(FilterId id) {
  Eigen::ArrayXXd k;
  switch (id) {
    case FilterId::kLaplacian3:
      k.resize(3, 3);
      k << 0, -1, 0,
          -1, 4, -1,
           0, -1, 0;
      break;
    case FilterId::kKv5:
      k.resize(5, 5);
      k << -1, 2, -2, 2, -1,
            2, -6, 8, -6, 2,
           -2, 8, -12, 8, -2,
            2, -6, 8, -6, 2,
           -1, 2, -2, 2, -1;
      k /= 12.0;
      break;
  }
  return k;
}

namespace {

// Half-sample symmetric reflection into [0, n).
Eigen::Index reflect(Eigen::Index i, Eigen::Index n) {
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - i - 1;
  }
  return i;
}

}  // namespace

ResidualPlane highpass_residual(const Eigen::Ref<const Eigen::ArrayXXd>& plane,
                                FilterId filter_id) {
  const Eigen::ArrayXXd k = filter_kernel(filter_id);
  const Eigen::Index kh = k.rows(), kw = k.cols();
  const Eigen::Index h = plane.rows(), w = plane.cols();
  if (h < kh || w < kw) {
    throw ContractError("highpass_residual: plane " + std::to_string(w) + "x" + std::to_string(h) +
                        " is smaller than the " + std::to_string(kw) + "x" +
                        std::to_string(kh) + " kernel");
  }
  const Eigen::Index ry = kh / 2, rx = kw / 2;

  // Pad once, then every output sample is a dense kernel-sized block product.
  Eigen::ArrayXXd padded(h + 2 * ry, w + 2 * rx);
  for (Eigen::Index i = 0; i < padded.rows(); ++i) {
    const Eigen::Index si = reflect(i - ry, h);
    for (Eigen::Index j = 0; j < padded.cols(); ++j) {
      padded(i, j) = plane(si, reflect(j - rx, w));
    }
  }

  ResidualPlane out{Eigen::ArrayXXd::Zero(h, w), filter_id};
  for (Eigen::Index a = 0; a < kh; ++a) {
    for (Eigen::Index b = 0; b < kw; ++b) {
      const double kv = k(a, b);
      if (kv == 0.0) continue;
      out.values += kv * padded.block(a, b, h, w);
    }
  }
  return out;
}

}  // namespace jaif
