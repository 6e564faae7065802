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

#include "jaif/cue_color.hpp"

#include <numeric>

namespace jaif {

Channel parse_channel(std::string_view s) {
  if (s == "r" || s == "R") return Channel::kR;
  if (s == "g" || s == "G") return Channel::kG;
  if (s == "b" || s == "B") return Channel::kB;
  throw ContractError("unknown color channel '" + std::string(s) + "' (expected r, g or b)");
}

std::array<ResidualPlane, 3> color_residuals(const std::array<PlaneD, 3>& rgb, FilterId filter) {
  std::array<ResidualPlane, 3> out;
  for (int c = 0; c < 3; ++c) out[c] = highpass_residual(rgb[c], filter);
  return out;
}

std::array<ColorCorrFeature, 3> color_features_from_residuals(
    const std::array<ResidualPlane, 3>& res) {
  const Eigen::Index rows = res[0].values.rows();
  std::array<ColorCorrFeature, 3> out;
  for (int c = 0; c < 3; ++c) {
    out[c].center_channel = static_cast<Channel>(c);
    out[c].filter_id = res[0].filter_id;
    out[c].values.resize(static_cast<std::size_t>(rows));
  }
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto r = res[0].values.row(i);
    const auto g = res[1].values.row(i);
    const auto b = res[2].values.row(i);
    for (int c = 0; c < 3; ++c) {
      out[c].values[static_cast<std::size_t>(i)] =
          row_color_correlation(r, g, b, static_cast<Channel>(c));
    }
  }
  return out;
}

double mean_value(const ColorCorrFeature& f) {
  if (f.values.empty()) return 0.0;
  return std::accumulate(f.values.begin(), f.values.end(), 0.0) / double(f.values.size());
}

}  // namespace jaif
