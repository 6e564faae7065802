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

#ifndef JAIF_CUE_COLOR_HPP_
#define JAIF_CUE_COLOR_HPP_

#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "jaif/color.hpp"
#include "jaif/image.hpp"
#include "jaif/residual.hpp"

namespace jaif {

enum class Channel { kR = 0, kG = 1, kB = 2 };

inline char channel_letter(Channel c) { return "rgb"[static_cast<int>(c)]; }
Channel parse_channel(std::string_view s);

// Per-row correlations around one center channel, one value per patch row.
struct ColorCorrFeature {
  Channel center_channel = Channel::kG;
  std::vector<double> values;
  FilterId filter_id = FilterId::kLaplacian3;
};

struct ColorFeatureOptions {
  int patch = 512;
  FilterId filter = FilterId::kLaplacian3;
};

// Normalized inner product of |c - o1| and |c - o2|. Returns 0 when either
// difference vector is all zero. The result is symmetric in o1, o2.
template <typename DerivedC, typename Derived1, typename Derived2>
double correlation_around(const Eigen::ArrayBase<DerivedC>& center,
                          const Eigen::ArrayBase<Derived1>& other1,
                          const Eigen::ArrayBase<Derived2>& other2) {
  if (center.size() != other1.size() || center.size() != other2.size()) {
    throw ContractError("row_color_correlation: rows have different lengths");
  }
  if (center.size() == 0) throw ContractError("row_color_correlation: empty rows");
  const Eigen::ArrayXd d1 = (center.template cast<double>() - other1.template cast<double>()).abs();
  const Eigen::ArrayXd d2 = (center.template cast<double>() - other2.template cast<double>()).abs();
  const double n1 = d1.matrix().squaredNorm();
  const double n2 = d2.matrix().squaredNorm();
  if (n1 == 0.0 || n2 == 0.0) return 0.0;
  const double rho = (d1 * d2).sum() / std::sqrt(n1 * n2);
  return std::min(rho, 1.0);
}

// rho(center) for one row of red, green and blue residuals: the correlation of
// the two absolute residual differences that involve the center channel.
template <typename DerivedR, typename DerivedG, typename DerivedB>
double row_color_correlation(const Eigen::ArrayBase<DerivedR>& r,
                             const Eigen::ArrayBase<DerivedG>& g,
                             const Eigen::ArrayBase<DerivedB>& b,
                             Channel center = Channel::kG) {
  switch (center) {
    case Channel::kR: return correlation_around(r, g, b);
    case Channel::kG: return correlation_around(g, r, b);
    case Channel::kB: return correlation_around(b, r, g);
  }
  return 0.0;
}

// Residuals of a center-cropped patch; index 0..2 = R,G,B.
std::array<ResidualPlane, 3> color_residuals(const std::array<PlaneD, 3>& rgb, FilterId filter);

std::array<ColorCorrFeature, 3> color_features_from_residuals(
    const std::array<ResidualPlane, 3>& residuals);

template <typename Scalar>
std::array<ColorCorrFeature, 3> extract_color_features(const ImageBuffer<Scalar>& img,
                                                       const ColorFeatureOptions& opt = {}) {
  require_colorspace(img.colorspace(), ColorSpace::kRGB, "extract_color_features");
  if (img.width() < opt.patch || img.height() < opt.patch) {
    throw ContractError("extract_color_features: image " + std::to_string(img.width()) + "x" +
                        std::to_string(img.height()) + " is smaller than the " +
                        std::to_string(opt.patch) + "x" + std::to_string(opt.patch) + " patch");
  }
  const auto patch = center_crop(img, opt.patch, opt.patch);
  const std::array<PlaneD, 3> rgb = {plane_as_double(patch, 0), plane_as_double(patch, 1),
                                     plane_as_double(patch, 2)};
  return color_features_from_residuals(color_residuals(rgb, opt.filter));
}

// Color conversion and 4:2:0 round trip without any quantization: the
// intermediate stages run in double precision, only the output is stored at
// the input's sample depth.
template <typename Scalar>
ImageBuffer<Scalar> preprocess_only(const ImageBuffer<Scalar>& img,
                                    YuvMatrix m = YuvMatrix::bt601()) {
  const ImageD unit = convert_depth<double>(img);
  return convert_depth<Scalar>(
      yuv_to_rgb(chroma_upsample_420(chroma_downsample_420(rgb_to_yuv(unit, m))), m));
}

double mean_value(const ColorCorrFeature& f);

}  // namespace jaif

#endif  // JAIF_CUE_COLOR_HPP_
