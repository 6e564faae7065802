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

#ifndef JAIF_CUE_RD_HPP_
#define JAIF_CUE_RD_HPP_

#include <array>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "jaif/codec.hpp"

namespace jaif {

inline constexpr int kRdFeatureDim = 17;
inline constexpr int kRdRecompressions = 3;

using RdVector = Eigen::Matrix<double, kRdFeatureDim, 1>;

// Rate/distortion behaviour of an image under three recompressions with one
// codec. Index k-1 holds recompression k. Rates r_y, r_z are in bits, r in bits
// per pixel of the original image.
struct RdFeature {
  std::array<double, 3> r_y{};
  std::array<double, 3> r_z{};
  std::array<double, 3> r{};
  double p_inp2 = 0, p_inp3 = 0;
  double p_inc2 = 0, p_inc3 = 0;
  double d_r32 = 0, d_r21 = 0;
  double d_pinp = 0, d_pinc = 0;
};

// Column names in flatten order.
const std::array<std::string_view, kRdFeatureDim>& rd_feature_names();

// r_y(1..3), r_z(1..3), r(1..3), p_inp(2), p_inp(3), p_inc(2), p_inc(3),
// r(3)-r(2), r(2)-r(1), p_inp(3)-p_inp(2), p_inc(3)-p_inc(2).
RdVector flatten(const RdFeature& f);
RdFeature unflatten(const Eigen::Ref<const Eigen::VectorXd>& v);

// Throws UnsupportedError when the codec does not report rates.
RdFeature extract_rd_features(const Image8& img, const Codec& codec);
RdFeature extract_rd_features(const Image8& img, const CodecSettings& settings);

// Assembles the feature from an already computed chain of three results.
RdFeature rd_feature_from_chain(const Image8& img, const std::vector<CodecResult>& chain);

// One point of a recompression curve: k, bpp, PSNR to the input, PSNR to the
// previous step (step 1 compares against the input).
struct RdCurvePoint {
  int k = 0;
  double rate_bpp = 0;
  double p_inp = 0;
  double p_inc = 0;
};
std::vector<RdCurvePoint> recompression_curve(const Image8& img, const Codec& codec, int k);

}  // namespace jaif

#endif  // JAIF_CUE_RD_HPP_
