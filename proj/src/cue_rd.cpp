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

#include "jaif/cue_rd.hpp"

#include <string>

#include "jaif/metrics.hpp"

namespace jaif {

const std::array<std::string_view, kRdFeatureDim>& rd_feature_names() {
  static const std::array<std::string_view, kRdFeatureDim> names = {
      "r_y1",   "r_y2",   "r_y3",   "r_z1",   "r_z2",  "r_z3",  "r1",     "r2",    "r3",
      "p_inp2", "p_inp3", "p_inc2", "p_inc3", "d_r32", "d_r21", "d_pinp", "d_pinc"};
  return names;
}

RdVector flatten(const RdFeature& f) {
  RdVector v;
  v << f.r_y[0], f.r_y[1], f.r_y[2], f.r_z[0], f.r_z[1], f.r_z[2], f.r[0], f.r[1], f.r[2],
      f.p_inp2, f.p_inp3, f.p_inc2, f.p_inc3, f.d_r32, f.d_r21, f.d_pinp, f.d_pinc;
  return v;
}

RdFeature unflatten(const Eigen::Ref<const Eigen::VectorXd>& v) {
  if (v.size() != kRdFeatureDim) {
    throw ContractError("unflatten: expected 17 values, got " + std::to_string(v.size()));
  }
  RdFeature f;
  for (int k = 0; k < 3; ++k) {
    f.r_y[k] = v(k);
    f.r_z[k] = v(3 + k);
    f.r[k] = v(6 + k);
  }
  f.p_inp2 = v(9);
  f.p_inp3 = v(10);
  f.p_inc2 = v(11);
  f.p_inc3 = v(12);
  f.d_r32 = v(13);
  f.d_r21 = v(14);
  f.d_pinp = v(15);
  f.d_pinc = v(16);
  return f;
}

RdFeature rd_feature_from_chain(const Image8& img, const std::vector<CodecResult>& chain) {
  if (chain.size() != kRdRecompressions) {
    throw ContractError("rate-distortion features need exactly 3 recompressions");
  }
  const double pixels = double(img.height()) * img.width();
  RdFeature f;
  for (int k = 0; k < 3; ++k) {
    f.r_y[k] = static_cast<double>(chain[k].bits_y);
    f.r_z[k] = static_cast<double>(chain[k].bits_z);
    f.r[k] = (f.r_y[k] + f.r_z[k]) / pixels;
  }
  f.p_inp2 = psnr(img, chain[1].decoded);
  f.p_inp3 = psnr(img, chain[2].decoded);
  f.p_inc2 = psnr(chain[0].decoded, chain[1].decoded);
  f.p_inc3 = psnr(chain[1].decoded, chain[2].decoded);
  f.d_r32 = f.r[2] - f.r[1];
  f.d_r21 = f.r[1] - f.r[0];
  f.d_pinp = f.p_inp3 - f.p_inp2;
  f.d_pinc = f.p_inc3 - f.p_inc2;
  return f;
}

RdFeature extract_rd_features(const Image8& img, const Codec& codec) {
  if (!codec.reports_rates()) {
    throw UnsupportedError("codec '" + std::string(codec.id()) +
                           "' does not report latent and side-information rates");
  }
  return rd_feature_from_chain(img, recompress_chain(codec, img, kRdRecompressions));
}

RdFeature extract_rd_features(const Image8& img, const CodecSettings& settings) {
  return extract_rd_features(img, *make_codec(settings));
}

std::vector<RdCurvePoint> recompression_curve(const Image8& img, const Codec& codec, int k) {
  const auto chain = recompress_chain(codec, img, k);
  std::vector<RdCurvePoint> out;
  for (int i = 0; i < k; ++i) {
    RdCurvePoint p;
    p.k = i + 1;
    p.rate_bpp = chain[i].bpp();
    p.p_inp = psnr(img, chain[i].decoded);
    p.p_inc = psnr(i == 0 ? img : chain[i - 1].decoded, chain[i].decoded);
    out.push_back(p);
  }
  return out;
}

}  // namespace jaif
