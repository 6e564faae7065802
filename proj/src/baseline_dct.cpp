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

#include <cmath>
#include <string>
#include <vector>

#include "jaif/codecs.hpp"
#include "jaif/color.hpp"
#include "jaif/transform.hpp"

namespace jaif {
namespace {

using Table = Eigen::Matrix<int, 8, 8, Eigen::RowMajor>;
using Mat8 = Eigen::Matrix<double, 8, 8>;

const int kLumaBase[64] = {
    16, 11, 10, 16, 24,  40,  51,  61,   //
    12, 12, 14, 19, 26,  58,  60,  55,   //
    14, 13, 16, 24, 40,  57,  69,  56,   //
    14, 17, 22, 29, 51,  87,  80,  62,   //
    18, 22, 37, 56, 68,  109, 103, 77,   //
    24, 35, 55, 64, 81,  104, 113, 92,   //
    49, 64, 78, 87, 103, 121, 120, 101,  //
    72, 92, 95, 98, 112, 100, 103, 99};

const int kChromaBase[64] = {
    17, 18, 24, 47, 99, 99, 99, 99,  //
    18, 21, 26, 66, 99, 99, 99, 99,  //
    24, 26, 56, 99, 99, 99, 99, 99,  //
    47, 66, 99, 99, 99, 99, 99, 99,  //
    99, 99, 99, 99, 99, 99, 99, 99,  //
    99, 99, 99, 99, 99, 99, 99, 99,  //
    99, 99, 99, 99, 99, 99, 99, 99,  //
    99, 99, 99, 99, 99, 99, 99, 99};

struct PlaneCoding {
  Plane<std::uint8_t> recon;
  double bits = 0.0;
};

PlaneCoding code_plane(const Plane<std::uint8_t>& src, const Table& table,
                       const Eigen::MatrixXd& basis) {
  const Mat8 d = basis;
  const Eigen::Index h = src.rows(), w = src.cols();
  const Eigen::Index ph = round_up(h, 8), pw = round_up(w, 8);
  const PlaneD padded = pad_replicate(src.cast<double>() - 128.0, ph, pw);
  const Mat8 q = table.cast<double>();

  PlaneD recon(ph, pw);
  std::vector<int> dc_diffs;
  std::vector<int> ac;
  dc_diffs.reserve(static_cast<std::size_t>(ph / 8 * pw / 8));
  ac.reserve(static_cast<std::size_t>(ph * pw));
  int prev_dc = 0;
  for (Eigen::Index by = 0; by < ph; by += 8) {
    for (Eigen::Index bx = 0; bx < pw; bx += 8) {
      const Mat8 block = padded.block(by, bx, 8, 8).matrix();
      const Mat8 coef = d * block * d.transpose();
      Mat8 deq;
      for (int u = 0; u < 8; ++u) {
        for (int v = 0; v < 8; ++v) {
          const int level = static_cast<int>(round_half_away(coef(u, v) / q(u, v)));
          deq(u, v) = level * q(u, v);
          if (u == 0 && v == 0) {
            dc_diffs.push_back(level - prev_dc);
            prev_dc = level;
          } else {
            ac.push_back(level);
          }
        }
      }
      recon.block(by, bx, 8, 8) = (d.transpose() * deq * d).array();
    }
  }
  PlaneCoding out;
  out.recon.resize(h, w);
  for (Eigen::Index i = 0; i < h; ++i) {
    for (Eigen::Index j = 0; j < w; ++j) {
      out.recon(i, j) = SampleTraits<std::uint8_t>::from_real(recon(i, j) + 128.0);
    }
  }
  out.bits = shannon_bits(dc_diffs) + shannon_bits(ac);
  return out;
}

}  // namespace

BaselineDctCodec::BaselineDctCodec(CodecSettings s) : settings_(std::move(s)), dct_(dct_matrix(8)) {
  if (!(settings_.strength >= 1.0 && settings_.strength <= 100.0)) {
    throw ContractError("baseline_dct: quality must lie in [1,100], got " +
                        std::to_string(settings_.strength));
  }
  quality_ = static_cast<int>(round_half_away(settings_.strength));
}

Table BaselineDctCodec::quant_table(int quality, bool chroma) {
  quality = std::clamp(quality, 1, 100);
  const int scale = quality < 50 ? 5000 / quality : 200 - 2 * quality;
  const int* base = chroma ? kChromaBase : kLumaBase;
  Table t;
  for (int i = 0; i < 64; ++i) t(i / 8, i % 8) = std::clamp((base[i] * scale + 50) / 100, 1, 255);
  return t;
}

CodecResult BaselineDctCodec::encode_decode(const Image8& img) const {
  require_colorspace(img.colorspace(), ColorSpace::kRGB, "baseline_dct encode");
  const Image8 yuv = chroma_downsample_420(rgb_to_yuv(img));
  const Table luma = quant_table(quality_, false);
  const Table chroma = quant_table(quality_, true);

  std::array<Plane<std::uint8_t>, 3> planes;
  double bits = 0.0;
  for (int c = 0; c < 3; ++c) {
    PlaneCoding pc = code_plane(yuv.plane(c), c == 0 ? luma : chroma, dct_);
    planes[c] = std::move(pc.recon);
    bits += pc.bits;
  }
  CodecResult r;
  r.decoded = yuv_to_rgb(chroma_upsample_420(Image8(std::move(planes), ColorSpace::kYUV420)));
  r.bits_y = static_cast<std::int64_t>(std::ceil(bits));
  r.bits_z = 0;
  r.height = img.height();
  r.width = img.width();
  return r;
}

}  // namespace jaif
