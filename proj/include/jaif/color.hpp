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

#ifndef JAIF_COLOR_HPP_
#define JAIF_COLOR_HPP_

#include <algorithm>
#include <array>

#include "jaif/image.hpp"

namespace jaif {

// Full-range luma/chroma matrix given by its red and blue luma weights.
struct YuvMatrix {
  double kr;
  double kb;
  double kg() const { return 1.0 - kr - kb; }

  static constexpr YuvMatrix bt601() { return {0.299, 0.114}; }
  static constexpr YuvMatrix bt709() { return {0.2126, 0.0722}; }
};

template <typename Scalar>
ImageBuffer<Scalar> rgb_to_yuv(const ImageBuffer<Scalar>& img,
                               YuvMatrix m = YuvMatrix::bt601()) {
  require_colorspace(img.colorspace(), ColorSpace::kRGB, "rgb_to_yuv");
  using T = SampleTraits<Scalar>;
  const double off = T::kChromaOffset;
  const double kg = m.kg();
  const double cb_scale = 1.0 / (2.0 * (1.0 - m.kb));
  const double cr_scale = 1.0 / (2.0 * (1.0 - m.kr));
  ImageBuffer<Scalar> out(img.width(), img.height(), ColorSpace::kYUV444);
  const auto& r = img.plane(0);
  const auto& g = img.plane(1);
  const auto& b = img.plane(2);
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    const double rv = r(i), gv = g(i), bv = b(i);
    const double y = m.kr * rv + kg * gv + m.kb * bv;
    out.plane(0)(i) = T::from_real(y);
    out.plane(1)(i) = T::from_real((bv - y) * cb_scale + off);
    out.plane(2)(i) = T::from_real((rv - y) * cr_scale + off);
  }
  return out;
}

template <typename Scalar>
ImageBuffer<Scalar> yuv_to_rgb(const ImageBuffer<Scalar>& img,
                               YuvMatrix m = YuvMatrix::bt601()) {
  require_colorspace(img.colorspace(), ColorSpace::kYUV444, "yuv_to_rgb");
  using T = SampleTraits<Scalar>;
  const double off = T::kChromaOffset;
  const double kg = m.kg();
  const double cb_gain = 2.0 * (1.0 - m.kb);
  const double cr_gain = 2.0 * (1.0 - m.kr);
  ImageBuffer<Scalar> out(img.width(), img.height(), ColorSpace::kRGB);
  const auto& yp = img.plane(0);
  const auto& up = img.plane(1);
  const auto& vp = img.plane(2);
  for (Eigen::Index i = 0; i < yp.size(); ++i) {
    const double y = yp(i);
    const double cb = static_cast<double>(up(i)) - off;
    const double cr = static_cast<double>(vp(i)) - off;
    const double r = y + cr_gain * cr;
    const double b = y + cb_gain * cb;
    const double g = (y - m.kr * r - m.kb * b) / kg;
    out.plane(0)(i) = T::from_real(r);
    out.plane(1)(i) = T::from_real(g);
    out.plane(2)(i) = T::from_real(b);
  }
  return out;
}

// 2x2 box average; blocks on a bottom/right edge average the samples they have.
template <typename Scalar>
Plane<Scalar> downsample_plane_2x2(const Plane<Scalar>& p) {
  const Eigen::Index h = p.rows(), w = p.cols();
  Plane<Scalar> out((h + 1) / 2, (w + 1) / 2);
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
      const Eigen::Index bh = std::min<Eigen::Index>(2, h - 2 * i);
      const Eigen::Index bw = std::min<Eigen::Index>(2, w - 2 * j);
      const double mean =
          p.block(2 * i, 2 * j, bh, bw).template cast<double>().sum() / double(bh * bw);
      out(i, j) = SampleTraits<Scalar>::from_real(mean);
    }
  }
  return out;
}

// Bilinear upsampling by two with chroma sample (i,j) co-sited on luma (2i,2j).
// Positions past the last chroma sample replicate it.
template <typename Scalar>
Plane<Scalar> upsample_plane_2x(const Plane<Scalar>& p, Eigen::Index out_h, Eigen::Index out_w) {
  const Eigen::Index h = p.rows(), w = p.cols();
  Plane<Scalar> out(out_h, out_w);
  for (Eigen::Index y = 0; y < out_h; ++y) {
    const Eigen::Index i0 = std::min(y / 2, h - 1);
    const Eigen::Index i1 = std::min(i0 + 1, h - 1);
    const double fy = (y % 2 == 1 && y / 2 < h - 1) ? 0.5 : 0.0;
    for (Eigen::Index x = 0; x < out_w; ++x) {
      const Eigen::Index j0 = std::min(x / 2, w - 1);
      const Eigen::Index j1 = std::min(j0 + 1, w - 1);
      const double fx = (x % 2 == 1 && x / 2 < w - 1) ? 0.5 : 0.0;
      const double top = (1.0 - fx) * double(p(i0, j0)) + fx * double(p(i0, j1));
      const double bot = (1.0 - fx) * double(p(i1, j0)) + fx * double(p(i1, j1));
      out(y, x) = SampleTraits<Scalar>::from_real((1.0 - fy) * top + fy * bot);
    }
  }
  return out;
}

template <typename Scalar>
ImageBuffer<Scalar> chroma_downsample_420(const ImageBuffer<Scalar>& img) {
  require_colorspace(img.colorspace(), ColorSpace::kYUV444, "chroma_downsample_420");
  return ImageBuffer<Scalar>({img.plane(0), downsample_plane_2x2(img.plane(1)),
                              downsample_plane_2x2(img.plane(2))},
                             ColorSpace::kYUV420);
}

template <typename Scalar>
ImageBuffer<Scalar> chroma_upsample_420(const ImageBuffer<Scalar>& img) {
  require_colorspace(img.colorspace(), ColorSpace::kYUV420, "chroma_upsample_420");
  const Eigen::Index h = img.height(), w = img.width();
  return ImageBuffer<Scalar>(
      {img.plane(0), upsample_plane_2x(img.plane(1), h, w), upsample_plane_2x(img.plane(2), h, w)},
      ColorSpace::kYUV444);
}

}  // namespace jaif

#endif  // JAIF_COLOR_HPP_
