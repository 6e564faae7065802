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

#ifndef JAIF_IMAGE_HPP_
#define JAIF_IMAGE_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <type_traits>

#include <Eigen/Core>

#include "jaif/error.hpp"

namespace jaif {

// Row-major so that plane(row, col) walks memory the way images are stored.
template <typename Scalar>
using Plane = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using PlaneD = Plane<double>;

enum class ColorSpace { kRGB, kYUV444, kYUV420 };

inline const char* to_string(ColorSpace cs) {
  switch (cs) {
    case ColorSpace::kRGB: return "RGB";
    case ColorSpace::kYUV444: return "YUV444";
    case ColorSpace::kYUV420: return "YUV420";
  }
  return "?";
}

// Round half away from zero. Shared by every quantizer in the library.
inline double round_half_away(double v) { return std::round(v); }

// Sample conventions per storage type: 8-bit integers span [0,255], floating
// point samples are unit scaled to [0,1].
template <typename Scalar, typename Enable = void>
struct SampleTraits;

template <>
struct SampleTraits<std::uint8_t> {
  static constexpr double kMax = 255.0;
  static constexpr double kChromaOffset = 128.0;
  static std::uint8_t from_real(double v) {
    return static_cast<std::uint8_t>(std::clamp(round_half_away(v), 0.0, 255.0));
  }
};

template <typename Scalar>
struct SampleTraits<Scalar, std::enable_if_t<std::is_floating_point_v<Scalar>>> {
  static constexpr double kMax = 1.0;
  static constexpr double kChromaOffset = 0.5;
  static Scalar from_real(double v) { return static_cast<Scalar>(std::clamp(v, 0.0, 1.0)); }
};

// Planar image. RGB and YUV444 planes share one size; YUV420 chroma planes are
// ceil(width/2) x ceil(height/2).
template <typename Scalar>
class ImageBuffer {
 public:
  using Traits = SampleTraits<Scalar>;
  using PlaneType = Plane<Scalar>;

  ImageBuffer() = default;

  ImageBuffer(int width, int height, ColorSpace cs) : width_(width), height_(height), cs_(cs) {
    if (width <= 0 || height <= 0) {
      throw ContractError("image dimensions must be positive, got " + std::to_string(width) + "x" +
                          std::to_string(height));
    }
    for (int c = 0; c < 3; ++c) {
      planes_[c] = PlaneType::Zero(plane_height(c), plane_width(c));
    }
  }

  ImageBuffer(std::array<PlaneType, 3> planes, ColorSpace cs)
      : width_(static_cast<int>(planes[0].cols())),
        height_(static_cast<int>(planes[0].rows())),
        cs_(cs),
        planes_(std::move(planes)) {
    if (width_ <= 0 || height_ <= 0) throw ContractError("image planes must be non-empty");
    for (int c = 1; c < 3; ++c) {
      if (planes_[c].cols() != plane_width(c) || planes_[c].rows() != plane_height(c)) {
        throw ContractError(std::string("plane size mismatch for ") + to_string(cs));
      }
    }
  }

  static ImageBuffer constant(int width, int height, ColorSpace cs, std::array<Scalar, 3> value) {
    ImageBuffer img(width, height, cs);
    for (int c = 0; c < 3; ++c) img.planes_[c].setConstant(value[c]);
    return img;
  }

  int width() const { return width_; }
  int height() const { return height_; }
  ColorSpace colorspace() const { return cs_; }
  bool empty() const { return width_ == 0; }

  int plane_width(int c) const {
    return (cs_ == ColorSpace::kYUV420 && c > 0) ? (width_ + 1) / 2 : width_;
  }
  int plane_height(int c) const {
    return (cs_ == ColorSpace::kYUV420 && c > 0) ? (height_ + 1) / 2 : height_;
  }

  const PlaneType& plane(int c) const { return planes_.at(c); }
  PlaneType& plane(int c) { return planes_.at(c); }
  const std::array<PlaneType, 3>& planes() const { return planes_; }

  std::size_t sample_count() const {
    std::size_t n = 0;
    for (const auto& p : planes_) n += static_cast<std::size_t>(p.size());
    return n;
  }

  bool operator==(const ImageBuffer& o) const {
    if (width_ != o.width_ || height_ != o.height_ || cs_ != o.cs_) return false;
    for (int c = 0; c < 3; ++c) {
      if (!(planes_[c] == o.planes_[c]).all()) return false;
    }
    return true;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  ColorSpace cs_ = ColorSpace::kRGB;
  std::array<PlaneType, 3> planes_;
};

using Image8 = ImageBuffer<std::uint8_t>;
using ImageF = ImageBuffer<float>;
using ImageD = ImageBuffer<double>;

inline void require_colorspace(ColorSpace have, ColorSpace want, const char* op) {
  if (have != want) {
    throw ContractError(std::string(op) + ": expected " + to_string(want) + " input, got " +
                        to_string(have));
  }
}

// Converts between sample depths, rescaling and (for 8-bit targets) rounding.
template <typename To, typename From>
ImageBuffer<To> convert_depth(const ImageBuffer<From>& img) {
  constexpr double scale = SampleTraits<To>::kMax / SampleTraits<From>::kMax;
  std::array<Plane<To>, 3> out;
  for (int c = 0; c < 3; ++c) {
    const auto& src = img.plane(c);
    out[c].resize(src.rows(), src.cols());
    for (Eigen::Index i = 0; i < src.size(); ++i) {
      out[c](i) = SampleTraits<To>::from_real(static_cast<double>(src(i)) * scale);
    }
  }
  return ImageBuffer<To>(std::move(out), img.colorspace());
}

template <typename Scalar>
PlaneD plane_as_double(const ImageBuffer<Scalar>& img, int c) {
  return img.plane(c).template cast<double>();
}

// Crop of w x h anchored at (floor((W-w)/2), floor((H-h)/2)).
template <typename Scalar>
ImageBuffer<Scalar> center_crop(const ImageBuffer<Scalar>& img, int w, int h) {
  if (img.colorspace() == ColorSpace::kYUV420) {
    throw ContractError("center_crop: YUV420 images cannot be cropped; upsample first");
  }
  if (w <= 0 || h <= 0 || img.width() < w || img.height() < h) {
    throw ContractError("center_crop: image " + std::to_string(img.width()) + "x" +
                        std::to_string(img.height()) + " is smaller than crop " +
                        std::to_string(w) + "x" + std::to_string(h));
  }
  const int x0 = (img.width() - w) / 2;
  const int y0 = (img.height() - h) / 2;
  std::array<Plane<Scalar>, 3> out;
  for (int c = 0; c < 3; ++c) out[c] = img.plane(c).block(y0, x0, h, w);
  return ImageBuffer<Scalar>(std::move(out), img.colorspace());
}

}  // namespace jaif

#endif  // JAIF_IMAGE_HPP_
