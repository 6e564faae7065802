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

#include "jaif/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "jaif/color.hpp"

namespace jaif {
namespace {

// Bilinearly interpolated random lattice with the given cell size.
PlaneD value_noise(int w, int h, double cell, std::mt19937_64& rng) {
  const int gw = static_cast<int>(std::ceil(w / cell)) + 2;
  const int gh = static_cast<int>(std::ceil(h / cell)) + 2;
  std::normal_distribution<double> n01(0.0, 1.0);
  PlaneD grid(gh, gw);
  for (Eigen::Index i = 0; i < grid.size(); ++i) grid(i) = n01(rng);
  PlaneD out(h, w);
  for (int y = 0; y < h; ++y) {
    const double gy = y / cell;
    const int i0 = static_cast<int>(gy);
    const double fy = gy - i0;
    const double sy = fy * fy * (3 - 2 * fy);
    for (int x = 0; x < w; ++x) {
      const double gx = x / cell;
      const int j0 = static_cast<int>(gx);
      const double fx = gx - j0;
      const double sx = fx * fx * (3 - 2 * fx);
      const double top = (1 - sx) * grid(i0, j0) + sx * grid(i0, j0 + 1);
      const double bot = (1 - sx) * grid(i0 + 1, j0) + sx * grid(i0 + 1, j0 + 1);
      out(y, x) = (1 - sy) * top + sy * bot;
    }
  }
  return out;
}

PlaneD octaves(int w, int h, double base_cell, int count, double persistence,
               std::mt19937_64& rng) {
  PlaneD acc = PlaneD::Zero(h, w);
  double amp = 1.0, cell = base_cell;
  for (int o = 0; o < count && cell >= 1.0; ++o) {
    acc += amp * value_noise(w, h, cell, rng);
    amp *= persistence;
    cell /= 2.0;
  }
  return acc;
}

// Bilinear demosaicing of an RGGB mosaic with mirrored borders.
Image8 demosaic_bilinear(const PlaneD& mosaic) {
  const int h = static_cast<int>(mosaic.rows()), w = static_cast<int>(mosaic.cols());
  const auto at = [&](int y, int x) {
    y = y < 0 ? -y : (y >= h ? 2 * h - 2 - y : y);
    x = x < 0 ? -x : (x >= w ? 2 * w - 2 - x : x);
    return mosaic(y, x);
  };
  Image8 img(w, h, ColorSpace::kRGB);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double c = at(y, x);
      const double cross = (at(y - 1, x) + at(y + 1, x) + at(y, x - 1) + at(y, x + 1)) / 4.0;
      const double diag =
          (at(y - 1, x - 1) + at(y - 1, x + 1) + at(y + 1, x - 1) + at(y + 1, x + 1)) / 4.0;
      const double horiz = (at(y, x - 1) + at(y, x + 1)) / 2.0;
      const double vert = (at(y - 1, x) + at(y + 1, x)) / 2.0;
      double r, g, b;
      if (y % 2 == 0 && x % 2 == 0) {
        r = c, g = cross, b = diag;
      } else if (y % 2 == 1 && x % 2 == 1) {
        r = diag, g = cross, b = c;
      } else if (y % 2 == 0) {  // green on a red row
        r = horiz, g = c, b = vert;
      } else {  // green on a blue row
        r = vert, g = c, b = horiz;
      }
      img.plane(0)(y, x) = SampleTraits<std::uint8_t>::from_real(r);
      img.plane(1)(y, x) = SampleTraits<std::uint8_t>::from_real(g);
      img.plane(2)(y, x) = SampleTraits<std::uint8_t>::from_real(b);
    }
  }
  return img;
}

}  // namespace

Image8 textured_image(int width, int height, std::uint64_t seed, const TextureOptions& opt) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 12345);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  const double luma_persist = 0.55 + 0.2 * u01(rng);
  PlaneD luma = 28.0 * octaves(width, height, 96.0, 7, luma_persist, rng);
  PlaneD cb = 10.0 * octaves(width, height, 128.0, 5, 0.5, rng);
  PlaneD cr = 10.0 * octaves(width, height, 128.0, 5, 0.5, rng);

  // Global illumination gradient and overall tint.
  const double gx = (u01(rng) - 0.5) * 60.0 / width;
  const double gy = (u01(rng) - 0.5) * 60.0 / height;
  const double base = 90.0 + 70.0 * u01(rng);
  const double tint_b = (u01(rng) - 0.5) * 30.0;
  const double tint_r = (u01(rng) - 0.5) * 30.0;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) luma(y, x) += base + gx * x + gy * y;
  }
  cb += tint_b;
  cr += tint_r;

  // Soft-edged colored discs carry textured interiors.
  for (int s = 0; s < opt.shapes; ++s) {
    const double cx = u01(rng) * width, cy = u01(rng) * height;
    const double rad = (0.05 + 0.2 * u01(rng)) * std::min(width, height);
    const double dl = (u01(rng) - 0.5) * 80.0;
    const double dcb = (u01(rng) - 0.5) * 60.0;
    const double dcr = (u01(rng) - 0.5) * 60.0;
    const double soft = 1.0 + 3.0 * u01(rng);
    const PlaneD tex = 10.0 * value_noise(width, height, 3.0 + 6.0 * u01(rng), rng);
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        const double d = std::hypot(x - cx, y - cy) - rad;
        const double a = 1.0 / (1.0 + std::exp(d / soft));
        if (a < 1e-4) continue;
        luma(y, x) += a * (dl + tex(y, x));
        cb(y, x) += a * dcb;
        cr(y, x) += a * dcr;
      }
    }
  }

  // Sharp chroma-only structure, independent between the two chroma planes.
  for (PlaneD* plane : {&cb, &cr}) {
    *plane += opt.chroma_detail * value_noise(width, height, 2.0 + 2.0 * u01(rng), rng);
    for (int s = 0; s < opt.chroma_shapes; ++s) {
      const double cx = u01(rng) * width, cy = u01(rng) * height;
      const double rad = (0.01 + 0.06 * u01(rng)) * std::min(width, height);
      const double delta = (u01(rng) - 0.5) * 50.0;
      const double soft = opt.chroma_edge_softness * (0.5 + u01(rng));
      const int x0 = std::max(0, int(cx - rad - 10 * soft - 2));
      const int x1 = std::min(width, int(cx + rad + 10 * soft + 2));
      const int y0 = std::max(0, int(cy - rad - 10 * soft - 2));
      const int y1 = std::min(height, int(cy + rad + 10 * soft + 2));
      for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) {
          const double d = std::hypot(x - cx, y - cy) - rad;
          (*plane)(y, x) += delta / (1.0 + std::exp(d / soft));
        }
      }
    }
  }

  // Camera model: RGGB mosaic sampling with sensor noise, then bilinear
  // demosaicing. R and B are reconstructed from disjoint lattices.
  const double sigma =
      std::max(0.0, opt.sensor_noise + opt.sensor_noise_jitter * (2.0 * u01(rng) - 1.0));
  std::normal_distribution<double> noise(0.0, sigma);
  const YuvMatrix m = YuvMatrix::bt601();
  PlaneD mosaic(height, width);
  Image8 direct(width, height, ColorSpace::kRGB);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double l = luma(y, x), b = cb(y, x), r = cr(y, x);
      const double rv = l + 2.0 * (1.0 - m.kr) * r;
      const double bv = l + 2.0 * (1.0 - m.kb) * b;
      const double gv = (l - m.kr * rv - m.kb * bv) / m.kg();
      if (!opt.camera) {
        direct.plane(0)(y, x) = SampleTraits<std::uint8_t>::from_real(rv);
        direct.plane(1)(y, x) = SampleTraits<std::uint8_t>::from_real(gv);
        direct.plane(2)(y, x) = SampleTraits<std::uint8_t>::from_real(bv);
        continue;
      }
      const int site = (y % 2) * 2 + (x % 2);  // 0 R, 1/2 G, 3 B
      const double v = site == 0 ? rv : (site == 3 ? bv : gv);
      mosaic(y, x) = std::clamp(v + noise(rng), 0.0, 255.0);
    }
  }
  return opt.camera ? demosaic_bilinear(mosaic) : direct;
}

Image8 noise_image(int width, int height, std::uint64_t seed, int lo, int hi) {
  std::mt19937_64 rng(seed ^ 0xD1B54A32D192ED03ULL);
  std::uniform_int_distribution<int> dist(lo, hi);
  Image8 img(width, height, ColorSpace::kRGB);
  for (int c = 0; c < 3; ++c) {
    for (Eigen::Index i = 0; i < img.plane(c).size(); ++i) {
      img.plane(c)(i) = static_cast<std::uint8_t>(dist(rng));
    }
  }
  return img;
}

Image8 decoder_synthesized_image(const SimLatentCodec& decoder, int width, int height,
                                 std::uint64_t seed, double jitter) {
  // Latents drawn from a procedural scene prior (analysis of a fresh scene
  // rendered without the camera stage), then jittered so nothing sits on the
  // decoder's integer grid. No quantizer is involved.
  TextureOptions clean;
  clean.camera = false;
  LatentTensor y = decoder.analyze(textured_image(width, height, seed ^ 0x5EEDULL, clean));
  std::mt19937_64 rng(seed * 0x2545F4914F6CDD1DULL + 7);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (float& v : y.values()) {
    const double e = u(rng);
    v += static_cast<float>(-jitter * std::copysign(std::log(1.0 - 2.0 * std::abs(e)), e));
  }
  return decoder.synthesize(y, width, height);
}

Image8 resize_bilinear(const Image8& img, double factor) {
  require_colorspace(img.colorspace(), ColorSpace::kRGB, "resize");
  if (!(factor > 0.0)) throw ContractError("resize: factor must be positive");
  const int w = std::max(1, static_cast<int>(std::lround(img.width() * factor)));
  const int h = std::max(1, static_cast<int>(std::lround(img.height() * factor)));
  const double sx = double(img.width()) / w, sy = double(img.height()) / h;
  Image8 out(w, h, ColorSpace::kRGB);
  for (int y = 0; y < h; ++y) {
    const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, img.height() - 1.0);
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, img.height() - 1);
    const double ay = fy - y0;
    for (int x = 0; x < w; ++x) {
      const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, img.width() - 1.0);
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, img.width() - 1);
      const double ax = fx - x0;
      for (int c = 0; c < 3; ++c) {
        const auto& p = img.plane(c);
        const double top = (1 - ax) * p(y0, x0) + ax * p(y0, x1);
        const double bot = (1 - ax) * p(y1, x0) + ax * p(y1, x1);
        out.plane(c)(y, x) = SampleTraits<std::uint8_t>::from_real((1 - ay) * top + ay * bot);
      }
    }
  }
  return out;
}

}  // namespace jaif
