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

#include "jaif/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <unsupported/Eigen/FFT>

#include "jaif/error.hpp"

namespace jaif {

Eigen::ArrayXXd luma_plane(const Image8& img, YuvMatrix m) {
  require_colorspace(img.colorspace(), ColorSpace::kRGB, "luma_plane");
  return m.kr * img.plane(0).cast<double>() + m.kg() * img.plane(1).cast<double>() +
         m.kb * img.plane(2).cast<double>();
}

Eigen::ArrayXXd centered_magnitude(const Eigen::ArrayXXd& plane) {
  const Eigen::Index h = plane.rows(), w = plane.cols();
  Eigen::FFT<double> fft;
  Eigen::MatrixXcd rows(h, w);
  std::vector<double> in(w);
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < h; ++i) {
    for (Eigen::Index j = 0; j < w; ++j) in[j] = plane(i, j);
    fft.fwd(out, in);
    for (Eigen::Index j = 0; j < w; ++j) rows(i, j) = out[j];
  }
  std::vector<std::complex<double>> col(h), col_out;
  Eigen::ArrayXXd mag(h, w);
  for (Eigen::Index j = 0; j < w; ++j) {
    for (Eigen::Index i = 0; i < h; ++i) col[i] = rows(i, j);
    fft.fwd(col_out, col);
    for (Eigen::Index i = 0; i < h; ++i) {
      mag((i + h / 2) % h, (j + w / 2) % w) = std::abs(col_out[i]);
    }
  }
  return mag;
}

Eigen::ArrayXXd avg_fourier_spectrum(const std::vector<Image8>& images, const SpectrumOptions& opt) {
  if (images.empty()) throw ContractError("avg_fourier_spectrum: no images");
  const int w = images[0].width(), h = images[0].height();
  Eigen::ArrayXXd acc = Eigen::ArrayXXd::Zero(h, w);
  for (const Image8& img : images) {
    if (img.width() != w || img.height() != h) {
      throw ContractError("avg_fourier_spectrum: image " + std::to_string(img.width()) + "x" +
                          std::to_string(img.height()) + " differs from " + std::to_string(w) +
                          "x" + std::to_string(h));
    }
    Eigen::ArrayXXd y = luma_plane(img, opt.matrix);
    if (opt.highpass) y = highpass_residual(y, opt.filter).values;
    const Eigen::ArrayXXd mag = centered_magnitude(y);
    acc += opt.log_scale ? Eigen::ArrayXXd(mag.log1p()) : mag;
  }
  acc /= double(images.size());
  if (opt.normalize) {
    const double peak = acc.maxCoeff();
    if (peak > 0.0) acc /= peak;
  }
  return acc;
}

double grid_peak_ratio(const Eigen::ArrayXXd& s, int period) {
  if (period < 2) throw ContractError("grid_peak_ratio: period must be >= 2");
  const Eigen::Index h = s.rows(), w = s.cols();
  if (h < 2 * period || w < 2 * period) throw ContractError("grid_peak_ratio: spectrum too small");
  const Eigen::Index cy = h / 2, cx = w / 2;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> near = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(h, w, false);
  double peak_sum = 0.0;
  int peaks = 0;
  for (int ky = -period / 2; ky <= period / 2; ++ky) {
    for (int kx = -period / 2; kx <= period / 2; ++kx) {
      const Eigen::Index y = cy + std::lround(double(ky) * h / period);
      const Eigen::Index x = cx + std::lround(double(kx) * w / period);
      if (y < 0 || y >= h || x < 0 || x >= w) continue;
      for (Eigen::Index dy = -1; dy <= 1; ++dy) {
        for (Eigen::Index dx = -1; dx <= 1; ++dx) {
          const Eigen::Index yy = y + dy, xx = x + dx;
          if (yy >= 0 && yy < h && xx >= 0 && xx < w) near(yy, xx) = true;
        }
      }
      if (ky == 0 && kx == 0) continue;
      peak_sum += s(y, x);
      ++peaks;
    }
  }
  std::vector<double> background;
  background.reserve(static_cast<std::size_t>(h * w));
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      if (!near(y, x)) background.push_back(s(y, x));
    }
  }
  auto mid = background.begin() + background.size() / 2;
  std::nth_element(background.begin(), mid, background.end());
  if (*mid <= 0.0) return peaks && peak_sum > 0.0 ? INFINITY : 0.0;
  return (peak_sum / peaks) / *mid;
}

}  // namespace jaif
