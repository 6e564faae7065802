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

#ifndef JAIF_METRICS_HPP_
#define JAIF_METRICS_HPP_

#include <cmath>
#include <string>

#include "jaif/image.hpp"

namespace jaif {

// PSNR reported for identical inputs and the upper bound of every PSNR value,
// so feature vectors stay finite.
inline constexpr double kPsnrCapDb = 100.0;

template <typename Scalar>
double mse(const ImageBuffer<Scalar>& a, const ImageBuffer<Scalar>& b) {
  if (a.width() != b.width() || a.height() != b.height() || a.colorspace() != b.colorspace()) {
    throw ContractError("psnr: dimension mismatch " + std::to_string(a.width()) + "x" +
                        std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                        std::to_string(b.height()));
  }
  double sum = 0.0;
  for (int c = 0; c < 3; ++c) {
    sum += (a.plane(c).template cast<double>() - b.plane(c).template cast<double>())
               .square()
               .sum();
  }
  return sum / static_cast<double>(a.sample_count());
}

inline double psnr_from_mse(double mse_value, double peak) {
  if (mse_value <= 0.0) return kPsnrCapDb;
  return std::min(kPsnrCapDb, 10.0 * std::log10(peak * peak / mse_value));
}

// MSE is taken over all samples of all channels.
template <typename Scalar>
double psnr(const ImageBuffer<Scalar>& a, const ImageBuffer<Scalar>& b) {
  return psnr_from_mse(mse(a, b), SampleTraits<Scalar>::kMax);
}

}  // namespace jaif

#endif  // JAIF_METRICS_HPP_
