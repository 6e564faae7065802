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

#ifndef JAIF_SPECTRUM_HPP_
#define JAIF_SPECTRUM_HPP_

#include <vector>

#include <Eigen/Core>

#include "jaif/color.hpp"
#include "jaif/image.hpp"
#include "jaif/residual.hpp"

namespace jaif {

struct SpectrumOptions {
  bool highpass = true;
  FilterId filter = FilterId::kLaplacian3;
  // log(1+|F|) when set, |F| otherwise.
  bool log_scale = true;
  // Divide by the maximum so values lie in [0,1]; an all-zero map stays zero.
  bool normalize = true;
  YuvMatrix matrix = YuvMatrix::bt601();
};

// Luma plane in 8-bit units.
Eigen::ArrayXXd luma_plane(const Image8& img, YuvMatrix m = YuvMatrix::bt601());

// Centered 2-D DFT magnitude of a real plane; DC sits at (rows/2, cols/2).
Eigen::ArrayXXd centered_magnitude(const Eigen::ArrayXXd& plane);

// Mean over images of the centered spectrum of the luma (highpass) residual.
Eigen::ArrayXXd avg_fourier_spectrum(const std::vector<Image8>& images,
                                     const SpectrumOptions& opt = {});

// Mean value at the non-DC points of the frequency grid with spacing
// size/period, over the median of the points away from that grid.
double grid_peak_ratio(const Eigen::ArrayXXd& spectrum, int period);

}  // namespace jaif

#endif  // JAIF_SPECTRUM_HPP_
