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

#ifndef JAIF_RESIDUAL_HPP_
#define JAIF_RESIDUAL_HPP_

#include <string>
#include <string_view>

#include <Eigen/Core>

#include "jaif/image.hpp"

namespace jaif {

enum class FilterId {
  kLaplacian3,  // [[0,-1,0],[-1,4,-1],[0,-1,0]]
  kKv5,         // 5x5 "KV" kernel common in steganalysis residuals, scaled by 1/12
};

std::string_view filter_name(FilterId id);
FilterId parse_filter(std::string_view name);
Eigen::ArrayXXd filter_kernel(FilterId id);

struct ResidualPlane {
  Eigen::ArrayXXd values;
  FilterId filter_id = FilterId::kLaplacian3;
};

// 2-D correlation with the filter kernel, borders symmetric-padded
// (x[-1] = x[0]). The plane must be at least as large as the kernel.
ResidualPlane highpass_residual(const Eigen::Ref<const Eigen::ArrayXXd>& plane,
                                FilterId filter_id = FilterId::kLaplacian3);

template <typename Scalar>
ResidualPlane highpass_residual(const Plane<Scalar>& plane,
                                FilterId filter_id = FilterId::kLaplacian3) {
  const Eigen::ArrayXXd p = plane.template cast<double>();
  return highpass_residual(Eigen::Ref<const Eigen::ArrayXXd>(p), filter_id);
}

}  // namespace jaif

#endif  // JAIF_RESIDUAL_HPP_
