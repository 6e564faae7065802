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

#ifndef JAIF_FOREST_HPP_
#define JAIF_FOREST_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace jaif {

using FeatureMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class SplitFeatures { kSqrt, kAll, kFixed };

std::string_view to_string(SplitFeatures s);
SplitFeatures parse_split_features(std::string_view s);

struct ForestConfig {
  int n_trees = 500;
  std::optional<int> max_depth;
  SplitFeatures features_per_split = SplitFeatures::kSqrt;
  int fixed_features = 1;  // used with kFixed
  int min_leaf = 1;
  std::uint64_t seed = 0;
  bool bootstrap = true;
  // Training threads; 0 = hardware concurrency. Does not affect the model.
  int workers = 0;

  void validate() const;
};

// Flat binary tree. Node 0 is the root; leaves have feature == -1 and carry a
// class distribution in proba.
struct DecisionTree {
  std::vector<int> feature;
  std::vector<double> threshold;
  std::vector<int> left;
  std::vector<int> right;
  std::vector<std::vector<double>> proba;

  int size() const { return static_cast<int>(feature.size()); }
  // Index of the leaf reached by x. Goes left when x[feature] <= threshold.
  int leaf_for(const double* x) const;
};

struct ForestModel {
  std::vector<DecisionTree> trees;
  ForestConfig config;
  int feature_dim = 0;
  std::vector<int> classes;  // sorted class labels; columns of proba
};

struct Prediction {
  std::vector<int> labels;
  Eigen::MatrixXd proba;  // n x classes
};

// Bootstrap-sampled CART trees with Gini impurity. Split ties go to the lowest
// feature index, then the lowest threshold. Deterministic for a given seed
// regardless of worker count.
ForestModel rf_train(const FeatureMatrix& x, const std::vector<int>& y, const ForestConfig& config);

// Majority vote over trees (ties to the lowest class); proba is the mean of
// leaf distributions.
Prediction rf_predict(const ForestModel& model, const FeatureMatrix& x);

double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth);

// Versioned JSON model file; see docs/model_format.md.
std::string model_to_json(const ForestModel& model);
ForestModel model_from_json(const std::string& text);
void model_save(const ForestModel& model, const std::filesystem::path& path);
ForestModel model_load(const std::filesystem::path& path);

inline constexpr int kModelFormatVersion = 1;

}  // namespace jaif

#endif  // JAIF_FOREST_HPP_
