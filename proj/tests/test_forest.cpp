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

#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "jaif/forest.hpp"
#include "test_util.hpp"

using namespace jaif;

namespace {

struct Data {
  FeatureMatrix x;
  std::vector<int> y;
};

// Two isotropic Gaussian blobs whose means differ by 4 sigma in every coordinate.
Data blobs(int per_class, int dim, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  Data d;
  d.x.resize(2 * per_class, dim);
  for (int i = 0; i < 2 * per_class; ++i) {
    const int cls = i % 2;
    d.y.push_back(cls);
    for (int j = 0; j < dim; ++j) d.x(i, j) = n(rng) + cls * 4.0;
  }
  return d;
}

// Platform independent toy data for the golden file.
Data golden_data() {
  Data d;
  d.x.resize(24, 3);
  for (int i = 0; i < 24; ++i) {
    d.x(i, 0) = (i * 37 % 101) / 10.0;
    d.x(i, 1) = (i * 53 % 89) / 7.0;
    d.x(i, 2) = (i % 5) * 0.25;
    d.y.push_back((d.x(i, 0) + d.x(i, 1) > 10.0) ? 1 : (i % 7 == 0 ? 2 : 0));
  }
  return d;
}

ForestConfig golden_config() {
  ForestConfig c;
  c.n_trees = 3;
  c.max_depth = 4;
  c.seed = 2024;
  c.workers = 1;
  return c;
}

double held_out_accuracy(const ForestConfig& c) {
  const Data train = blobs(500, 10, 1), test = blobs(500, 10, 2);
  return accuracy(rf_predict(rf_train(train.x, train.y, c), test.x).labels, test.y);
}

}  // namespace

TEST_SUITE("classify") {

TEST_CASE("single tree separates signs") {
  FeatureMatrix x(40, 1);
  std::vector<int> y;
  for (int i = 0; i < 40; ++i) {
    x(i, 0) = (i - 19.5) * 0.37;
    y.push_back(x(i, 0) > 0 ? 1 : 0);
  }
  ForestConfig c;
  c.n_trees = 1;
  c.bootstrap = false;
  const ForestModel m = rf_train(x, y, c);
  CHECK(accuracy(rf_predict(m, x).labels, y) == 1.0);
}

TEST_CASE("fully grown tree reproduces its training points") {
  const Data d = blobs(60, 4, 3);
  ForestConfig c;
  c.n_trees = 1;
  c.bootstrap = false;
  c.features_per_split = SplitFeatures::kAll;
  CHECK(rf_predict(rf_train(d.x, d.y, c), d.x).labels == d.y);
}

TEST_CASE("gaussian blobs") {
  ForestConfig c;
  c.seed = 9;
  const double acc500 = held_out_accuracy(c);
  CHECK(acc500 >= 0.99);
  c.n_trees = 10;
  CHECK(acc500 >= held_out_accuracy(c) - 0.02);
}

TEST_CASE("probabilities sum to one and invariants hold") {
  const Data d = blobs(50, 5, 4);
  ForestConfig c;
  c.n_trees = 25;
  const ForestModel m = rf_train(d.x, d.y, c);
  const Prediction p = rf_predict(m, d.x);
  CHECK(p.proba.cols() == 2);
  for (Eigen::Index i = 0; i < p.proba.rows(); ++i) CHECK(p.proba.row(i).sum() == doctest::Approx(1.0));
  for (const auto& t : m.trees) {
    for (int i = 0; i < t.size(); ++i) {
      CHECK(t.feature[i] < m.feature_dim);
      if (t.feature[i] < 0) {
        double s = 0;
        for (double v : t.proba[i]) s += v;
        CHECK(std::abs(s - 1.0) <= 1e-9);
      }
    }
  }
}

TEST_CASE("training is deterministic under a seed") {
  const Data d = blobs(80, 6, 5);
  ForestConfig c;
  c.n_trees = 40;
  c.seed = 77;
  c.workers = 1;
  const std::string a = model_to_json(rf_train(d.x, d.y, c));
  c.workers = 4;
  CHECK(model_to_json(rf_train(d.x, d.y, c)) == a);
  c.seed = 78;
  CHECK(model_to_json(rf_train(d.x, d.y, c)) != a);
}

TEST_CASE("constant column is never used") {
  const Data d = blobs(60, 3, 6);
  FeatureMatrix wide(d.x.rows(), 4);
  wide.leftCols(3) = d.x;
  wide.col(3).setConstant(5.0);
  ForestConfig c;
  c.n_trees = 30;
  c.features_per_split = SplitFeatures::kAll;
  const Data t = blobs(40, 3, 7);
  FeatureMatrix twide(t.x.rows(), 4);
  twide.leftCols(3) = t.x;
  twide.col(3).setConstant(5.0);
  const ForestModel m = rf_train(wide, d.y, c);
  for (const auto& tree : m.trees) {
    for (int f : tree.feature) CHECK(f != 3);
  }
  CHECK(rf_predict(m, twide).labels == rf_predict(rf_train(d.x, d.y, c), t.x).labels);
}

TEST_CASE("contract errors") {
  const Data d = blobs(10, 2, 8);
  ForestConfig c;
  c.n_trees = 5;
  CHECK_THROWS_AS(rf_train(d.x, std::vector<int>(d.y.size(), 1), c), ContractError);
  FeatureMatrix bad = d.x;
  bad(3, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(rf_train(bad, d.y, c), ContractError);
  CHECK_THROWS_AS(rf_train(d.x.topRows(1), {0}, c), ContractError);
  CHECK_THROWS_AS(rf_train(d.x, {0, 1}, c), ContractError);
  const ForestModel m = rf_train(d.x, d.y, c);
  CHECK_THROWS_AS(rf_predict(m, FeatureMatrix::Zero(2, 3)), ContractError);
  ForestConfig z;
  z.n_trees = 0;
  CHECK_THROWS_AS(z.validate(), ContractError);
  z.n_trees = 1;
  z.min_leaf = 0;
  CHECK_THROWS_AS(z.validate(), ContractError);
  CHECK_THROWS_AS(parse_split_features("half"), ContractError);
}

TEST_CASE("model save and load") {
  test::TempDir dir("model");
  const Data d = blobs(50, 4, 9);
  ForestConfig c;
  c.n_trees = 20;
  c.seed = 123456789012345ULL;
  c.max_depth = 6;
  const ForestModel m = rf_train(d.x, d.y, c);
  model_save(m, dir / "m.json");
  const ForestModel back = model_load(dir / "m.json");
  CHECK(back.config.seed == 123456789012345ULL);
  CHECK(back.config.max_depth == 6);
  const Data probe = blobs(100, 4, 10);
  const Prediction a = rf_predict(m, probe.x), b = rf_predict(back, probe.x);
  CHECK(a.labels == b.labels);
  CHECK(a.proba == b.proba);
  CHECK(model_to_json(back) == model_to_json(m));

  const std::string text = model_to_json(m);
  std::ofstream(dir / "cut.json") << text.substr(0, text.size() / 2);
  CHECK_THROWS_AS(model_load(dir / "cut.json"), DataError);
  std::string v2 = text;
  v2.replace(v2.find("\"version\":1"), 11, "\"version\":2");
  CHECK_THROWS_AS(model_from_json(v2), DataError);
  CHECK_THROWS_AS(model_load(dir / "missing.json"), DataError);
}

TEST_CASE("golden model file") {
  const Data d = golden_data();
  const ForestModel m = rf_train(d.x, d.y, golden_config());
  std::ifstream in(std::string(JAIF_TEST_DATA) + "/golden_model.json");
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string golden = ss.str();
  while (!golden.empty() && golden.back() == '\n') golden.pop_back();
  CHECK(model_to_json(m) == golden);
  const ForestModel loaded = model_from_json(golden);
  CHECK(rf_predict(loaded, d.x).labels == rf_predict(m, d.x).labels);
  CHECK(loaded.classes == std::vector<int>{0, 1, 2});
}

}  // TEST_SUITE
