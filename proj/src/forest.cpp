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

#include "jaif/forest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "jaif/error.hpp"

namespace jaif {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double score = -1.0;  // sum over children of sum_k count_k^2 / n_child
};

class TreeBuilder {
 public:
  TreeBuilder(const FeatureMatrix& x, const std::vector<int>& y, int n_classes,
              const ForestConfig& cfg, int mtry, std::uint64_t seed)
      : x_(x), y_(y), k_(n_classes), cfg_(cfg), mtry_(mtry), rng_(seed) {}

  DecisionTree build() {
    const int n = static_cast<int>(x_.rows());
    std::vector<int> idx(n);
    if (cfg_.bootstrap) {
      std::uniform_int_distribution<int> pick(0, n - 1);
      for (int& i : idx) i = pick(rng_);
    } else {
      std::iota(idx.begin(), idx.end(), 0);
    }
    features_.resize(static_cast<std::size_t>(x_.cols()));
    grow(idx, 0);
    return std::move(tree_);
  }

 private:
  int add_node() {
    tree_.feature.push_back(-1);
    tree_.threshold.push_back(0.0);
    tree_.left.push_back(-1);
    tree_.right.push_back(-1);
    tree_.proba.emplace_back();
    return tree_.size() - 1;
  }

  int grow(std::vector<int>& idx, int depth) {
    const int node = add_node();
    std::vector<double> counts(k_, 0.0);
    for (int i : idx) counts[y_[i]] += 1.0;
    const int n = static_cast<int>(idx.size());
    const bool pure = std::count_if(counts.begin(), counts.end(), [](double c) { return c > 0; }) <= 1;
    const bool depth_done = cfg_.max_depth && depth >= *cfg_.max_depth;
    Split best;
    if (!pure && !depth_done && n >= 2 * cfg_.min_leaf) best = find_split(idx, counts);
    if (best.feature < 0) {
      for (double& c : counts) c /= n;
      tree_.proba[node] = std::move(counts);
      return node;
    }
    std::vector<int> left, right;
    for (int i : idx) (x_(i, best.feature) <= best.threshold ? left : right).push_back(i);
    idx.clear();
    idx.shrink_to_fit();
    tree_.feature[node] = best.feature;
    tree_.threshold[node] = best.threshold;
    const int l = grow(left, depth + 1);
    tree_.left[node] = l;
    const int r = grow(right, depth + 1);
    tree_.right[node] = r;
    return node;
  }

  Split find_split(const std::vector<int>& idx, const std::vector<double>& total) {
    const int d = static_cast<int>(x_.cols());
    std::iota(features_.begin(), features_.end(), 0);
    Split best;
    for (int tried = 0; tried < d; ++tried) {
      std::uniform_int_distribution<int> pick(tried, d - 1);
      std::swap(features_[tried], features_[pick(rng_)]);
      evaluate(features_[tried], idx, total, best);
      // Keep drawing past mtry only while no valid split has been found.
      if (tried + 1 >= mtry_ && best.feature >= 0) break;
    }
    return best;
  }

  void evaluate(int f, const std::vector<int>& idx, const std::vector<double>& total,
                Split& best) {
    const int n = static_cast<int>(idx.size());
    order_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order_[i] = {x_(idx[i], f), y_[idx[i]]};
    std::sort(order_.begin(), order_.end());
    if (order_.front().first == order_.back().first) return;

    std::vector<double> left(k_, 0.0);
    double left_sq = 0.0;
    double right_sq = 0.0;
    for (double c : total) right_sq += c * c;
    std::vector<double> right = total;
    const int min_leaf = cfg_.min_leaf;
    for (int i = 0; i + 1 < n; ++i) {
      const int cls = order_[i].second;
      left_sq += 2.0 * left[cls] + 1.0;
      left[cls] += 1.0;
      right_sq -= 2.0 * right[cls] - 1.0;
      right[cls] -= 1.0;
      const double v = order_[i].first, next = order_[i + 1].first;
      if (v == next) continue;
      const int nl = i + 1, nr = n - nl;
      if (nl < min_leaf || nr < min_leaf) continue;
      const double score = left_sq / nl + right_sq / nr;
      double thr = 0.5 * (v + next);
      if (!(thr < next)) thr = v;
      const bool better =
          score > best.score ||
          (score == best.score &&
           (f < best.feature || (f == best.feature && thr < best.threshold)));
      if (better) best = {f, thr, score};
    }
  }

  const FeatureMatrix& x_;
  const std::vector<int>& y_;
  int k_;
  const ForestConfig& cfg_;
  int mtry_;
  std::mt19937_64 rng_;
  DecisionTree tree_;
  std::vector<int> features_;
  std::vector<std::pair<double, int>> order_;
};

int mtry_for(const ForestConfig& cfg, int d) {
  switch (cfg.features_per_split) {
    case SplitFeatures::kAll: return d;
    case SplitFeatures::kSqrt: return std::max(1, static_cast<int>(std::sqrt(double(d))));
    case SplitFeatures::kFixed: return std::clamp(cfg.fixed_features, 1, d);
  }
  return d;
}

}  // namespace

std::string_view to_string(SplitFeatures s) {
  switch (s) {
    case SplitFeatures::kSqrt: return "sqrt";
    case SplitFeatures::kAll: return "all";
    case SplitFeatures::kFixed: return "fixed";
  }
  return "sqrt";
}

SplitFeatures parse_split_features(std::string_view s) {
  if (s == "sqrt") return SplitFeatures::kSqrt;
  if (s == "all") return SplitFeatures::kAll;
  if (s == "fixed") return SplitFeatures::kFixed;
  throw ContractError("unknown features_per_split '" + std::string(s) + "'");
}

void ForestConfig::validate() const {
  if (n_trees < 1) throw ContractError("forest: n_trees must be >= 1");
  if (min_leaf < 1) throw ContractError("forest: min_leaf must be >= 1");
  if (max_depth && *max_depth < 0) throw ContractError("forest: max_depth must be >= 0");
  if (features_per_split == SplitFeatures::kFixed && fixed_features < 1) {
    throw ContractError("forest: fixed feature count must be >= 1");
  }
}

int DecisionTree::leaf_for(const double* x) const {
  int node = 0;
  while (feature[node] >= 0) node = x[feature[node]] <= threshold[node] ? left[node] : right[node];
  return node;
}

ForestModel rf_train(const FeatureMatrix& x, const std::vector<int>& y, const ForestConfig& cfg) {
  cfg.validate();
  const Eigen::Index n = x.rows();
  if (n < 2) throw ContractError("rf_train: need at least 2 samples");
  if (static_cast<Eigen::Index>(y.size()) != n) {
    throw ContractError("rf_train: label count does not match sample count");
  }
  if (x.cols() < 1) throw ContractError("rf_train: need at least one feature");
  if (!x.allFinite()) throw ContractError("rf_train: features contain non-finite values");

  ForestModel model;
  model.config = cfg;
  model.feature_dim = static_cast<int>(x.cols());
  model.classes = y;
  std::sort(model.classes.begin(), model.classes.end());
  model.classes.erase(std::unique(model.classes.begin(), model.classes.end()), model.classes.end());
  if (model.classes.size() < 2) throw ContractError("rf_train: need at least 2 classes");
  std::vector<int> yi(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    yi[i] = static_cast<int>(std::lower_bound(model.classes.begin(), model.classes.end(), y[i]) -
                             model.classes.begin());
  }

  const int k = static_cast<int>(model.classes.size());
  const int mtry = mtry_for(cfg, model.feature_dim);
  model.trees.resize(static_cast<std::size_t>(cfg.n_trees));
  const auto build = [&](int t) {
    const std::uint64_t seed = splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(t)));
    model.trees[t] = TreeBuilder(x, yi, k, cfg, mtry, seed).build();
  };

  int workers = cfg.workers > 0 ? cfg.workers : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, cfg.n_trees);
  if (workers == 1) {
    for (int t = 0; t < cfg.n_trees; ++t) build(t);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int t = w; t < cfg.n_trees; t += workers) build(t);
      });
    }
    for (auto& th : pool) th.join();
  }
  return model;
}

Prediction rf_predict(const ForestModel& model, const FeatureMatrix& x) {
  if (x.cols() != model.feature_dim) {
    throw ContractError("rf_predict: model expects " + std::to_string(model.feature_dim) +
                        " features, got " + std::to_string(x.cols()));
  }
  const int k = static_cast<int>(model.classes.size());
  Prediction p;
  p.proba = Eigen::MatrixXd::Zero(x.rows(), k);
  p.labels.resize(static_cast<std::size_t>(x.rows()));
  std::vector<int> votes(k);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    std::fill(votes.begin(), votes.end(), 0);
    const double* row = x.row(i).data();
    for (const auto& tree : model.trees) {
      const auto& leaf = tree.proba[tree.leaf_for(row)];
      int arg = 0;
      for (int c = 0; c < k; ++c) {
        p.proba(i, c) += leaf[c];
        if (leaf[c] > leaf[arg]) arg = c;
      }
      ++votes[arg];
    }
    p.proba.row(i) /= double(model.trees.size());
    p.labels[i] = model.classes[std::max_element(votes.begin(), votes.end()) - votes.begin()];
  }
  return p;
}

double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth) {
  if (predicted.size() != truth.size() || truth.empty()) {
    throw ContractError("accuracy: label vectors must be non-empty and equally long");
  }
  std::size_t ok = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) ok += predicted[i] == truth[i];
  return double(ok) / double(truth.size());
}

std::string model_to_json(const ForestModel& m) {
  nlohmann::ordered_json j;
  j["format"] = "jaif-forest";
  j["version"] = kModelFormatVersion;
  auto& c = j["config"];
  c["n_trees"] = m.config.n_trees;
  c["max_depth"] = m.config.max_depth ? nlohmann::ordered_json(*m.config.max_depth) : nlohmann::ordered_json();
  c["features_per_split"] = std::string(to_string(m.config.features_per_split));
  c["fixed_features"] = m.config.fixed_features;
  c["min_leaf"] = m.config.min_leaf;
  c["seed"] = m.config.seed;
  c["bootstrap"] = m.config.bootstrap;
  j["feature_dim"] = m.feature_dim;
  j["classes"] = m.classes;
  auto trees = nlohmann::ordered_json::array();
  for (const auto& t : m.trees) {
    nlohmann::ordered_json jt;
    jt["feature"] = t.feature;
    jt["threshold"] = t.threshold;
    jt["left"] = t.left;
    jt["right"] = t.right;
    jt["proba"] = t.proba;
    trees.push_back(std::move(jt));
  }
  j["trees"] = std::move(trees);
  return j.dump();
}

ForestModel model_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("corrupt model file: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "jaif-forest") {
      throw DataError("corrupt model file: not a jaif forest");
    }
    const int version = j.at("version").get<int>();
    if (version != kModelFormatVersion) {
      throw DataError("model file version " + std::to_string(version) +
                      " is not supported (expected " + std::to_string(kModelFormatVersion) + ")");
    }
    ForestModel m;
    const auto& c = j.at("config");
    m.config.n_trees = c.at("n_trees").get<int>();
    if (!c.at("max_depth").is_null()) m.config.max_depth = c.at("max_depth").get<int>();
    try {
      m.config.features_per_split = parse_split_features(c.at("features_per_split").get<std::string>());
    } catch (const ContractError& e) {
      throw DataError(std::string("corrupt model file: ") + e.what());
    }
    m.config.fixed_features = c.at("fixed_features").get<int>();
    m.config.min_leaf = c.at("min_leaf").get<int>();
    m.config.seed = c.at("seed").get<std::uint64_t>();
    m.config.bootstrap = c.at("bootstrap").get<bool>();
    m.feature_dim = j.at("feature_dim").get<int>();
    m.classes = j.at("classes").get<std::vector<int>>();
    const std::size_t k = m.classes.size();
    for (const auto& jt : j.at("trees")) {
      DecisionTree t;
      t.feature = jt.at("feature").get<std::vector<int>>();
      t.threshold = jt.at("threshold").get<std::vector<double>>();
      t.left = jt.at("left").get<std::vector<int>>();
      t.right = jt.at("right").get<std::vector<int>>();
      t.proba = jt.at("proba").get<std::vector<std::vector<double>>>();
      const int n = t.size();
      if (n == 0 || t.threshold.size() != std::size_t(n) || t.left.size() != std::size_t(n) ||
          t.right.size() != std::size_t(n) || t.proba.size() != std::size_t(n)) {
        throw DataError("corrupt model file: inconsistent tree arrays");
      }
      for (int i = 0; i < n; ++i) {
        if (t.feature[i] >= m.feature_dim) throw DataError("corrupt model file: split index");
        if (t.feature[i] >= 0) {
          if (t.left[i] <= i || t.left[i] >= n || t.right[i] <= i || t.right[i] >= n) {
            throw DataError("corrupt model file: child index");
          }
        } else {
          const double sum = std::accumulate(t.proba[i].begin(), t.proba[i].end(), 0.0);
          if (t.proba[i].size() != k || std::abs(sum - 1.0) > 1e-9) {
            throw DataError("corrupt model file: leaf distribution");
          }
        }
      }
      m.trees.push_back(std::move(t));
    }
    if (m.trees.size() != static_cast<std::size_t>(m.config.n_trees)) {
      throw DataError("corrupt model file: tree count does not match config");
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("corrupt model file: ") + e.what());
  }
}

void model_save(const ForestModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write model file '" + path.string() + "'");
  out << model_to_json(model) << '\n';
  if (!out) throw DataError("short write to model file '" + path.string() + "'");
}

ForestModel model_load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

}  // namespace jaif
