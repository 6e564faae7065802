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

#include "jaif/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

#include "jaif/error.hpp"
#include "settings_json.hpp"

namespace jaif {

using detail::Json;

namespace {

Json config_json(const ExperimentConfig& c) {
  Json j;
  j["cue"] = std::string(to_string(c.cue));
  j["classes"] = c.classes;
  j["features"] = detail::feature_settings_json(c.features, c.cue);
  j["forest"] = detail::forest_config_json(c.forest);
  j["train_on_postprocessed"] = c.train_on_postprocessed;
  return j;
}

bool is_attacked(const ManifestEntry& e) {
  return !e.provenance.postprocessing.empty() && e.provenance.postprocessing != "preprocess";
}

}  // namespace

std::string experiment_config_to_json(const ExperimentConfig& c) { return config_json(c).dump(1) + "\n"; }

ExperimentConfig experiment_config_from_json(const std::string& text) {
  ExperimentConfig c;
  try {
    const Json j = Json::parse(text);
    c.cue = parse_cue(j.at("cue").get<std::string>());
    c.classes = j.at("classes").get<std::vector<std::string>>();
    if (j.contains("features")) c.features = detail::feature_settings_from(j["features"], c.cue);
    if (j.contains("forest")) c.forest = detail::forest_config_from(j["forest"]);
    c.train_on_postprocessed = j.value("train_on_postprocessed", false);
  } catch (const nlohmann::json::exception& ex) {
    throw ContractError(std::string("malformed experiment config: ") + ex.what());
  }
  return c;
}

std::string config_hash(const ExperimentConfig& c) { return detail::fnv1a_hex(config_json(c).dump()); }

ExperimentReport run_detection_experiment(const DatasetManifest& manifest,
                                          const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  manifest.validate(true);
  config.forest.validate();
  if (config.classes.size() < 2) throw ContractError("experiment needs at least two classes");
  std::map<std::string, int> class_of;
  for (std::size_t k = 0; k < config.classes.size(); ++k) {
    if (std::find(manifest.labels.begin(), manifest.labels.end(), config.classes[k]) ==
        manifest.labels.end()) {
      throw ContractError("class '" + config.classes[k] + "' is not a manifest label");
    }
    if (!class_of.emplace(config.classes[k], static_cast<int>(k)).second) {
      throw ContractError("class '" + config.classes[k] + "' listed twice");
    }
  }

  ExperimentReport report;
  report.cue = std::string(to_string(config.cue));
  report.config_json = config_json(config).dump();
  report.config_hash = config_hash(config);
  report.manifest_hash = detail::fnv1a_hex(manifest_to_json(manifest));
  report.classes = config.classes;

  std::vector<std::size_t> train, test;
  for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
    const ManifestEntry& e = manifest.entries[i];
    if (!class_of.count(e.label)) continue;
    switch (e.split) {
      case Split::kTrain:
        if (config.train_on_postprocessed || !is_attacked(e)) train.push_back(i);
        break;
      case Split::kVal: ++report.val_count; break;
      case Split::kTest: test.push_back(i); break;
    }
  }
  if (train.empty()) throw DataError("experiment: empty train split");
  if (test.empty()) throw DataError("experiment: empty test split");
  report.train_count = train.size();
  report.test_count = test.size();

  std::vector<std::size_t> all = train;
  all.insert(all.end(), test.begin(), test.end());
  const FeatureSet features = extract_feature_set(manifest, all, config.cue, config.features, config.workers);
  if (config.cue != Cue::kColor) {
    report.extractor_deterministic = make_codec(config.features.extractor)->deterministic();
  }
  if (!config.features_out.empty()) {
    write_feature_set(features, config.features_out);
    report.feature_file = config.features_out.string();
    report.sidecar_file = sidecar_path(config.features_out).string();
  }

  const FeatureMatrix x = feature_matrix(features);
  const FeatureMatrix x_train = x.topRows(train.size());
  const FeatureMatrix x_test = x.bottomRows(test.size());
  std::vector<int> y_train;
  for (std::size_t i : train) y_train.push_back(class_of.at(manifest.entries[i].label));
  ForestConfig fc = config.forest;
  fc.workers = config.workers;
  const ForestModel model = rf_train(x_train, y_train, fc);
  const Prediction pred = rf_predict(model, x_test);

  report.overall.key = "overall";
  std::map<std::string, std::size_t> cond_index;
  report.per_class.resize(config.classes.size());
  for (std::size_t k = 0; k < config.classes.size(); ++k) {
    report.per_class[k].key = config.classes[k];
    report.per_class[k].label = config.classes[k];
  }
  std::map<double, RdPairRow> pairs;
  for (std::size_t t = 0; t < test.size(); ++t) {
    const ManifestEntry& e = manifest.entries[test[t]];
    const int truth = class_of.at(e.label);
    const bool ok = pred.labels[t] == truth;
    auto add = [&](AccuracyCell& c) {
      ++c.n;
      c.correct += ok;
    };
    add(report.overall);
    add(report.per_class[truth]);
    const std::string cond = e.condition();
    auto [it, inserted] = cond_index.emplace(cond, report.per_condition.size());
    if (inserted) report.per_condition.push_back({cond, e.label, 0, 0});
    add(report.per_condition[it->second]);

    const Provenance& p = e.provenance;
    if (config.cue == Cue::kRd && !is_attacked(e) && !p.codec_id.empty()) {
      if (p.b0) {
        RdPairRow& row = pairs[*p.b0];
        row.b0 = *p.b0;
        row.b1 = p.b1;
        ++row.double_n;
        row.double_correct += ok;
      } else if (p.strength) {
        RdPairRow& row = pairs[*p.strength];
        row.b0 = *p.strength;
        ++row.single_n;
        row.single_correct += ok;
      }
    }
  }
  report.per_class.erase(std::remove_if(report.per_class.begin(), report.per_class.end(),
                                        [](const AccuracyCell& c) { return c.n == 0; }),
                         report.per_class.end());
  for (auto& [b0, row] : pairs) report.rd_pairs.push_back(row);
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace jaif
