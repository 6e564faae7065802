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

#include "jaif/manifest.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "jaif/error.hpp"

namespace jaif {

using nlohmann::ordered_json;

std::string_view to_string(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kVal: return "val";
    case Split::kTest: return "test";
  }
  return "train";
}

Split parse_split(std::string_view s) {
  if (s == "train") return Split::kTrain;
  if (s == "val") return Split::kVal;
  if (s == "test") return Split::kTest;
  throw ContractError("unknown split '" + std::string(s) + "'");
}

std::string format_strength(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string ManifestEntry::condition() const {
  std::string c = label;
  const Provenance& p = provenance;
  if (!p.generator_id.empty()) c += "/" + p.generator_id;
  if (p.b0 && p.b1) {
    c += "/" + p.codec_id + "@" + format_strength(*p.b0) + ">" + format_strength(*p.b1);
  } else if (!p.codec_id.empty() && p.strength) {
    c += "/" + p.codec_id + "@" + format_strength(*p.strength);
  }
  if (!p.postprocessing.empty()) c += "+" + p.postprocessing;
  return c;
}

std::filesystem::path DatasetManifest::resolve(const ManifestEntry& e) const {
  if (e.image_path.is_absolute()) return e.image_path;
  return root / e.image_path;
}

void DatasetManifest::validate(bool check_paths) const {
  if (version != kManifestVersion) {
    throw DataError("manifest version " + std::to_string(version) + " is not supported (expected " +
                    std::to_string(kManifestVersion) + ")");
  }
  const std::set<std::string> label_set(labels.begin(), labels.end());
  std::set<std::string> ids;
  std::map<std::string, std::set<Split>> source_splits;
  for (const auto& e : entries) {
    if (e.image_id.empty()) throw DataError("manifest entry without image_id");
    if (!ids.insert(e.image_id).second) {
      throw DataError("image_id '" + e.image_id + "' appears more than once");
    }
    if (!label_set.count(e.label)) {
      throw DataError("entry '" + e.image_id + "' has undeclared label '" + e.label + "'");
    }
    source_splits[e.source_id.empty() ? e.image_id : e.source_id].insert(e.split);
    if (check_paths && !std::filesystem::exists(resolve(e))) {
      throw DataError("entry '" + e.image_id + "': missing file " + resolve(e).string());
    }
  }
  for (const auto& [source, splits] : source_splits) {
    if (splits.size() > 1) {
      throw DataError("leakage: source '" + source + "' appears in more than one split");
    }
  }
}

namespace {

void put_opt(ordered_json& j, const char* key, const std::optional<double>& v) {
  if (v) j[key] = *v;
}

std::optional<double> get_opt(const ordered_json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<double>();
}

}  // namespace

std::string manifest_to_json(const DatasetManifest& m) {
  ordered_json j;
  j["format"] = "jaif-manifest";
  j["version"] = m.version;
  j["labels"] = m.labels;
  ordered_json list = ordered_json::array();
  for (const auto& e : m.entries) {
    ordered_json o;
    o["image_id"] = e.image_id;
    o["source_id"] = e.source_id;
    o["path"] = e.image_path.generic_string();
    o["label"] = e.label;
    o["split"] = std::string(to_string(e.split));
    const Provenance& p = e.provenance;
    if (!p.codec_id.empty()) o["codec_id"] = p.codec_id;
    put_opt(o, "strength", p.strength);
    put_opt(o, "b0", p.b0);
    put_opt(o, "b1", p.b1);
    if (!p.generator_id.empty()) o["generator_id"] = p.generator_id;
    if (!p.postprocessing.empty()) o["postprocessing"] = p.postprocessing;
    list.push_back(std::move(o));
  }
  j["entries"] = std::move(list);
  return j.dump(1) + "\n";
}

DatasetManifest manifest_from_json(const std::string& text, const std::filesystem::path& root) {
  DatasetManifest m;
  m.root = root;
  try {
    const ordered_json j = ordered_json::parse(text);
    if (j.value("format", "") != "jaif-manifest") throw DataError("not a jaif manifest");
    m.version = j.at("version").get<int>();
    if (m.version != kManifestVersion) {
      throw DataError("manifest version " + std::to_string(m.version) + " is not supported");
    }
    m.labels = j.at("labels").get<std::vector<std::string>>();
    for (const auto& o : j.at("entries")) {
      ManifestEntry e;
      e.image_id = o.at("image_id").get<std::string>();
      e.source_id = o.value("source_id", e.image_id);
      e.image_path = o.at("path").get<std::string>();
      e.label = o.at("label").get<std::string>();
      e.split = parse_split(o.at("split").get<std::string>());
      e.provenance.codec_id = o.value("codec_id", "");
      e.provenance.strength = get_opt(o, "strength");
      e.provenance.b0 = get_opt(o, "b0");
      e.provenance.b1 = get_opt(o, "b1");
      e.provenance.generator_id = o.value("generator_id", "");
      e.provenance.postprocessing = o.value("postprocessing", "");
      m.entries.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(std::string("malformed manifest: ") + ex.what());
  } catch (const ContractError& ex) {
    throw DataError(std::string("malformed manifest: ") + ex.what());
  }
  return m;
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read manifest " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  DatasetManifest m = manifest_from_json(ss.str(), path.parent_path());
  m.validate(true);
  return m;
}

void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write manifest " + path.string());
  out << manifest_to_json(manifest);
  if (!out) throw DataError("failed writing manifest " + path.string());
}

}  // namespace jaif
