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

#include "jaif/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "jaif/error.hpp"
#include "jaif/manifest.hpp"

namespace jaif {

using Json = nlohmann::ordered_json;

ReportFormat parse_report_format(std::string_view s) {
  if (s == "json") return ReportFormat::kJson;
  if (s == "csv") return ReportFormat::kCsv;
  if (s == "markdown" || s == "md") return ReportFormat::kMarkdown;
  throw ContractError("unknown report format '" + std::string(s) + "'");
}

namespace {

Json cell_json(const AccuracyCell& c) {
  Json j;
  j["key"] = c.key;
  j["label"] = c.label;
  j["n"] = c.n;
  j["correct"] = c.correct;
  j["accuracy"] = c.accuracy();
  return j;
}

AccuracyCell cell_from(const Json& j) {
  AccuracyCell c;
  c.key = j.at("key").get<std::string>();
  c.label = j.at("label").get<std::string>();
  c.n = j.at("n").get<std::size_t>();
  c.correct = j.at("correct").get<std::size_t>();
  if (c.correct > c.n) throw DataError("report cell '" + c.key + "' has more hits than samples");
  return c;
}

std::string fixed(double v, int digits = 3) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

void require_samples(const ExperimentReport& r) {
  if (r.overall.n == 0 || r.test_count == 0) {
    throw ContractError("report has no test samples; refusing to emit an empty report");
  }
}

}  // namespace

std::string report_to_json(const ExperimentReport& r, bool include_runtime) {
  require_samples(r);
  Json j;
  j["format"] = "jaif-report";
  j["version"] = 1;
  j["cue"] = r.cue;
  j["config_hash"] = r.config_hash;
  j["manifest_hash"] = r.manifest_hash;
  j["config"] = Json::parse(r.config_json.empty() ? "{}" : r.config_json);
  j["classes"] = r.classes;
  j["counts"] = {{"train", r.train_count}, {"val", r.val_count}, {"test", r.test_count}};
  j["extractor_deterministic"] = r.extractor_deterministic;
  j["overall"] = cell_json(r.overall);
  Json pc = Json::array();
  for (const auto& c : r.per_class) pc.push_back(cell_json(c));
  j["per_class"] = pc;
  Json cond = Json::array();
  for (const auto& c : r.per_condition) cond.push_back(cell_json(c));
  j["per_condition"] = cond;
  if (!r.rd_pairs.empty()) {
    Json rows = Json::array();
    for (const auto& p : r.rd_pairs) {
      Json o;
      o["b0"] = p.b0;
      o["b1"] = p.b1 ? Json(*p.b1) : Json();
      o["single_n"] = p.single_n;
      o["single_correct"] = p.single_correct;
      o["double_n"] = p.double_n;
      o["double_correct"] = p.double_correct;
      rows.push_back(o);
    }
    j["rd_pairs"] = rows;
  }
  if (!r.feature_file.empty()) {
    j["features"] = {{"file", r.feature_file}, {"sidecar", r.sidecar_file}};
  }
  if (include_runtime) j["runtime_seconds"] = r.runtime_seconds;
  return j.dump(1) + "\n";
}

ExperimentReport report_from_json(const std::string& text) {
  ExperimentReport r;
  try {
    const Json j = Json::parse(text);
    if (j.value("format", "") != "jaif-report") throw DataError("not a jaif report");
    r.cue = j.at("cue").get<std::string>();
    r.config_hash = j.at("config_hash").get<std::string>();
    r.manifest_hash = j.at("manifest_hash").get<std::string>();
    r.config_json = j.at("config").dump();
    r.classes = j.at("classes").get<std::vector<std::string>>();
    r.train_count = j.at("counts").at("train").get<std::size_t>();
    r.val_count = j.at("counts").at("val").get<std::size_t>();
    r.test_count = j.at("counts").at("test").get<std::size_t>();
    r.extractor_deterministic = j.at("extractor_deterministic").get<bool>();
    r.overall = cell_from(j.at("overall"));
    for (const auto& c : j.at("per_class")) r.per_class.push_back(cell_from(c));
    for (const auto& c : j.at("per_condition")) r.per_condition.push_back(cell_from(c));
    if (j.contains("rd_pairs")) {
      for (const auto& o : j["rd_pairs"]) {
        RdPairRow p;
        p.b0 = o.at("b0").get<double>();
        if (!o.at("b1").is_null()) p.b1 = o.at("b1").get<double>();
        p.single_n = o.at("single_n").get<std::size_t>();
        p.single_correct = o.at("single_correct").get<std::size_t>();
        p.double_n = o.at("double_n").get<std::size_t>();
        p.double_correct = o.at("double_correct").get<std::size_t>();
        r.rd_pairs.push_back(p);
      }
    }
    if (j.contains("features")) {
      r.feature_file = j["features"].at("file").get<std::string>();
      r.sidecar_file = j["features"].at("sidecar").get<std::string>();
    }
    r.runtime_seconds = j.value("runtime_seconds", 0.0);
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(std::string("corrupt report: ") + ex.what());
  }
  return r;
}

std::string report_to_csv(const ExperimentReport& r) {
  require_samples(r);
  std::ostringstream out;
  out << "cue,config_hash,section,key,label,n,correct,accuracy\n";
  auto row = [&](const char* section, const AccuracyCell& c) {
    out << r.cue << ',' << r.config_hash << ',' << section << ',' << c.key << ',' << c.label << ','
        << c.n << ',' << c.correct << ',' << fixed(c.accuracy(), 6) << '\n';
  };
  row("overall", r.overall);
  for (const auto& c : r.per_class) row("class", c);
  for (const auto& c : r.per_condition) row("condition", c);
  for (const auto& p : r.rd_pairs) {
    const std::string key = format_strength(p.b0);
    if (p.single_n) row("rd_single", {key, "", p.single_n, p.single_correct});
    if (p.double_n) row("rd_double", {key, "", p.double_n, p.double_correct});
  }
  return out.str();
}

std::string report_to_markdown(const ExperimentReport& r) {
  require_samples(r);
  std::ostringstream out;
  out << "Cue `" << r.cue << "`, config `" << r.config_hash << "`, manifest `" << r.manifest_hash
      << "`, train " << r.train_count << ", test " << r.test_count << "\n\n";
  out << "| Condition | n | RF (" << r.cue << ") |\n|---|---:|---:|\n";
  for (const auto& c : r.per_condition) {
    out << "| " << c.key << " | " << c.n << " | " << fixed(c.accuracy()) << " |\n";
  }
  out << "| overall | " << r.overall.n << " | " << fixed(r.overall.accuracy()) << " |\n";
  out << "\n| Class | n | Accuracy |\n|---|---:|---:|\n";
  for (const auto& c : r.per_class) {
    out << "| " << c.key << " | " << c.n << " | " << fixed(c.accuracy()) << " |\n";
  }
  if (!r.rd_pairs.empty()) {
    out << "\n| b0 | Single | n | Recomp. | n |\n|---:|---:|---:|---:|---:|\n";
    for (const auto& p : r.rd_pairs) {
      auto acc = [](std::size_t ok, std::size_t n) {
        return n ? fixed(double(ok) / double(n)) : std::string("-");
      };
      out << "| " << format_strength(p.b0) << " | " << acc(p.single_correct, p.single_n) << " | "
          << p.single_n << " | " << acc(p.double_correct, p.double_n) << " | " << p.double_n
          << " |\n";
    }
  }
  return out.str();
}

void emit_report(const ExperimentReport& r, ReportFormat format, const std::filesystem::path& path,
                 bool include_runtime) {
  std::string text;
  switch (format) {
    case ReportFormat::kJson: text = report_to_json(r, include_runtime); break;
    case ReportFormat::kCsv: text = report_to_csv(r); break;
    case ReportFormat::kMarkdown: text = report_to_markdown(r); break;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write report " + path.string());
  out << text;
  if (!out) throw DataError("failed writing report " + path.string());
}

}  // namespace jaif
