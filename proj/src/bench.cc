// Copyright 2026 The slufst Authors. All Rights Reserved.
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

#include "slufst/bench.h"

#include <chrono>
#include <fstream>
#include <sstream>

#include "parallel.h"
#include "slufst/decoder.h"
#include "slufst/error.h"
#include "slufst/utf8.h"
#include "slufst/wer.h"

namespace slufst {
namespace {

BenchCase ParseCase(const std::string &line,
                    const std::filesystem::path &base_dir) {
  BenchCase c;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(line);
    if (!doc.is_object()) throw Error(ErrorKind::kInput, "not an object");
    if (doc.contains("text") == doc.contains("logits")) {
      throw Error(ErrorKind::kInput, "need exactly one of text and logits");
    }
    if (doc.contains("text")) {
      c.text = doc["text"].get<std::string>();
    } else {
      std::filesystem::path p = doc["logits"].get<std::string>();
      c.logits = p.is_absolute() ? p : base_dir / p;
    }
    c.intent = doc.at("intent").get<std::string>();
    if (doc.contains("slots")) {
      for (const auto &[name, value] : doc["slots"].items()) {
        c.slots[name] = JoinWords(SplitWords(value.get<std::string>()));
      }
    }
    if (doc.contains("transcript")) {
      c.transcript = doc["transcript"].get<std::string>();
    }
  } catch (const nlohmann::json::exception &e) {
    c.error = e.what();
  } catch (const Error &e) {
    c.error = e.what();
  }
  return c;
}

}  // namespace

std::vector<BenchCase> ParseBenchCases(const std::string &jsonl,
                                       const std::filesystem::path &base_dir) {
  std::vector<BenchCase> cases;
  std::istringstream is(jsonl);
  std::string line;
  while (std::getline(is, line)) {
    if (SplitWords(line).empty()) continue;
    cases.push_back(ParseCase(line, base_dir));
  }
  return cases;
}

std::vector<BenchCase> ReadBenchCases(const std::filesystem::path &path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return ParseBenchCases(ss.str(), path.parent_path());
}

BenchReport RunBench(const ModelBundle &model,
                     const std::vector<BenchCase> &cases,
                     const BenchOptions &options) {
  BenchReport report;
  report.cases = cases.size();
  report.results.resize(cases.size());
  DecodeParams params = options.params;
  params.num_threads = 1;

  auto start = std::chrono::steady_clock::now();
  internal::ParallelFor(cases.size(), options.num_threads, [&](size_t i) {
    const BenchCase &c = cases[i];
    CaseResult &r = report.results[i];
    if (!c.error.empty()) {
      r.error = c.error;
      return;
    }
    try {
      std::optional<LogitMatrix> m;
      if (!c.logits.empty()) {
        m.emplace(ReadLogitsFile(c.logits));
      } else {
        TextEncodeParams text = options.text;
        text.seed += i;
        m.emplace(TextToLogits(c.text, model.alphabet, text));
      }
      DecodeOutcome outcome = Decode(*m, model, params);
      if (!outcome.result) {
        r.no_match = true;
        r.diagnostic = outcome.diagnostic;
        return;
      }
      const ParseResult &p = *outcome.result;
      r.intent = p.intent;
      r.transcript = p.Text();
      r.cost = p.cost;
      std::vector<std::pair<std::string, std::string>> predicted;
      for (const auto &slot : p.slots) {
        predicted.emplace_back(slot.name, JoinWords(SplitWords(slot.value)));
        r.slots[slot.name] = JoinWords(SplitWords(slot.value));
      }
      std::sort(predicted.begin(), predicted.end());
      std::vector<std::pair<std::string, std::string>> gold(c.slots.begin(),
                                                            c.slots.end());
      r.correct = r.intent == c.intent && predicted == gold;
    } catch (const Error &e) {
      r.error = std::string(ErrorKindName(e.kind())) + ": " + e.what();
    }
  });
  report.decode_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();

  size_t edits = 0;
  size_t reference_words = 0;
  for (size_t i = 0; i < cases.size(); ++i) {
    const BenchCase &c = cases[i];
    const CaseResult &r = report.results[i];
    if (r.correct) ++report.correct;
    std::string predicted = r.intent;
    if (!r.error.empty()) {
      predicted = kErrorPrediction;
      ++report.errors;
    } else if (r.no_match) {
      predicted = kNoPrediction;
    }
    ++report.confusion[c.error.empty() ? c.intent : kErrorPrediction]
                      [predicted];
    if (c.transcript && c.error.empty()) {
      std::vector<std::string> ref = SplitWords(*c.transcript);
      if (ref.empty()) continue;
      edits += WordEditDistance(ref, SplitWords(r.transcript));
      reference_words += ref.size();
      ++report.wer_cases;
    }
  }
  report.accuracy = report.cases == 0 ? 0.0
                                      : static_cast<double>(report.correct) /
                                            static_cast<double>(report.cases);
  if (reference_words > 0) {
    report.wer = static_cast<double>(edits) /
                 static_cast<double>(reference_words);
  }
  return report;
}

nlohmann::json BenchReportToJson(const BenchReport &report,
                                 bool include_timings) {
  nlohmann::json doc;
  doc["cases"] = report.cases;
  doc["correct"] = report.correct;
  doc["accuracy"] = report.accuracy;
  doc["wer"] = report.wer ? nlohmann::json(*report.wer) : nlohmann::json();
  doc["wer_cases"] = report.wer_cases;
  doc["errors"] = report.errors;
  doc["confusion"] = report.confusion;
  doc["results"] = nlohmann::json::array();
  for (const auto &r : report.results) {
    nlohmann::json item;
    item["correct"] = r.correct;
    item["intent"] = r.intent;
    item["slots"] = r.slots;
    item["transcript"] = r.transcript;
    item["cost"] = r.cost ? nlohmann::json(*r.cost) : nlohmann::json();
    if (r.no_match) item["no_match"] = r.diagnostic;
    if (!r.error.empty()) item["error"] = r.error;
    doc["results"].push_back(std::move(item));
  }
  if (include_timings) doc["timings"] = {{"decode_ms", report.decode_ms}};
  return doc;
}

}  // namespace slufst
