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

// Batch evaluation: exact-match accuracy (intent and every slot) and WER.

#ifndef SLUFST_BENCH_H_
#define SLUFST_BENCH_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "slufst/decode-params.h"
#include "slufst/model.h"
#include "slufst/text-frontend.h"

namespace slufst {

// One JSON line: {"text": ... | "logits": path, "intent": ...,
// "slots": {name: value}, "transcript": ...}. Relative logit paths resolve
// against the case file's directory.
struct BenchCase {
  std::string text;
  std::filesystem::path logits;
  std::string intent;
  std::map<std::string, std::string> slots;
  std::optional<std::string> transcript;
  std::string error;  // set when the line could not be parsed
};

std::vector<BenchCase> ParseBenchCases(const std::string &jsonl,
                                       const std::filesystem::path &base_dir);
std::vector<BenchCase> ReadBenchCases(const std::filesystem::path &path);

struct BenchOptions {
  DecodeParams params;
  // Case i is encoded with seed text.seed + i.
  TextEncodeParams text;
  int num_threads = 1;
};

struct CaseResult {
  bool correct = false;
  std::string intent;  // "" when nothing matched
  std::map<std::string, std::string> slots;
  std::string transcript;
  std::optional<double> cost;
  bool no_match = false;
  std::string diagnostic;  // why nothing matched
  std::string error;       // unreadable case or failed decode
};

struct BenchReport {
  size_t cases = 0;
  size_t correct = 0;
  double accuracy = 0.0;
  // Corpus-level: total word edits over total reference words of the cases
  // that carry a transcript.
  std::optional<double> wer;
  size_t wer_cases = 0;
  // gold intent -> predicted intent ("<none>", "<error>") -> count
  std::map<std::string, std::map<std::string, size_t>> confusion;
  size_t errors = 0;
  std::vector<CaseResult> results;
  double decode_ms = 0.0;  // excludes model loading
};

inline constexpr const char *kNoPrediction = "<none>";
inline constexpr const char *kErrorPrediction = "<error>";

BenchReport RunBench(const ModelBundle &model,
                     const std::vector<BenchCase> &cases,
                     const BenchOptions &options);

// Timings are omitted unless requested so that reports are reproducible.
nlohmann::json BenchReportToJson(const BenchReport &report,
                                 bool include_timings = false);

}  // namespace slufst

#endif  // SLUFST_BENCH_H_
