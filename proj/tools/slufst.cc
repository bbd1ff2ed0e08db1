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

// slufst: build models from dialog specs, decode CTC label probabilities,
// benchmark and render FSTs.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "slufst/bench.h"
#include "slufst/decoder.h"
#include "slufst/error.h"
#include "slufst/model.h"
#include "slufst/text-frontend.h"
#include "slufst/utf8.h"
#include "slufst/wfst-io.h"
#include "slufst/wfst-ops.h"

namespace {

using slufst::Error;
using slufst::ErrorKind;

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoMatch = 3;

void PrintError(const std::string &kind, const std::string &message) {
  std::cerr << nlohmann::json{{"error", kind}, {"message", message}}.dump()
            << std::endl;
}

void WriteText(const std::string &path, const std::string &text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::kIo, "cannot open " + path);
  os << text;
  if (!os) throw Error(ErrorKind::kIo, "failed to write " + path);
}

double MillisSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

// Decode flags shared by decode, decode-text and bench. A k of 0 disables
// that pruning step; unset flags fall back to the model's defaults.
struct DecodeFlags {
  std::optional<int> top_k;
  std::optional<int> mean_k;
  std::optional<double> gamma;
  std::optional<double> acoustic_scale;
  std::string intents;
  int threads = 1;

  void Register(CLI::App *app) {
    app->add_option("--top-k", top_k, "labels kept per frame (0: off)");
    app->add_option("--mean-k", mean_k, "rank of the global threshold (0: off)");
    app->add_option("--gamma", gamma, "exponent applied to probabilities");
    app->add_option("--acoustic-scale", acoustic_scale,
                    "factor on input costs");
    app->add_option("--intents", intents, "comma-separated intent subset");
    app->add_option("--threads", threads, "worker threads")
        ->check(CLI::PositiveNumber);
  }

  slufst::DecodeParams Resolve(const slufst::ModelBundle &model) const {
    slufst::DecodeParams p = model.defaults;
    auto k = [](std::optional<int> v) {
      return v && *v == 0 ? std::nullopt : v;
    };
    if (top_k) p.top_k = k(top_k);
    if (mean_k) p.mean_k = k(mean_k);
    if (gamma) p.gamma = *gamma;
    if (acoustic_scale) p.acoustic_scale = *acoustic_scale;
    if (!intents.empty()) {
      std::vector<std::string> names;
      std::stringstream ss(intents);
      std::string name;
      while (std::getline(ss, name, ',')) {
        if (!name.empty()) names.push_back(name);
      }
      p.intent_filter = names;
    }
    p.num_threads = threads;
    return p;
  }
};

int PrintOutcome(const slufst::DecodeOutcome &outcome, double decode_ms) {
  if (!outcome.result) {
    PrintError("no_match", outcome.diagnostic);
    return kExitNoMatch;
  }
  std::cout << slufst::ParseResultToJson(*outcome.result).dump() << std::endl;
  std::cerr << "decode_ms " << decode_ms << std::endl;
  return 0;
}

int Run(int argc, char **argv) {
  CLI::App app{"Intent and slot extraction from CTC outputs with WFSTs"};
  app.require_subcommand(1);

  auto *build = app.add_subcommand("build", "compile a dialog spec");
  std::string spec_path, alphabet_path, mode = "fixed", out_dir;
  int build_threads = 1;
  build->add_option("--spec", spec_path, "dialog spec JSON")->required();
  build->add_option("--alphabet", alphabet_path, "alphabet JSON")->required();
  build->add_option("--mode", mode, "fixed or 2gram")
      ->check(CLI::IsMember({"fixed", "2gram"}));
  build->add_option("--out", out_dir, "model directory")->required();
  build->add_option("--threads", build_threads, "worker threads")
      ->check(CLI::PositiveNumber);

  auto *decode = app.add_subcommand("decode", "decode a logit file");
  std::string model_dir, logits_path;
  DecodeFlags decode_flags;
  decode->add_option("--model", model_dir, "model directory")->required();
  decode->add_option("--logits", logits_path, "FLGT or JSON logits")
      ->required();
  decode_flags.Register(decode);

  auto *decode_text = app.add_subcommand("decode-text", "decode plain text");
  std::string text, emit_logits;
  uint64_t seed = 0;
  DecodeFlags text_flags;
  decode_text->add_option("--model", model_dir, "model directory")->required();
  decode_text->add_option("--text", text, "input sentence")->required();
  decode_text->add_option("--seed", seed, "noise seed");
  decode_text->add_option("--emit-logits", emit_logits,
                          "also write the pseudo-logits (.json or FLGT)");
  text_flags.Register(decode_text);

  auto *bench = app.add_subcommand("bench", "score a case file");
  std::string cases_path, report_path;
  bool timings = false;
  uint64_t bench_seed = 0;
  DecodeFlags bench_flags;
  bench->add_option("--model", model_dir, "model directory")->required();
  bench->add_option("--cases", cases_path, "JSON-lines cases")->required();
  bench->add_option("--out", report_path, "report JSON (default: stdout)");
  bench->add_option("--seed", bench_seed, "base noise seed for text cases");
  bench->add_flag("--timings", timings, "include timings in the report");
  bench_flags.Register(bench);

  auto *dot = app.add_subcommand("dot", "render an FST as Graphviz");
  std::string fst_path, dot_path, title;
  dot->add_option("--fst", fst_path, "FWF1 file")->required();
  dot->add_option("--out", dot_path, "DOT output (default: stdout)");
  dot->add_option("--title", title, "graph label");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    PrintError("usage", e.what());
    return kExitUsage;
  }

  if (build->parsed()) {
    auto start = std::chrono::steady_clock::now();
    slufst::DialogSpec spec = slufst::ReadDialogSpecFile(spec_path);
    slufst::Alphabet alphabet = slufst::ReadAlphabetFile(alphabet_path);
    slufst::ModelBundle model = slufst::BuildModel(
        spec, alphabet, slufst::ParseGrammarMode(mode), build_threads);
    slufst::SaveModel(model, out_dir);
    double ms = MillisSince(start);
    size_t states = 0, arcs = 0;
    for (const auto &[name, lg] : model.intents) {
      states += lg.NumStates();
      arcs += lg.TotalArcs();
    }
    std::cout << "built " << model.intents.size() << " intents (" << states
              << " states, " << arcs << " arcs) in " << ms << " ms"
              << std::endl;
    return 0;
  }
  if (decode->parsed()) {
    slufst::ModelBundle model = slufst::LoadModel(model_dir);
    slufst::LogitMatrix m = slufst::ReadLogitsFile(logits_path);
    auto start = std::chrono::steady_clock::now();
    auto outcome = slufst::Decode(m, model, decode_flags.Resolve(model));
    return PrintOutcome(outcome, MillisSince(start));
  }
  if (decode_text->parsed()) {
    slufst::ModelBundle model = slufst::LoadModel(model_dir);
    slufst::TextEncodeParams encode;
    encode.seed = seed;
    slufst::LogitMatrix m = slufst::TextToLogits(text, model.alphabet, encode);
    if (!emit_logits.empty()) slufst::WriteLogitsFile(m, emit_logits);
    auto start = std::chrono::steady_clock::now();
    auto outcome = slufst::Decode(m, model, text_flags.Resolve(model));
    return PrintOutcome(outcome, MillisSince(start));
  }
  if (bench->parsed()) {
    slufst::ModelBundle model = slufst::LoadModel(model_dir);
    auto cases = slufst::ReadBenchCases(cases_path);
    slufst::BenchOptions options;
    options.params = bench_flags.Resolve(model);
    options.num_threads = bench_flags.threads;
    options.text.seed = bench_seed;
    slufst::BenchReport report = slufst::RunBench(model, cases, options);
    std::string json = slufst::BenchReportToJson(report, timings).dump(2);
    if (report_path.empty()) {
      std::cout << json << std::endl;
    } else {
      WriteText(report_path, json + "\n");
    }
    std::cerr << "cases " << report.cases << " accuracy " << report.accuracy
              << " wer "
              << (report.wer ? std::to_string(*report.wer) : "n/a")
              << " errors " << report.errors << " decode_ms "
              << report.decode_ms << std::endl;
    return 0;
  }
  if (dot->parsed()) {
    slufst::Wfst fst = slufst::ReadWfstFile(fst_path);
    std::string dot_text =
        slufst::ToDot(fst, title.empty() ? fst_path : title);
    if (dot_path.empty()) {
      std::cout << dot_text;
    } else {
      WriteText(dot_path, dot_text);
    }
    return 0;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char **argv) {
  try {
    return Run(argc, argv);
  } catch (const Error &e) {
    PrintError(slufst::ErrorKindName(e.kind()), e.what());
  } catch (const std::exception &e) {
    PrintError("internal", e.what());
  }
  return kExitError;
}
