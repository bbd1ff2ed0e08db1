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

#include "slufst/decoder.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "parallel.h"
#include "slufst/error.h"
#include "slufst/grammar.h"
#include "slufst/utf8.h"

namespace slufst {
namespace {

struct OutputStep {
  Label olabel;
  Label middle;
};

ParseResult ParseSteps(const std::vector<OutputStep> &steps,
                       const SymbolTable &words, const SymbolTable *chars) {
  ParseResult result;
  bool in_slot = false;
  SlotValue slot;
  std::vector<std::string> value;
  std::string raw;
  std::string pending_placeholder;
  std::string name;
  auto fail = [](const std::string &what) {
    throw Error(ErrorKind::kInternal, "malformed decoder output: " + what);
  };
  for (const auto &step : steps) {
    if (in_slot && chars != nullptr && step.middle != kEpsilon) {
      raw += chars->Symbol(step.middle);
    }
    if (step.olabel == kEpsilon) continue;
    if (!result.intent.empty()) fail("output after the intent tag");
    const std::string &symbol = words.Symbol(step.olabel);
    switch (ClassifyTag(symbol, &name)) {
      case TagKind::kNone:
        if (!pending_placeholder.empty()) fail("slot without placeholder");
        result.transcript.push_back(symbol);
        if (in_slot) value.push_back(symbol);
        break;
      case TagKind::kSlotOpen:
        if (in_slot) fail("nested slot");
        if (!pending_placeholder.empty()) fail("slot without placeholder");
        in_slot = true;
        slot = SlotValue{name, "", ""};
        value.clear();
        raw.clear();
        break;
      case TagKind::kSlotClose:
        if (!in_slot) fail("slot close without open");
        in_slot = false;
        slot.value = JoinWords(value);
        slot.raw = chars != nullptr ? JoinWords(SplitWords(raw)) : slot.value;
        pending_placeholder = slot.name;
        result.slots.push_back(slot);
        break;
      case TagKind::kPlaceholder:
        if (name != pending_placeholder) fail("placeholder mismatch");
        pending_placeholder.clear();
        break;
      case TagKind::kIntent:
        if (in_slot || !pending_placeholder.empty()) fail("open slot at end");
        result.intent = name;
        break;
    }
  }
  if (result.intent.empty()) fail("missing intent tag");
  return result;
}

void ValidateParams(const DecodeParams &params) {
  if (params.top_k && *params.top_k < 1) {
    throw Error(ErrorKind::kConfig, "top_k must be positive");
  }
  if (params.mean_k && *params.mean_k < 1) {
    throw Error(ErrorKind::kConfig, "mean_k must be positive");
  }
  if (!(params.gamma > 0.0) || !std::isfinite(params.gamma)) {
    throw Error(ErrorKind::kConfig, "gamma must be positive");
  }
  if (!(params.acoustic_scale >= 0.0) || !std::isfinite(params.acoustic_scale)) {
    throw Error(ErrorKind::kConfig, "acoustic_scale must be non-negative");
  }
  if (params.num_threads < 1) {
    throw Error(ErrorKind::kConfig, "num_threads must be at least 1");
  }
}

}  // namespace

void ValidateDecodeParams(const DecodeParams &params) { ValidateParams(params); }

std::string ParseResult::Text() const { return JoinWords(transcript); }

Wfst BuildInputFst(const LogitMatrix &m, const DecodeParams &params,
                   std::shared_ptr<const SymbolTable> labels,
                   std::string_view space_label) {
  ValidateParams(params);
  const size_t num_labels = m.NumLabels();
  std::vector<Label> column_label(num_labels);
  std::optional<size_t> space_column;
  for (size_t v = 0; v < num_labels; ++v) {
    auto label = labels->Find(m.Symbols()[v]);
    if (!label) {
      throw Error(ErrorKind::kConfig, "logit symbol '" + m.Symbols()[v] +
                                          "' is not in the model alphabet");
    }
    column_label[v] = *label;
    if (m.Symbols()[v] == space_label) space_column = v;
  }
  if (!space_column) {
    throw Error(ErrorKind::kConfig, "logit symbols lack the space label '" +
                                        std::string(space_label) + "'");
  }

  std::vector<std::vector<double>> rows;
  rows.reserve(m.NumFrames() + 1);
  for (size_t t = 0; t < m.NumFrames(); ++t) rows.push_back(m.Row(t));
  std::vector<double> last(num_labels, (1.0 - kFinalFrameSpaceProbability) /
                                           static_cast<double>(num_labels - 1));
  last[*space_column] = kFinalFrameSpaceProbability;
  rows.push_back(std::move(last));

  if (params.gamma != 1.0) {
    for (auto &row : rows) {
      double sum = 0.0;
      for (double &p : row) sum += (p = std::pow(p, params.gamma));
      if (sum > 0.0) {
        for (double &p : row) p /= sum;
      }
    }
  }

  // Rank of each column per frame: probability descending, column ascending.
  std::vector<std::vector<size_t>> order(rows.size());
  for (size_t t = 0; t < rows.size(); ++t) {
    order[t].resize(num_labels);
    std::iota(order[t].begin(), order[t].end(), 0);
    std::stable_sort(order[t].begin(), order[t].end(),
                     [&](size_t a, size_t b) { return rows[t][a] > rows[t][b]; });
  }
  auto clamp_k = [&](const std::optional<int> &k) {
    return k ? std::min<size_t>(*k, num_labels) : num_labels;
  };
  const size_t top_k = clamp_k(params.top_k);
  const size_t mean_k = clamp_k(params.mean_k);
  double threshold = 0.0;
  if (params.mean_k) {
    for (size_t t = 0; t < rows.size(); ++t) {
      threshold += rows[t][order[t][mean_k - 1]];
    }
    threshold /= static_cast<double>(rows.size());
  }

  Wfst fst(labels, labels);
  fst.ReserveStates(rows.size() + 1);
  StateId s = fst.AddState();
  fst.SetStart(s);
  std::vector<bool> keep(num_labels);
  for (size_t t = 0; t < rows.size(); ++t) {
    const auto &row = rows[t];
    std::fill(keep.begin(), keep.end(), false);
    bool any = false;
    for (size_t rank = 0; rank < num_labels; ++rank) {
      size_t v = order[t][rank];
      bool ok = row[v] > 0.0 && rank < top_k &&
                (rank < mean_k || row[v] >= threshold);
      keep[v] = ok;
      any = any || ok;
    }
    if (!any) keep[order[t][0]] = true;
    StateId next = fst.AddState();
    for (size_t v = 0; v < num_labels; ++v) {
      if (!keep[v]) continue;
      // The best label of a frame is always positive, so log is finite.
      double cost = std::max(0.0, -std::log(row[v]));
      fst.AddArc(s, {column_label[v], column_label[v],
                     TropicalWeight(params.acoustic_scale * cost), next});
    }
    s = next;
  }
  fst.SetFinal(s);
  return fst;
}

DecodeOutcome Decode(const LogitMatrix &m, const ModelBundle &model,
                     const DecodeParams &params) {
  ValidateParams(params);
  std::vector<const std::string *> names;
  for (const auto &[name, lg] : model.intents) {
    if (params.intent_filter) {
      const auto &filter = *params.intent_filter;
      if (std::find(filter.begin(), filter.end(), name) == filter.end()) {
        continue;
      }
    }
    names.push_back(&name);
  }
  if (params.intent_filter) {
    for (const auto &name : *params.intent_filter) {
      if (!model.intents.contains(name)) {
        throw Error(ErrorKind::kConfig, "unknown intent '" + name + "'");
      }
    }
  }
  DecodeOutcome outcome;
  if (names.empty()) {
    outcome.diagnostic = "intent filter selects no intents";
    return outcome;
  }

  Wfst input = BuildInputFst(m, params, model.labels,
                             model.alphabet.SpaceLabel());
  Wfst input_tokens = Compose(input, model.tokens);
  if (input_tokens.Start() == kNoStateId) {
    outcome.diagnostic = "input/token composition is empty";
    return outcome;
  }

  std::vector<std::optional<BestPath>> paths(names.size());
  internal::ParallelFor(names.size(), params.num_threads, [&](size_t i) {
    paths[i] = ComposeBestPath(input_tokens, model.intents.at(*names[i]));
  });
  // Names are visited in order, so an exact tie keeps the earlier intent.
  std::optional<size_t> best;
  for (size_t i = 0; i < names.size(); ++i) {
    if (!paths[i]) continue;
    if (!best) {
      best = i;
      continue;
    }
    double a = paths[i]->cost.Value();
    double b = paths[*best]->cost.Value();
    if (a < b - kCostTieTolerance * std::max(1.0, b)) best = i;
  }
  if (!best) {
    outcome.diagnostic =
        "no intent grammar accepts the pruned input (try a larger top_k)";
    return outcome;
  }
  ParseResult result = ParseBestPath(*paths[*best], *model.words, *model.chars);
  result.cost = paths[*best]->cost.Value();
  outcome.result = std::move(result);
  return outcome;
}

ParseResult ParseOutputLabels(std::span<const Label> labels,
                              const SymbolTable &words) {
  std::vector<OutputStep> steps;
  for (Label l : labels) steps.push_back({l, kEpsilon});
  return ParseSteps(steps, words, nullptr);
}

ParseResult ParseBestPath(const BestPath &path, const SymbolTable &words,
                          const SymbolTable &chars) {
  std::vector<OutputStep> steps;
  for (const auto &arc : path.arcs) steps.push_back({arc.olabel, arc.middle});
  ParseResult result = ParseSteps(steps, words, &chars);
  result.cost = path.cost.Value();
  return result;
}

nlohmann::json ParseResultToJson(const ParseResult &result) {
  nlohmann::json doc;
  doc["text"] = result.Text();
  doc["intent"] = result.intent;
  doc["slots"] = nlohmann::json::array();
  for (const auto &slot : result.slots) {
    doc["slots"].push_back(
        {{"name", slot.name}, {"value", slot.value}, {"raw", slot.raw}});
  }
  doc["cost"] = result.cost;
  return doc;
}

}  // namespace slufst
