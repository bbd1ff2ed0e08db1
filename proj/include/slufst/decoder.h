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

#ifndef SLUFST_DECODER_H_
#define SLUFST_DECODER_H_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "slufst/decode-params.h"
#include "slufst/logit-matrix.h"
#include "slufst/model.h"
#include "slufst/wfst-ops.h"

namespace slufst {

struct SlotValue {
  std::string name;
  std::string value;  // canonical
  std::string raw;    // as spoken

  friend bool operator==(const SlotValue &, const SlotValue &) = default;
};

struct ParseResult {
  std::vector<std::string> transcript;  // canonical words
  std::string intent;
  std::vector<SlotValue> slots;  // transcript order
  double cost = 0.0;

  std::string Text() const;
};

struct DecodeOutcome {
  std::optional<ParseResult> result;
  // Why nothing matched; empty on success.
  std::string diagnostic;
};

// Probability of the space label in the appended final frame; the rest is
// spread evenly over the other labels.
inline constexpr double kFinalFrameSpaceProbability = 0.9;

// Linear acceptor over `labels` with one arc per surviving label per frame,
// plus the appended space frame. Throws Error(kConfig) when a matrix symbol
// is missing from `labels` or the matrix lacks `space_label`.
Wfst BuildInputFst(const LogitMatrix &m, const DecodeParams &params,
                   std::shared_ptr<const SymbolTable> labels,
                   std::string_view space_label);

// Input -> Token composition followed by a best-path search against each
// intent. A pruned-away match is reported through DecodeOutcome::diagnostic.
DecodeOutcome Decode(const LogitMatrix &m, const ModelBundle &model,
                     const DecodeParams &params);

// Interprets a words-table output sequence. Raw slot values equal the
// canonical ones since no input side is available. Throws Error(kInternal)
// for unbalanced or misplaced tags.
ParseResult ParseOutputLabels(std::span<const Label> labels,
                              const SymbolTable &words);

// Like ParseOutputLabels, with raw slot values read from the characters
// matched inside each slot span.
ParseResult ParseBestPath(const BestPath &path, const SymbolTable &words,
                          const SymbolTable &chars);

nlohmann::json ParseResultToJson(const ParseResult &result);

}  // namespace slufst

#endif  // SLUFST_DECODER_H_
