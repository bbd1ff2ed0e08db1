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

#ifndef SLUFST_MODEL_H_
#define SLUFST_MODEL_H_

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "slufst/alphabet.h"
#include "slufst/decode-params.h"
#include "slufst/dialog-spec.h"
#include "slufst/grammar.h"
#include "slufst/wfst.h"

namespace slufst {

struct ModelBundle {
  Alphabet alphabet;
  GrammarMode mode = GrammarMode::kFixed;
  std::shared_ptr<const SymbolTable> labels;
  std::shared_ptr<const SymbolTable> chars;
  std::shared_ptr<const SymbolTable> words;
  Wfst tokens;                         // labels -> chars
  std::map<std::string, Wfst> intents;  // per-intent LG: chars -> words
  std::map<std::string, std::vector<std::string>> intent_slots;
  std::vector<std::string> vocabulary;  // words spelled by some lexicon
  DecodeParams defaults;
};

// The slot-inserted word-level grammar of one intent.
Wfst BuildIntentGrammar(const DialogSpec &spec, const std::string &intent,
                        GrammarMode mode,
                        std::shared_ptr<const SymbolTable> words);

// Deterministic: the same inputs give identical bundles regardless of
// `num_threads`.
ModelBundle BuildModel(const DialogSpec &spec, const Alphabet &alphabet,
                       GrammarMode mode, int num_threads = 1);

// Writes intent-<name>.fwf, tokens.fwf, labels.syms, chars.syms, words.syms
// and manifest.json into `dir`, creating it if needed.
void SaveModel(const ModelBundle &model, const std::filesystem::path &dir);
ModelBundle LoadModel(const std::filesystem::path &dir);

}  // namespace slufst

#endif  // SLUFST_MODEL_H_
