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

#ifndef SLUFST_ALPHABET_H_
#define SLUFST_ALPHABET_H_

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace slufst {

enum class LabelKind { kChars, kPieces };

// CTC output labels in model column order.
//
// Accepted JSON forms:
//   [" ", "a", "b", "<blank>"]                     characters, blank "<blank>"
//   {"symbols": [...], "blank": "-", "space": " "} characters
//   {"type": "pieces", "symbols": [...], "blank": "<blank>",
//    "word_boundary": "▁"}                     sentencepiece-style pieces
struct Alphabet {
  LabelKind kind = LabelKind::kChars;
  std::vector<std::string> symbols;  // blank included
  std::string blank = "<blank>";
  std::string space = " ";                   // character mode
  std::string word_boundary = "\xE2\x96\x81";  // piece mode, U+2581

  // The label that spells a space: the space symbol for characters, the
  // bare word-boundary piece for pieces.
  const std::string &SpaceLabel() const {
    return kind == LabelKind::kChars ? space : word_boundary;
  }
};

// Throws Error(kConfig) for duplicate symbols, a missing blank or a missing
// space label, and multi-character symbols in character mode.
void ValidateAlphabet(const Alphabet &alphabet);

Alphabet ParseAlphabet(std::string_view json_text);
Alphabet ReadAlphabetFile(const std::string &path);
nlohmann::json AlphabetToJson(const Alphabet &alphabet);
Alphabet AlphabetFromJson(const nlohmann::json &doc);

}  // namespace slufst

#endif  // SLUFST_ALPHABET_H_
