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

#ifndef SLUFST_SYMBOL_TABLE_H_
#define SLUFST_SYMBOL_TABLE_H_

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace slufst {

using Label = uint32_t;
using StateId = uint32_t;

inline constexpr Label kEpsilon = 0;
inline constexpr StateId kNoStateId = std::numeric_limits<StateId>::max();

// Bijective symbol <-> id map. Id 0 is always epsilon. Optionally one
// entry is designated as the CTC blank.
class SymbolTable {
 public:
  static constexpr std::string_view kEpsilonSymbol = "<eps>";

  SymbolTable();

  // Returns the existing id when the symbol is already present.
  Label AddSymbol(std::string_view symbol);

  std::optional<Label> Find(std::string_view symbol) const;
  // Throws Error(kInput) for an unknown id.
  const std::string &Symbol(Label label) const;

  bool Contains(Label label) const { return label < symbols_.size(); }
  size_t NumSymbols() const { return symbols_.size(); }
  const std::vector<std::string> &Symbols() const { return symbols_; }

  std::optional<Label> Blank() const { return blank_; }
  void SetBlank(Label label);

  friend bool operator==(const SymbolTable &a, const SymbolTable &b) {
    return a.symbols_ == b.symbols_ && a.blank_ == b.blank_;
  }

 private:
  std::vector<std::string> symbols_;
  std::map<std::string, Label, std::less<>> ids_;
  std::optional<Label> blank_;
};

}  // namespace slufst

#endif  // SLUFST_SYMBOL_TABLE_H_
