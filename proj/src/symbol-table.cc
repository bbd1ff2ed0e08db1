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

#include "slufst/symbol-table.h"

#include "slufst/error.h"

namespace slufst {

SymbolTable::SymbolTable() { AddSymbol(kEpsilonSymbol); }

Label SymbolTable::AddSymbol(std::string_view symbol) {
  auto it = ids_.find(symbol);
  if (it != ids_.end()) return it->second;
  Label id = static_cast<Label>(symbols_.size());
  symbols_.emplace_back(symbol);
  ids_.emplace(std::string(symbol), id);
  return id;
}

std::optional<Label> SymbolTable::Find(std::string_view symbol) const {
  auto it = ids_.find(symbol);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const std::string &SymbolTable::Symbol(Label label) const {
  if (label >= symbols_.size()) {
    throw Error(ErrorKind::kInput,
                "unknown symbol id " + std::to_string(label));
  }
  return symbols_[label];
}

void SymbolTable::SetBlank(Label label) {
  if (label == kEpsilon || label >= symbols_.size()) {
    throw Error(ErrorKind::kConfig, "blank must be a non-epsilon symbol");
  }
  blank_ = label;
}

}  // namespace slufst
