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

#ifndef SLUFST_SRC_PATH_SEARCH_H_
#define SLUFST_SRC_PATH_SEARCH_H_

#include <optional>
#include <vector>

#include "slufst/wfst.h"

namespace slufst::internal {

struct PathStep {
  StateId state;
  uint32_t arc;  // index into fst.Arcs(state)
};

struct PathSteps {
  std::vector<PathStep> steps;
  TropicalWeight cost;
};

// Tie-aware best path search used by FindBestPath and ComposeBestPath.
std::optional<PathSteps> BestPathSteps(const Wfst &fst);

// Throws Error(kConfig) if both tables exist and differ.
void CheckCompatibleTables(const SymbolTable *out, const SymbolTable *in);

}  // namespace slufst::internal

#endif  // SLUFST_SRC_PATH_SEARCH_H_
