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

// Algorithms over Wfst. All functions are pure: inputs are never modified.

#ifndef SLUFST_WFST_OPS_H_
#define SLUFST_WFST_OPS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slufst/wfst.h"

namespace slufst {

// Relative tolerance used when deciding that two path costs tie.
inline constexpr double kCostTieTolerance = 1e-9;

// Composition with an epsilon-sequencing filter: between two matching
// moves, epsilon-input moves of `b` are taken before epsilon-output moves
// of `a`, so every epsilon interleaving appears exactly once. The result is
// trimmed. Throws Error(kConfig) when a's output table and b's input table
// are both present and differ.
Wfst Compose(const Wfst &a, const Wfst &b);

// One arc of a best path. `middle` is the label matched between the two
// operands of a composition (epsilon when only one side moved, or when the
// path does not come from a composition).
struct PathArc {
  Label ilabel = kEpsilon;
  Label middle = kEpsilon;
  Label olabel = kEpsilon;
  TropicalWeight weight;
};

struct BestPath {
  std::vector<PathArc> arcs;
  TropicalWeight cost;  // includes the final weight

  std::vector<Label> OutputLabels() const;  // epsilons removed
  std::vector<Label> InputLabels() const;   // epsilons removed
};

// Minimum-cost start->final path. Among paths whose costs tie (relative
// tolerance kCostTieTolerance), the one with the lexicographically smallest
// output label sequence wins. Returns nullopt when no path exists.
std::optional<BestPath> FindBestPath(const Wfst &fst);

// Same result as FindBestPath(Compose(a, b)) with PathArc::middle filled in,
// but the product is expanded lazily in cost order and only the part
// reachable below the optimal cost is ever built.
std::optional<BestPath> ComposeBestPath(const Wfst &a, const Wfst &b);

struct ShortestPathResult {
  Wfst path;  // linear chain, final weight on the last state
  TropicalWeight cost;
};

std::optional<ShortestPathResult> ShortestPath(const Wfst &fst);

// Keeps only states on some start->final path. Relative state order is
// preserved.
Wfst Connect(const Wfst &fst);

// Removes arcs that are epsilon on both tapes.
Wfst RmEpsilon(const Wfst &fst);

// Stable sort of every state's arcs by (ilabel, olabel, nextstate).
Wfst ArcSort(const Wfst &fst);

Wfst Union(const Wfst &a, const Wfst &b);
Wfst Concat(const Wfst &a, const Wfst &b);

struct AcceptResult {
  TropicalWeight cost;
  std::vector<Label> output;  // epsilons removed
};

// Min-cost output for an input label sequence, or nullopt if rejected.
// Throws Error(kInput) for epsilon or unknown labels.
std::optional<AcceptResult> Accepts(const Wfst &fst,
                                    std::span<const Label> input);

// Graphviz rendering with "ilabel:olabel/weight" captions.
std::string ToDot(const Wfst &fst, const std::string &title = "FST");

}  // namespace slufst

#endif  // SLUFST_WFST_OPS_H_
