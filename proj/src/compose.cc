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

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <unordered_map>
#include <utility>

#include "path-search.h"
#include "slufst/wfst-ops.h"

namespace slufst {
namespace {

// Product state. `filter` is the epsilon-sequencing filter state:
//   0  no restriction;
//   1  the left operand just moved alone on an output epsilon, so the right
//      operand may not move alone on an input epsilon until the next match.
struct Triple {
  StateId left;
  StateId right;
  uint8_t filter;

  friend bool operator==(const Triple &, const Triple &) = default;
};

struct TripleHash {
  size_t operator()(const Triple &t) const {
    uint64_t h = static_cast<uint64_t>(t.left) * 0x9E3779B97F4A7C15ull;
    h ^= (static_cast<uint64_t>(t.right) << 1 | t.filter) +
         0xC2B2AE3D27D4EB4Full + (h << 6) + (h >> 2);
    return static_cast<size_t>(h);
  }
};

struct ArcILabelLess {
  bool operator()(const Arc &arc, Label label) const {
    return arc.ilabel < label;
  }
  bool operator()(Label label, const Arc &arc) const {
    return label < arc.ilabel;
  }
};

// Calls emit(ilabel, middle, olabel, weight, next) for every product arc
// leaving `t`. `right` must be sorted by input label.
template <class Emit>
void ExpandProductState(const Wfst &left, const Wfst &right, const Triple &t,
                        Emit &&emit) {
  auto right_arcs = right.Arcs(t.right);
  if (t.filter == 0) {
    for (const Arc &arc : right_arcs) {
      if (arc.ilabel != kEpsilon) break;
      emit(kEpsilon, kEpsilon, arc.olabel, arc.weight,
           Triple{t.left, arc.nextstate, 0});
    }
  }
  for (const Arc &arc : left.Arcs(t.left)) {
    if (arc.olabel == kEpsilon) {
      emit(arc.ilabel, kEpsilon, kEpsilon, arc.weight,
           Triple{arc.nextstate, t.right, 1});
      continue;
    }
    auto [lo, hi] = std::equal_range(right_arcs.begin(), right_arcs.end(),
                                     arc.olabel, ArcILabelLess{});
    for (auto it = lo; it != hi; ++it) {
      emit(arc.ilabel, arc.olabel, it->olabel, Times(arc.weight, it->weight),
           Triple{arc.nextstate, it->nextstate, 0});
    }
  }
}

const Wfst &SortedRight(const Wfst &right, Wfst *storage) {
  if (right.IsILabelSorted()) return right;
  *storage = ArcSort(right);
  return *storage;
}

}  // namespace

Wfst Compose(const Wfst &a, const Wfst &b) {
  internal::CheckCompatibleTables(a.OutputSymbols().get(),
                                  b.InputSymbols().get());
  Wfst storage;
  const Wfst &right = SortedRight(b, &storage);

  Wfst result(a.InputSymbols(), b.OutputSymbols());
  if (a.Start() == kNoStateId || right.Start() == kNoStateId) return result;

  std::unordered_map<Triple, StateId, TripleHash> ids;
  std::vector<Triple> triples;
  auto state_of = [&](const Triple &t) {
    auto [it, inserted] = ids.try_emplace(t, 0);
    if (inserted) {
      it->second = result.AddState();
      triples.push_back(t);
    }
    return it->second;
  };

  result.SetStart(state_of(Triple{a.Start(), right.Start(), 0}));
  for (StateId s = 0; s < triples.size(); ++s) {
    const Triple t = triples[s];
    TropicalWeight final = Times(a.Final(t.left), right.Final(t.right));
    if (!final.IsZero()) result.SetFinal(s, final);
    ExpandProductState(a, right, t,
                       [&](Label i, Label, Label o, TropicalWeight w,
                           const Triple &next) {
                         StateId n = state_of(next);
                         result.AddArc(s, {i, o, w, n});
                       });
  }
  return Connect(result);
}

std::optional<BestPath> ComposeBestPath(const Wfst &a, const Wfst &b) {
  internal::CheckCompatibleTables(a.OutputSymbols().get(),
                                  b.InputSymbols().get());
  Wfst storage;
  const Wfst &right = SortedRight(b, &storage);
  if (a.Start() == kNoStateId || right.Start() == kNoStateId) {
    return std::nullopt;
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  // Settled part of the product; unsettled states stay arc-less dead ends.
  Wfst sub;
  std::vector<std::vector<Label>> middle;
  std::vector<double> dist;
  std::vector<bool> settled;
  std::unordered_map<Triple, StateId, TripleHash> ids;
  std::vector<Triple> triples;
  auto state_of = [&](const Triple &t) {
    auto [it, inserted] = ids.try_emplace(t, 0);
    if (inserted) {
      it->second = sub.AddState();
      triples.push_back(t);
      middle.emplace_back();
      dist.push_back(kInf);
      settled.push_back(false);
    }
    return it->second;
  };

  using Item = std::pair<double, StateId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  StateId start = state_of(Triple{a.Start(), right.Start(), 0});
  sub.SetStart(start);
  dist[start] = 0.0;
  heap.emplace(0.0, start);
  double best_total = kInf;

  while (!heap.empty()) {
    auto [d, s] = heap.top();
    heap.pop();
    if (settled[s] || d > dist[s]) continue;
    if (best_total < kInf &&
        d > best_total + kCostTieTolerance * std::max(1.0, best_total)) {
      break;
    }
    settled[s] = true;
    const Triple t = triples[s];
    TropicalWeight final = Times(a.Final(t.left), right.Final(t.right));
    if (!final.IsZero()) {
      sub.SetFinal(s, final);
      best_total = std::min(best_total, d + final.Value());
    }
    ExpandProductState(a, right, t,
                       [&](Label i, Label m, Label o, TropicalWeight w,
                           const Triple &next) {
                         StateId n = state_of(next);
                         sub.AddArc(s, {i, o, w, n});
                         middle[s].push_back(m);
                         double nd = d + w.Value();
                         if (nd < dist[n]) {
                           dist[n] = nd;
                           heap.emplace(nd, n);
                         }
                       });
  }
  if (best_total == kInf) return std::nullopt;

  auto steps = internal::BestPathSteps(sub);
  if (!steps) return std::nullopt;
  BestPath path;
  path.cost = steps->cost;
  for (const auto &step : steps->steps) {
    const Arc &arc = sub.Arcs(step.state)[step.arc];
    path.arcs.push_back(
        {arc.ilabel, middle[step.state][step.arc], arc.olabel, arc.weight});
  }
  return path;
}

}  // namespace slufst
