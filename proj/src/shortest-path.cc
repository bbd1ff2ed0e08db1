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
#include <set>
#include <tuple>
#include <utility>

#include "path-search.h"
#include "slufst/error.h"
#include "slufst/wfst-ops.h"

namespace slufst {
namespace internal {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shortest distance from every state to a final state, final weight
// included. Dijkstra on the reversed graph; weights are non-negative.
std::vector<double> DistanceToFinal(const Wfst &fst) {
  const size_t n = fst.NumStates();
  std::vector<uint32_t> offsets(n + 1, 0);
  for (StateId s = 0; s < n; ++s) {
    for (const Arc &arc : fst.Arcs(s)) ++offsets[arc.nextstate + 1];
  }
  for (size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  std::vector<std::pair<StateId, double>> incoming(offsets[n]);
  std::vector<uint32_t> fill(offsets.begin(), offsets.end() - 1);
  for (StateId s = 0; s < n; ++s) {
    for (const Arc &arc : fst.Arcs(s)) {
      incoming[fill[arc.nextstate]++] = {s, arc.weight.Value()};
    }
  }

  using Item = std::pair<double, StateId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  std::vector<double> dist(n, kInf);
  for (StateId s = 0; s < n; ++s) {
    if (fst.IsFinal(s)) {
      dist[s] = fst.Final(s).Value();
      heap.emplace(dist[s], s);
    }
  }
  while (!heap.empty()) {
    auto [d, s] = heap.top();
    heap.pop();
    if (d > dist[s]) continue;
    for (uint32_t i = offsets[s]; i < offsets[s + 1]; ++i) {
      auto [p, w] = incoming[i];
      double nd = d + w;
      if (nd < dist[p]) {
        dist[p] = nd;
        heap.emplace(nd, p);
      }
    }
  }
  return dist;
}

// Plain forward Dijkstra with predecessor links. Only used when no
// lexicographically minimal optimal path exists (zero-cost cycles that emit
// output), in which case any optimal simple path is returned.
std::optional<PathSteps> AnyBestPath(const Wfst &fst) {
  const size_t n = fst.NumStates();
  std::vector<double> dist(n, kInf);
  std::vector<PathStep> pred(n, {kNoStateId, 0});
  using Item = std::pair<double, StateId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[fst.Start()] = 0.0;
  heap.emplace(0.0, fst.Start());
  while (!heap.empty()) {
    auto [d, s] = heap.top();
    heap.pop();
    if (d > dist[s]) continue;
    auto arcs = fst.Arcs(s);
    for (uint32_t i = 0; i < arcs.size(); ++i) {
      double nd = d + arcs[i].weight.Value();
      if (nd < dist[arcs[i].nextstate]) {
        dist[arcs[i].nextstate] = nd;
        pred[arcs[i].nextstate] = {s, i};
        heap.emplace(nd, arcs[i].nextstate);
      }
    }
  }
  StateId best = kNoStateId;
  double best_cost = kInf;
  for (StateId s = 0; s < n; ++s) {
    double c = dist[s] + fst.Final(s).Value();
    if (c < best_cost) {
      best_cost = c;
      best = s;
    }
  }
  if (best == kNoStateId) return std::nullopt;
  PathSteps out;
  out.cost = TropicalWeight(best_cost);
  for (StateId s = best; s != fst.Start(); s = pred[s].state) {
    out.steps.push_back(pred[s]);
  }
  std::reverse(out.steps.begin(), out.steps.end());
  return out;
}

struct Node {
  int64_t parent;
  StateId state;
  uint32_t arc;
};

struct Entry {
  double g;  // cost of the chosen path prefix
  StateId state;
  int64_t node;
};

}  // namespace

void CheckCompatibleTables(const SymbolTable *out, const SymbolTable *in) {
  if (out == nullptr || in == nullptr || out == in) return;
  if (!(*out == *in)) {
    throw Error(ErrorKind::kConfig,
                "symbol table mismatch: output table of the first FST differs "
                "from the input table of the second");
  }
}

// Among all paths within the tie tolerance of the optimum, walks the set of
// reachable states label by label, always following the smallest output
// label, and stops at the first point where a final state is reachable.
std::optional<PathSteps> BestPathSteps(const Wfst &fst) {
  if (fst.Start() == kNoStateId) return std::nullopt;
  const std::vector<double> dist = DistanceToFinal(fst);
  const double best = dist[fst.Start()];
  if (best == kInf) return std::nullopt;
  const double bound = best + kCostTieTolerance * std::max(1.0, best);

  std::vector<Node> nodes;
  std::vector<uint32_t> mark(fst.NumStates(), 0);
  uint32_t generation = 0;

  // Dijkstra over tight output-epsilon arcs starting from `seeds`.
  auto closure = [&](std::vector<Entry> seeds) {
    ++generation;
    using Item = std::tuple<double, StateId, int64_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (const Entry &e : seeds) heap.emplace(e.g, e.state, e.node);
    std::vector<Entry> settled;
    while (!heap.empty()) {
      auto [g, s, node] = heap.top();
      heap.pop();
      if (mark[s] == generation) continue;
      mark[s] = generation;
      settled.push_back({g, s, node});
      auto arcs = fst.Arcs(s);
      for (uint32_t i = 0; i < arcs.size(); ++i) {
        const Arc &arc = arcs[i];
        if (arc.olabel != kEpsilon) continue;
        double ng = g + arc.weight.Value();
        if (ng + dist[arc.nextstate] > bound) continue;
        if (mark[arc.nextstate] == generation) continue;
        nodes.push_back({node, arc.nextstate, i});
        heap.emplace(ng, arc.nextstate, static_cast<int64_t>(nodes.size() - 1));
      }
    }
    return settled;
  };

  auto reconstruct = [&](int64_t node, double cost) {
    PathSteps out;
    out.cost = TropicalWeight(cost);
    for (int64_t i = node; nodes[i].parent >= 0; i = nodes[i].parent) {
      out.steps.push_back({nodes[nodes[i].parent].state, nodes[i].arc});
    }
    std::reverse(out.steps.begin(), out.steps.end());
    return out;
  };

  nodes.push_back({-1, fst.Start(), 0});
  std::vector<Entry> frontier = closure({{0.0, fst.Start(), 0}});
  std::set<std::vector<StateId>> seen;

  while (true) {
    const Entry *finish = nullptr;
    double finish_cost = kInf;
    for (const Entry &e : frontier) {
      if (!fst.IsFinal(e.state)) continue;
      double c = e.g + fst.Final(e.state).Value();
      if (c > bound) continue;
      if (c < finish_cost ||
          (c == finish_cost && finish != nullptr && e.state < finish->state)) {
        finish = &e;
        finish_cost = c;
      }
    }
    if (finish != nullptr) return reconstruct(finish->node, finish_cost);

    Label min_label = std::numeric_limits<Label>::max();
    for (const Entry &e : frontier) {
      for (const Arc &arc : fst.Arcs(e.state)) {
        if (arc.olabel == kEpsilon || arc.olabel >= min_label) continue;
        if (e.g + arc.weight.Value() + dist[arc.nextstate] <= bound) {
          min_label = arc.olabel;
        }
      }
    }
    if (min_label == std::numeric_limits<Label>::max()) {
      return AnyBestPath(fst);  // only reachable through rounding trouble
    }

    std::vector<Entry> seeds;
    for (const Entry &e : frontier) {
      auto arcs = fst.Arcs(e.state);
      for (uint32_t i = 0; i < arcs.size(); ++i) {
        const Arc &arc = arcs[i];
        if (arc.olabel != min_label) continue;
        double ng = e.g + arc.weight.Value();
        if (ng + dist[arc.nextstate] > bound) continue;
        nodes.push_back({e.node, arc.nextstate, i});
        seeds.push_back(
            {ng, arc.nextstate, static_cast<int64_t>(nodes.size() - 1)});
      }
    }
    frontier = closure(std::move(seeds));

    std::vector<StateId> signature;
    for (const Entry &e : frontier) signature.push_back(e.state);
    std::sort(signature.begin(), signature.end());
    if (!seen.insert(std::move(signature)).second) return AnyBestPath(fst);
  }
}

}  // namespace internal

std::vector<Label> BestPath::OutputLabels() const {
  std::vector<Label> out;
  for (const PathArc &arc : arcs) {
    if (arc.olabel != kEpsilon) out.push_back(arc.olabel);
  }
  return out;
}

std::vector<Label> BestPath::InputLabels() const {
  std::vector<Label> out;
  for (const PathArc &arc : arcs) {
    if (arc.ilabel != kEpsilon) out.push_back(arc.ilabel);
  }
  return out;
}

std::optional<BestPath> FindBestPath(const Wfst &fst) {
  auto steps = internal::BestPathSteps(fst);
  if (!steps) return std::nullopt;
  BestPath path;
  path.cost = steps->cost;
  for (const auto &step : steps->steps) {
    const Arc &arc = fst.Arcs(step.state)[step.arc];
    path.arcs.push_back({arc.ilabel, kEpsilon, arc.olabel, arc.weight});
  }
  return path;
}

std::optional<ShortestPathResult> ShortestPath(const Wfst &fst) {
  auto steps = internal::BestPathSteps(fst);
  if (!steps) return std::nullopt;
  ShortestPathResult result;
  result.cost = steps->cost;
  Wfst &path = result.path;
  path.SetInputSymbols(fst.InputSymbols());
  path.SetOutputSymbols(fst.OutputSymbols());
  StateId current = path.AddState();
  path.SetStart(current);
  for (const auto &step : steps->steps) {
    Arc arc = fst.Arcs(step.state)[step.arc];
    StateId next = path.AddState();
    arc.nextstate = next;
    path.AddArc(current, arc);
    current = next;
  }
  StateId last = steps->steps.empty()
                     ? fst.Start()
                     : fst.Arcs(steps->steps.back().state)[steps->steps.back().arc]
                           .nextstate;
  path.SetFinal(current, fst.Final(last));
  return result;
}

std::optional<AcceptResult> Accepts(const Wfst &fst,
                                    std::span<const Label> input) {
  const SymbolTable *isyms = fst.InputSymbols().get();
  for (Label label : input) {
    if (label == kEpsilon || (isyms != nullptr && !isyms->Contains(label))) {
      throw Error(ErrorKind::kInput,
                  "input label " + std::to_string(label) +
                      " is not a valid non-epsilon symbol");
    }
  }
  Wfst linear(fst.InputSymbols(), fst.InputSymbols());
  StateId s = linear.AddState();
  linear.SetStart(s);
  for (Label label : input) {
    StateId next = linear.AddState();
    linear.AddArc(s, {label, label, TropicalWeight::One(), next});
    s = next;
  }
  linear.SetFinal(s);
  auto path = FindBestPath(Compose(linear, fst));
  if (!path) return std::nullopt;
  return AcceptResult{path->cost, path->OutputLabels()};
}

}  // namespace slufst
